// Copyright 2026 The AAO Games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small dense real matrices for game-sized problems (dimension ~12 at most).
//
// Matrix and SymmetricMatrix are value types. Arithmetic never mutates an
// argument; every operation returns a fresh value, so instances can be shared
// freely between threads.
//
// Norm convention: FrobNorm() returns tr{S Sᵀ}, the SUM of squared entries,
// without the square root. All bound comparisons in this library use that
// convention consistently.

#ifndef AAO_MATRIX_HPP_
#define AAO_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aao {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;

  // Zero-filled rows x cols matrix.
  Matrix(std::size_t rows, std::size_t cols);

  // Row-major entries. Throws std::invalid_argument when the entry count is
  // wrong or any entry is NaN/Inf.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  // Nested-list literal, e.g. Matrix{{1, 2}, {3, 4}}.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix Identity(std::size_t n);
  static Matrix Zero(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols);
  }
  static Matrix Constant(std::size_t rows, std::size_t cols, double value);
  static Matrix Diagonal(std::span<const double> diag);
  // Column vector view of v (v.size() x 1).
  static Matrix Column(std::span<const double> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return entries_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }

  std::span<const double> data() const { return entries_; }

  Matrix Transpose() const;
  double Trace() const;
  double MaxAbs() const;
  bool AllFinite() const;
  bool IsDiagonal(double tol = 0.0) const;

  // Sub-block copy of rows [r0, r0+nr) and columns [c0, c0+nc).
  Matrix Block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  struct Unchecked {};
  Matrix(Unchecked, std::size_t rows, std::size_t cols,
         std::vector<double> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {}

  friend Matrix operator*(const Matrix& a, const Matrix& b);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Vector operator*(const Matrix& a, std::span<const double> x);

// Horizontal concatenation [a b ...]; all blocks must share the row count.
Matrix HorizontalConcat(std::span<const Matrix> blocks);

// Symmetric matrix with the invariant
//   max |S_ij − S_ji| <= 1e-10 * (1 + max |S_ij|).
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;

  // Checks the symmetry invariant; throws std::invalid_argument otherwise.
  explicit SymmetricMatrix(Matrix m);
  SymmetricMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : SymmetricMatrix(Matrix(rows)) {}

  // (m + mᵀ)/2; the result is exactly symmetric.
  static SymmetricMatrix Symmetrize(const Matrix& m);
  static SymmetricMatrix Identity(std::size_t n) {
    return SymmetricMatrix(Matrix::Identity(n));
  }
  static SymmetricMatrix Zero(std::size_t n) {
    return SymmetricMatrix(Matrix(n, n));
  }
  static SymmetricMatrix ScaledIdentity(std::size_t n, double s) {
    return SymmetricMatrix(Matrix::Identity(n) * s);
  }

  std::size_t dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  operator const Matrix&() const { return m_; }  // NOLINT
  double operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  // Max |S_ij − S_ji|.
  double SymmetryResidual() const;

  friend bool operator==(const SymmetricMatrix& a,
                         const SymmetricMatrix& b) = default;

 private:
  struct Trusted {};
  SymmetricMatrix(Trusted, Matrix m) : m_(std::move(m)) {}

  Matrix m_;
};

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);
SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b);
SymmetricMatrix operator*(double s, const SymmetricMatrix& a);

// x' S x.
double QuadraticForm(const SymmetricMatrix& s, std::span<const double> x);

double EuclideanNorm(std::span<const double> v);

// Kronecker product: (a⊗b)[i·p+k, j·q+l] = a[i,j]·b[k,l].
Matrix Kron(const Matrix& a, const Matrix& b);

// Block-diagonal assembly. Throws std::invalid_argument on an empty list.
Matrix BlockDiag(std::span<const Matrix> blocks);

// tr{S Sᵀ}: the sum of squared entries (no square root).
double FrobNorm(const Matrix& s);

struct EigenResult {
  Vector values;  // ascending
  double max_offdiag_residual = 0.0;
};

struct EigenDecomposition {
  Vector values;   // ascending
  Matrix vectors;  // column j is the unit eigenvector of values[j]
  double max_offdiag_residual = 0.0;
};

class EigenError : public std::runtime_error {
 public:
  EigenError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Cyclic Jacobi rotations. Converges when the off-diagonal mass
// sqrt(Σ_{i≠j} a_ij²) <= 1e-12·(1 + ‖S‖); at most 100 sweeps, after which an
// EigenError carrying the residual is thrown.
EigenDecomposition SymEigen(const SymmetricMatrix& s);
EigenResult SymEigenvalues(const SymmetricMatrix& s);

double MinEigenvalue(const SymmetricMatrix& s);
double MaxEigenvalue(const SymmetricMatrix& s);

enum class Definiteness { kPD, kPSD, kND, kNSD };

// "positive definite", "negative semidefinite", ...
std::string ToString(Definiteness d);

inline constexpr double kDefaultDefinitenessTol = 1e-9;

// PD iff λ_min > tol; PSD iff λ_min >= −tol; ND/NSD mirrored on λ_max.
bool IsDefinite(const SymmetricMatrix& s, Definiteness kind,
                double tol = kDefaultDefinitenessTol);

// Inverse of a symmetric positive-definite matrix via its eigendecomposition.
// Throws std::domain_error when λ_min <= 0 or λ_max/λ_min > max_condition.
SymmetricMatrix InverseSPD(const SymmetricMatrix& s,
                           double max_condition = 1e12);

std::string ToString(const Matrix& m);

}  // namespace aao

#endif  // AAO_MATRIX_HPP_

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

#include "aao/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace aao {
namespace {

void RequireSameShape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << "matrix " << op << ": shape mismatch " << a.rows() << "x"
       << a.cols() << " vs " << b.rows() << "x" << b.cols();
    throw std::invalid_argument(os.str());
  }
}

double SymmetryTolerance(const Matrix& m) {
  return 1e-10 * (1.0 + m.MaxAbs());
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("Matrix: entry count does not match shape");
  }
  if (!AllFinite()) {
    throw std::invalid_argument("Matrix: non-finite entry");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw std::invalid_argument("Matrix: ragged initializer");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  if (!AllFinite()) {
    throw std::invalid_argument("Matrix: non-finite entry");
  }
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::Constant(std::size_t rows, std::size_t cols, double value) {
  return Matrix(rows, cols, std::vector<double>(rows * cols, value));
}

Matrix Matrix::Diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::Column(std::span<const double> v) {
  return Matrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

Matrix Matrix::Transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

double Matrix::Trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::MaxAbs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::AllFinite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](double v) { return std::isfinite(v); });
}

bool Matrix::IsDiagonal(double tol) const {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (r != c && std::abs((*this)(r, c)) > tol) return false;
    }
  }
  return true;
}

Matrix Matrix::Block(std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw std::out_of_range("Matrix::Block: range exceeds matrix");
  }
  Matrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  }
  return b;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  RequireSameShape(*this, other, "+");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] += other.entries_[i];
  }
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  RequireSameShape(*this, other, "-");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] -= other.entries_[i];
  }
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : entries_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= -1.0; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "matrix *: inner dimension mismatch " << a.rows() << "x" << a.cols()
       << " * " << b.rows() << "x" << b.cols();
    throw std::invalid_argument(os.str());
  }
  std::vector<double> out(a.rows() * b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out[i * b.cols() + j] += aik * b(k, j);
      }
    }
  }
  // Products of finite inputs may overflow; callers that integrate near
  // blow-up inspect AllFinite() instead of relying on construction checks.
  return Matrix(Matrix::Unchecked{}, a.rows(), b.cols(), std::move(out));
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw std::invalid_argument("matrix-vector *: dimension mismatch");
  }
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

Matrix HorizontalConcat(std::span<const Matrix> blocks) {
  if (blocks.empty()) {
    throw std::invalid_argument("HorizontalConcat: empty block list");
  }
  const std::size_t rows = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) {
      throw std::invalid_argument("HorizontalConcat: row count mismatch");
    }
    cols += b.cols();
  }
  Matrix out(rows, cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c0 + c) = b(r, c);
    }
    c0 += b.cols();
  }
  return out;
}

SymmetricMatrix::SymmetricMatrix(Matrix m) : m_(std::move(m)) {
  if (!m_.is_square()) {
    throw std::invalid_argument("SymmetricMatrix: matrix is not square");
  }
  if (!m_.AllFinite()) {
    throw std::invalid_argument("SymmetricMatrix: non-finite entry");
  }
  if (SymmetryResidual() > SymmetryTolerance(m_)) {
    throw std::invalid_argument("SymmetricMatrix: matrix is not symmetric");
  }
}

SymmetricMatrix SymmetricMatrix::Symmetrize(const Matrix& m) {
  if (!m.is_square()) {
    throw std::invalid_argument("Symmetrize: matrix is not square");
  }
  const std::size_t n = m.rows();
  Matrix s(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    s(r, r) = m(r, r);
    for (std::size_t c = r + 1; c < n; ++c) {
      const double v = 0.5 * (m(r, c) + m(c, r));
      s(r, c) = v;
      s(c, r) = v;
    }
  }
  return SymmetricMatrix(Trusted{}, std::move(s));
}

double SymmetricMatrix::SymmetryResidual() const {
  double res = 0.0;
  for (std::size_t r = 0; r < dim(); ++r) {
    for (std::size_t c = r + 1; c < dim(); ++c) {
      res = std::max(res, std::abs(m_(r, c) - m_(c, r)));
    }
  }
  return res;
}

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return SymmetricMatrix::Symmetrize(a.matrix() + b.matrix());
}

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return SymmetricMatrix::Symmetrize(a.matrix() - b.matrix());
}

SymmetricMatrix operator*(double s, const SymmetricMatrix& a) {
  return SymmetricMatrix::Symmetrize(a.matrix() * s);
}

double QuadraticForm(const SymmetricMatrix& s, std::span<const double> x) {
  if (x.size() != s.dim()) {
    throw std::invalid_argument("QuadraticForm: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < s.dim(); ++j) row += s(i, j) * x[j];
    acc += x[i] * row;
  }
  return acc;
}

double EuclideanNorm(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

Matrix Kron(const Matrix& a, const Matrix& b) {
  const std::size_t p = b.rows();
  const std::size_t q = b.cols();
  Matrix out(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t k = 0; k < p; ++k) {
        for (std::size_t l = 0; l < q; ++l) {
          out(i * p + k, j * q + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

Matrix BlockDiag(std::span<const Matrix> blocks) {
  if (blocks.empty()) {
    throw std::invalid_argument("BlockDiag: empty block list");
  }
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out(rows, cols);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t c = 0; c < b.cols(); ++c) out(r0 + r, c0 + c) = b(r, c);
    }
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

double FrobNorm(const Matrix& s) {
  double acc = 0.0;
  for (double v : s.data()) acc += v * v;
  return acc;
}

EigenDecomposition SymEigen(const SymmetricMatrix& s) {
  constexpr int kMaxSweeps = 100;
  const std::size_t n = s.dim();
  Matrix a = s.matrix();
  Matrix v = Matrix::Identity(n);

  auto off_mass = [&a, n]() {
    double acc = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if (p != q) acc += a(p, q) * a(p, q);
      }
    }
    return std::sqrt(acc);
  };
  const double tol = 1e-12 * (1.0 + std::sqrt(FrobNorm(a)));

  int sweep = 0;
  for (; sweep < kMaxSweeps && off_mass() > tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that annihilates a(p, q) (Golub & Van Loan 8.5.2).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  const double residual = off_mass();
  if (residual > tol) {
    std::ostringstream os;
    os << "SymEigen: no convergence after " << kMaxSweeps
       << " sweeps, off-diagonal residual " << residual;
    throw EigenError(os.str(), residual);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&a](std::size_t i,
                                                    std::size_t j) {
    return a(i, i) < a(j, j);
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  double max_off = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p != q) max_off = std::max(max_off, std::abs(a(p, q)));
    }
  }
  out.max_offdiag_residual = max_off;
  return out;
}

EigenResult SymEigenvalues(const SymmetricMatrix& s) {
  auto d = SymEigen(s);
  return EigenResult{std::move(d.values), d.max_offdiag_residual};
}

double MinEigenvalue(const SymmetricMatrix& s) {
  return SymEigenvalues(s).values.front();
}

double MaxEigenvalue(const SymmetricMatrix& s) {
  return SymEigenvalues(s).values.back();
}

bool IsDefinite(const SymmetricMatrix& s, Definiteness kind, double tol) {
  if (tol < 0.0) throw std::invalid_argument("IsDefinite: tol must be >= 0");
  const auto ev = SymEigenvalues(s).values;
  switch (kind) {
    case Definiteness::kPD:
      return ev.front() > tol;
    case Definiteness::kPSD:
      return ev.front() >= -tol;
    case Definiteness::kND:
      return ev.back() < -tol;
    case Definiteness::kNSD:
      return ev.back() <= tol;
  }
  return false;
}

SymmetricMatrix InverseSPD(const SymmetricMatrix& s, double max_condition) {
  const auto d = SymEigen(s);
  const double lo = d.values.front();
  const double hi = d.values.back();
  if (!(lo > 0.0) || hi / lo > max_condition) {
    std::ostringstream os;
    os << "InverseSPD: matrix is singular or ill-conditioned (eigenvalues in ["
       << lo << ", " << hi << "])";
    throw std::domain_error(os.str());
  }
  const std::size_t n = s.dim();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = 1.0 / d.values[j];
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        inv(r, c) += w * d.vectors(r, j) * d.vectors(c, j);
      }
    }
  }
  return SymmetricMatrix::Symmetrize(inv);
}

std::string ToString(const Matrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
  }
  os << "]";
  return os.str();
}

std::string ToString(Definiteness d) {
  switch (d) {
    case Definiteness::kPD:
      return "positive definite";
    case Definiteness::kPSD:
      return "positive semidefinite";
    case Definiteness::kND:
      return "negative definite";
    case Definiteness::kNSD:
      return "negative semidefinite";
  }
  return "?";
}

}  // namespace aao

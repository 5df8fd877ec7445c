// Copyright 2026 The vblast-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vblast/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace vblast::linalg {
namespace {

void require_finite(std::span<const Complex> entries) {
  for (const auto& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("linalg: non-finite entry");
    }
  }
}

void require_same_size(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("linalg: vector dimensions " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()) + " differ");
  }
}

// Gram matrix H⁺H and the product H⁺h for a column set.
ComplexMatrix gram(std::span<const ComplexVector> cols) {
  ComplexMatrix g(cols.size(), cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t j = i; j < cols.size(); ++j) {
      const Complex v = inner(cols[i], cols[j]);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
    g(i, i) = g(i, i).real();
  }
  return g;
}

void require_interferers(std::size_t dim, std::span<const ComplexVector> interferers) {
  if (dim == 0) throw DimensionMismatch("linalg: projection dimension must be >= 1");
  if (interferers.size() >= dim) {
    throw DimensionMismatch("linalg: need fewer interferers than the space dimension");
  }
  for (const auto& c : interferers) {
    if (c.size() != dim) throw DimensionMismatch("linalg: interferer column has wrong dimension");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexVector

ComplexVector::ComplexVector(std::size_t dim) : data_(dim) {
  if (dim == 0) throw std::invalid_argument("linalg: vector dimension must be >= 1");
}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : ComplexVector(std::vector<Complex>(entries)) {}

ComplexVector::ComplexVector(std::vector<Complex> entries) : data_(std::move(entries)) {
  if (data_.empty()) throw std::invalid_argument("linalg: vector dimension must be >= 1");
  require_finite(data_);
}

double ComplexVector::norm_sq() const noexcept {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return s;
}

double ComplexVector::norm() const noexcept { return std::sqrt(norm_sq()); }

ComplexVector& ComplexVector::operator+=(const ComplexVector& rhs) {
  require_same_size(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& rhs) {
  require_same_size(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexVector& ComplexVector::operator*=(Complex s) noexcept {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexVector operator+(ComplexVector lhs, const ComplexVector& rhs) { return lhs += rhs; }
ComplexVector operator-(ComplexVector lhs, const ComplexVector& rhs) { return lhs -= rhs; }
ComplexVector operator*(Complex s, ComplexVector v) { return v *= s; }

Complex inner(const ComplexVector& a, const ComplexVector& b) {
  require_same_size(a, b);
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("linalg: matrix must be at least 1x1");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("linalg: matrix must be at least 1x1");
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("linalg: entry count does not match rows x cols");
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("linalg: matrix must be at least 1x1");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("linalg: ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const ComplexVector> columns) {
  if (columns.empty()) throw std::invalid_argument("linalg: need at least one column");
  const std::size_t rows = columns.front().size();
  ComplexMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw DimensionMismatch("linalg: columns differ in length");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("linalg: column index out of range");
  ComplexVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<ComplexVector> ComplexMatrix::columns() const {
  std::vector<ComplexVector> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

ComplexMatrix hermitian_transpose(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  }
  return t;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("linalg: cannot multiply " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " by " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("linalg: matvec dimension mismatch");
  ComplexVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("linalg: matrix difference dimension mismatch");
  }
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  }
  return c;
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Inversion and projection

ComplexMatrix invert_hpd(const ComplexMatrix& g) {
  const std::size_t n = g.rows();
  if (g.cols() != n) throw DimensionMismatch("linalg: invert_hpd needs a square matrix");

  double trace = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    trace += g(i, i).real();
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(g(i, j)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (std::abs(g(i, j) - std::conj(g(j, i))) > 1e-12 * scale) {
        throw SingularMatrix("linalg: matrix is not Hermitian");
      }
    }
  }
  const double pivot_floor = Tolerance::kPivotRelative * trace;
  if (!(trace > 0.0)) throw SingularMatrix("linalg: non-positive trace");

  // G = L L⁺, L lower triangular with real positive diagonal.
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = g(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > pivot_floor)) {
      throw SingularMatrix("linalg: Cholesky pivot " + std::to_string(d) + " below threshold");
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }

  // Solve L Y = I, then L⁺ X = Y, column by column.
  ComplexMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = (i == c) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
      y[i] = s / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      Complex s = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * inv(k, c);
      inv(ii, c) = s / l(ii, ii);
    }
  }
  return inv;
}

ComplexMatrix projection_matrix(std::size_t dim, std::span<const ComplexVector> interferers) {
  require_interferers(dim, interferers);
  ComplexMatrix p = ComplexMatrix::identity(dim);
  if (interferers.empty()) return p;

  const ComplexMatrix h = ComplexMatrix::from_columns(interferers);
  const ComplexMatrix hh = hermitian_transpose(h);
  const ComplexMatrix g_inv = invert_hpd(gram(interferers));
  return p - matmul(matmul(h, g_inv), hh);
}

ComplexMatrix projection_matrix(const ComplexMatrix& interferers) {
  const auto cols = interferers.columns();
  return projection_matrix(interferers.rows(), cols);
}

ComplexVector orthogonal_residual(const ComplexVector& h,
                                  std::span<const ComplexVector> interferers) {
  require_interferers(h.size(), interferers);
  if (interferers.empty()) return h;

  const ComplexMatrix g_inv = invert_hpd(gram(interferers));
  const std::size_t k = interferers.size();
  std::vector<Complex> hh(k);
  for (std::size_t j = 0; j < k; ++j) hh[j] = inner(interferers[j], h);

  ComplexVector residual = h;
  for (std::size_t i = 0; i < k; ++i) {
    Complex coef{0.0, 0.0};
    for (std::size_t j = 0; j < k; ++j) coef += g_inv(i, j) * hh[j];
    for (std::size_t r = 0; r < h.size(); ++r) residual[r] -= interferers[i][r] * coef;
  }
  return residual;
}

ComplexVector orthogonal_residual(const ComplexVector& h, const ComplexMatrix& interferers) {
  const auto cols = interferers.columns();
  return orthogonal_residual(h, cols);
}

}  // namespace vblast::linalg

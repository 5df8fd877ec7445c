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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

/// Small dense complex linear algebra for the detector.
///
/// Only what the successive-cancellation chain needs: Hermitian transpose,
/// products, inversion of tiny Hermitian positive-definite Gram matrices and
/// orthogonal projectors onto the complement of a set of interferer columns.
/// Everything here is a pure function on values.
namespace vblast::linalg {

using Complex = std::complex<double>;

/// Module-wide tolerances.
struct Tolerance {
  /// ‖G·G⁻¹ − I‖∞ bound for conditioned HPD inputs.
  static constexpr double kInverseResidual = 1e-12;
  /// Idempotence / symmetry / annihilation bound for projectors.
  static constexpr double kProjection = 1e-10;
  /// A Cholesky pivot below this fraction of trace(G) is treated as singular.
  static constexpr double kPivotRelative = 1e-14;
};

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public LinalgError {
 public:
  using LinalgError::LinalgError;
};

class SingularMatrix : public LinalgError {
 public:
  using LinalgError::LinalgError;
};

class ComplexVector {
 public:
  /// Zero vector of the given dimension (dim ≥ 1).
  explicit ComplexVector(std::size_t dim);
  ComplexVector(std::initializer_list<Complex> entries);
  explicit ComplexVector(std::vector<Complex> entries);

  std::size_t size() const noexcept { return data_.size(); }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  /// Squared Euclidean norm |v|².
  double norm_sq() const noexcept;
  double norm() const noexcept;

  ComplexVector& operator+=(const ComplexVector& rhs);
  ComplexVector& operator-=(const ComplexVector& rhs);
  ComplexVector& operator*=(Complex s) noexcept;

 private:
  std::vector<Complex> data_;
};

ComplexVector operator+(ComplexVector lhs, const ComplexVector& rhs);
ComplexVector operator-(ComplexVector lhs, const ComplexVector& rhs);
ComplexVector operator*(Complex s, ComplexVector v);

/// Inner product a⁺b (conjugate-linear in the first argument).
Complex inner(const ComplexVector& a, const ComplexVector& b);

/// Dense row-major complex matrix, at least 1×1, finite entries on construction.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  /// Stack equal-length vectors as columns.
  static ComplexMatrix from_columns(std::span<const ComplexVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ComplexVector column(std::size_t c) const;
  std::vector<ComplexVector> columns() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix hermitian_transpose(const ComplexMatrix& a);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest absolute entry, ‖A‖∞ in the elementwise sense used by the tests.
double max_abs(const ComplexMatrix& a);

/// Inverse of a Hermitian positive-definite matrix via Cholesky factorization.
/// Throws SingularMatrix when a pivot drops below Tolerance::kPivotRelative·trace(G)
/// or the input is not Hermitian.
ComplexMatrix invert_hpd(const ComplexMatrix& gram);

/// P = I − H(H⁺H)⁻¹H⁺ for interferer columns H (n×k, k < n). Identity when
/// the interferer set is empty.
ComplexMatrix projection_matrix(std::size_t dim, std::span<const ComplexVector> interferers);
ComplexMatrix projection_matrix(const ComplexMatrix& interferers);

/// P·h without forming P.
ComplexVector orthogonal_residual(const ComplexVector& h,
                                  std::span<const ComplexVector> interferers);
ComplexVector orthogonal_residual(const ComplexVector& h, const ComplexMatrix& interferers);

}  // namespace vblast::linalg

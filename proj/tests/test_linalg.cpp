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

#include <doctest.h>

#include <vector>

#include "vblast/linalg.hpp"
#include "vblast/rng.hpp"

using namespace vblast::linalg;

namespace {

ComplexVector random_vector(vblast::RngStream& s, std::size_t n) {
  ComplexVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [re, im] = s.next_gaussian_pair();
    v[i] = {re, im};
  }
  return v;
}

ComplexMatrix random_matrix(vblast::RngStream& s, std::size_t rows, std::size_t cols) {
  std::vector<ComplexVector> c;
  for (std::size_t j = 0; j < cols; ++j) c.push_back(random_vector(s, rows));
  return ComplexMatrix::from_columns(c);
}

}  // namespace

TEST_CASE("inner product conjugates the left argument") {
  const ComplexVector a{{0.0, 1.0}, {2.0, 0.0}};
  const ComplexVector b{{1.0, 0.0}, {0.0, 1.0}};
  const Complex v = inner(a, b);
  CHECK(v.real() == doctest::Approx(0.0));
  CHECK(v.imag() == doctest::Approx(1.0));  // (-i)(1) + 2(i)
  CHECK(inner(a, a).real() == doctest::Approx(a.norm_sq()));
  CHECK_THROWS_AS(inner(a, ComplexVector(3)), DimensionMismatch);
}

TEST_CASE("vectors and matrices reject bad shapes") {
  CHECK_THROWS(ComplexVector(0));
  CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(matvec(ComplexMatrix(2, 3), ComplexVector(2)), DimensionMismatch);
}

TEST_CASE("invert_hpd") {
  SUBCASE("scalar") {
    const auto inv = invert_hpd(ComplexMatrix{{Complex{2.0, 0.0}}});
    CHECK(inv(0, 0).real() == doctest::Approx(0.5));
  }
  SUBCASE("diagonal") {
    const auto inv = invert_hpd(ComplexMatrix{{1.0, 0.0}, {0.0, 4.0}});
    CHECK(inv(0, 0).real() == doctest::Approx(1.0));
    CHECK(inv(1, 1).real() == doctest::Approx(0.25));
    CHECK(std::abs(inv(0, 1)) == 0.0);
  }
  SUBCASE("random A^H A + I") {
    vblast::RngStream s(7, 0);
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_matrix(s, 5, 4);
      auto g = matmul(hermitian_transpose(a), a);
      for (std::size_t i = 0; i < 4; ++i) g(i, i) += 1.0;
      const auto residual = matmul(g, invert_hpd(g)) - ComplexMatrix::identity(4);
      CHECK(max_abs(residual) < Tolerance::kInverseResidual);
    }
  }
  SUBCASE("singular and non-Hermitian inputs") {
    CHECK_THROWS_AS(invert_hpd(ComplexMatrix{{1.0, 1.0}, {1.0, 1.0}}), SingularMatrix);
    CHECK_THROWS_AS(invert_hpd(ComplexMatrix{{1.0, 0.5}, {0.0, 1.0}}), SingularMatrix);
    CHECK_THROWS_AS(invert_hpd(ComplexMatrix{{-1.0, 0.0}, {0.0, 1.0}}), SingularMatrix);
  }
}

TEST_CASE("projection_matrix") {
  SUBCASE("axis projection") {
    const std::vector<ComplexVector> e1{ComplexVector{1.0, 0.0}};
    const auto p = projection_matrix(2, e1);
    CHECK(max_abs(p - ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}) < 1e-15);
  }
  SUBCASE("empty interferer set is the identity") {
    const auto p = projection_matrix(3, std::span<const ComplexVector>{});
    CHECK(max_abs(p - ComplexMatrix::identity(3)) == 0.0);
  }
  SUBCASE("random n = 4, k = 2: Hermitian, idempotent, annihilating") {
    vblast::RngStream s(11, 0);
    for (int trial = 0; trial < 100; ++trial) {
      const auto h = random_matrix(s, 4, 2);
      const auto p = projection_matrix(h);
      CHECK(max_abs(p - hermitian_transpose(p)) < Tolerance::kProjection);
      CHECK(max_abs(matmul(p, p) - p) < Tolerance::kProjection);
      CHECK(max_abs(matmul(p, h)) < Tolerance::kProjection);
    }
  }
  SUBCASE("dependent interferers") {
    const std::vector<ComplexVector> cols{ComplexVector{1.0, 1.0, 0.0}, ComplexVector{2.0, 2.0, 0.0}};
    CHECK_THROWS_AS(projection_matrix(3, cols), SingularMatrix);
  }
  SUBCASE("as many interferers as dimensions") {
    const std::vector<ComplexVector> cols{ComplexVector{1.0, 0.0}, ComplexVector{0.0, 1.0}};
    CHECK_THROWS(projection_matrix(2, cols));
  }
}

TEST_CASE("orthogonal_residual") {
  const std::vector<ComplexVector> e1{ComplexVector{1.0, 0.0, 0.0}};
  SUBCASE("parallel to the interferer cancels fully") {
    const auto r = orthogonal_residual(ComplexVector{{0.0, 3.0}, 0.0, 0.0}, e1);
    CHECK(r.norm() < 1e-15);
  }
  SUBCASE("orthogonal to the interferers is unchanged") {
    const ComplexVector h{0.0, {1.0, -2.0}, 4.0};
    const auto r = orthogonal_residual(h, e1);
    CHECK((r - h).norm() < 1e-15);
  }
  SUBCASE("random: orthogonality and Pythagoras") {
    vblast::RngStream s(13, 0);
    for (int trial = 0; trial < 100; ++trial) {
      const auto h = random_vector(s, 4);
      const auto interferers = random_matrix(s, 4, 2);
      const auto r = orthogonal_residual(h, interferers);
      for (const auto& c : interferers.columns()) CHECK(std::abs(inner(c, r)) < 1e-10);
      const auto along = h - r;
      CHECK(h.norm_sq() == doctest::Approx(r.norm_sq() + along.norm_sq()).epsilon(1e-12));
    }
  }
}

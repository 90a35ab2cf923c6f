// Copyright 2026 The bellsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <doctest.h>

#include <numbers>
#include <random>

#include "bellsim/errors.hpp"
#include "bellsim/tensor.hpp"
#include "oracles.hpp"

using namespace bellsim;

namespace {

ComplexMatrix diag2(double a, double b) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

} // namespace

TEST_SUITE("tensor") {

TEST_CASE("kron of identities and diagonals") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    CHECK(oracle::max_abs(kron(i2, i2) - ComplexMatrix::Identity(4, 4)) == 0.0);

    const ComplexMatrix z = diag2(1, -1);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected.diagonal() << 1, -1, -1, 1;
    CHECK(oracle::max_abs(kron(z, z) - expected) == 0.0);
}

TEST_CASE("kron of rectangular matrices matches the index loop") {
    std::mt19937_64 rng(11);
    const auto a = oracle::random_matrix(2, 3, rng);
    const auto b = oracle::random_matrix(4, 5, rng);
    const ComplexMatrix k = kron(a, b);
    REQUIRE(k.rows() == 8);
    REQUIRE(k.cols() == 15);
    CHECK(oracle::max_abs(k - oracle::kron(a, b)) <= 1e-15);
}

TEST_CASE("kron is associative") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = oracle::random_matrix(2, 3, rng);
        const auto b = oracle::random_matrix(3, 2, rng);
        const auto c = oracle::random_matrix(2, 2, rng);
        CHECK(oracle::max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) <= 1e-12);
    }
}

TEST_CASE("kron rejects results over the dimension cap") {
    const ComplexMatrix big = ComplexMatrix::Identity(65, 64);
    CHECK_THROWS_AS(kron(big, big, 4096), ConfigError);
    CHECK_NOTHROW(kron(big, big, 65 * 65));
}

TEST_CASE("expm_hermitian closed forms") {
    const ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
    CHECK(oracle::max_abs(expm_hermitian(zero, 2.3) - ComplexMatrix::Identity(3, 3)) == 0.0);

    const ComplexMatrix u = expm_hermitian(diag2(1, -1), std::numbers::pi);
    CHECK(oracle::max_abs(u + ComplexMatrix::Identity(2, 2)) <= 1e-15);
}

TEST_CASE("expm_hermitian matches the Taylor series oracle") {
    std::mt19937_64 rng(13);
    const auto h = oracle::random_hermitian(8, rng);
    const ComplexMatrix u = expm_hermitian(h, 0.7);
    CHECK((u - oracle::taylor_expm(h, 0.7)).norm() <= 1e-9);
}

TEST_CASE("expm_hermitian is unitary for random Hermitian generators") {
    std::mt19937_64 rng(14);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto dim = static_cast<Eigen::Index>(2 + trial % 15);
        const auto h = oracle::random_hermitian(dim, rng);
        worst = std::max(worst, unitarity_defect(expm_hermitian(h, oracle::uniform(rng, -3, 3))));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("expm_hermitian group property") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        const auto h = oracle::random_hermitian(6, rng);
        const double t1 = oracle::uniform(rng, -2, 2);
        const double t2 = oracle::uniform(rng, -2, 2);
        const ComplexMatrix lhs = expm_hermitian(h, t1) * expm_hermitian(h, t2);
        CHECK(oracle::max_abs(lhs - expm_hermitian(h, t1 + t2)) <= 1e-10);
    }
}

TEST_CASE("expm_hermitian rejects non-Hermitian input") {
    ComplexMatrix m = diag2(1, 2);
    m(0, 1) = 1e-6;
    CHECK_THROWS_AS(expm_hermitian(m, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(expm_hermitian(ComplexMatrix::Zero(2, 3), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(expm_hermitian(ComplexMatrix::Zero(5000, 5000).eval(), 1.0), ConfigError);
}

TEST_CASE("commutator norm") {
    const ComplexMatrix x = (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished();
    const ComplexMatrix z = diag2(1, -1);
    CHECK(commutator_norm(z, z) == 0.0);
    // [Z, X] = 2iY, Frobenius norm 2 * sqrt(2)
    CHECK(commutator_norm(z, x) == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-14));
}

TEST_CASE("density matrix invariants") {
    std::mt19937_64 rng(16);
    const auto psi = oracle::random_state(5, rng);
    const auto rho = DensityMatrix::from_pure(psi);
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.min_eigenvalue() >= -1e-12);

    CHECK_THROWS_AS(DensityMatrix(2.0 * ComplexMatrix::Identity(2, 2)), InvariantError);
    ComplexMatrix skew = 0.5 * ComplexMatrix::Identity(2, 2);
    skew(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{skew}, InvariantError);
}

}

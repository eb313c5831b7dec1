#include "doctest.h"

#include <cmath>

#include "numrad/aluthge.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace numrad;

namespace {

const double kGrid[] = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

ComplexMatrix single(int n, int i, int j, double v) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    m(i, j) = v;
    return m;
}

}  // namespace

TEST_CASE("transform of B has one entry 2^t 3^(1-t)") {
    const auto b = paper_fixture("B");
    for (double t : kGrid) {
        const auto tt = aluthge_t(b, t);
        const double v = std::pow(2.0, t) * std::pow(3.0, 1.0 - t);
        CHECK(oracle::spectral_norm(tt - single(3, 1, 2, v)) <= 1e-14);
    }
}

TEST_CASE("transform of A is e3 e3^*") {
    for (double t : kGrid) {
        CHECK(oracle::spectral_norm(aluthge_t(paper_fixture("A"), t) - single(3, 2, 2, 1.0)) <= 1e-14);
    }
}

TEST_CASE("square-zero operators transform to zero") {
    gen::Gen g(10);
    for (int k = 0; k < 40; ++k) {
        const auto m = g.square_zero(g.integer(1, 9));
        const double n = oracle::spectral_norm(m);
        for (double t : kGrid) CHECK(oracle::spectral_norm(aluthge_t(m, t)) <= 1e-10 * n);
    }
    CHECK(aluthge_t(paper_fixture("E"), 0.3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("endpoint formulas") {
    gen::Gen g(11);
    for (int k = 0; k < 20; ++k) {
        const auto m = g.any(g.integer(1, 7));
        const auto p = polar_decompose(m);
        const ComplexMatrix proj = p.U.adjoint() * p.U;
        const double scale = std::max(1.0, oracle::spectral_norm(m));
        CHECK(oracle::spectral_norm(aluthge_t(m, 0.0) - proj * p.U * p.P) <= 1e-12 * scale);
        CHECK(oracle::spectral_norm(aluthge_t(m, 1.0) - p.P * p.U * proj) <= 1e-12 * scale);
        CHECK(oracle::spectral_norm(aluthge_t(p, 0.5) - aluthge_t(m, 0.5)) == 0.0);
    }
}

TEST_CASE("aluthge_t rejects t outside [0, 1]") {
    CHECK_THROWS_AS(aluthge_t(paper_fixture("A"), -1e-9), std::invalid_argument);
    CHECK_THROWS_AS(aluthge_t(paper_fixture("A"), 1.0 + 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(aluthge_iterate(paper_fixture("A"), 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(aluthge_iterate(paper_fixture("A"), 0.5, -1), std::invalid_argument);
}

TEST_CASE("aluthge_iterate") {
    SUBCASE("E collapses") {
        const auto c = aluthge_iterate(paper_fixture("E"), 0.5, 3);
        REQUIRE(c.terms.size() == 4);
        CHECK(c.terms[0] == paper_fixture("E"));
        for (int k = 1; k <= 3; ++k) CHECK(c.terms[k].cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("full-rank normal operators are fixed") {
        gen::Gen g(12);
        const auto m = g.normal(5);
        const auto c = aluthge_iterate(m, 0.5, 2);
        for (const auto& x : c.terms) CHECK(oracle::spectral_norm(x - m) <= 1e-10);
    }
    SUBCASE("B") {
        const auto c = aluthge_iterate(paper_fixture("B"), 0.5, 2);
        CHECK(oracle::spectral_norm(c.terms[1] - single(3, 1, 2, std::sqrt(6.0))) <= 1e-14);
        CHECK(c.terms[2].cwiseAbs().maxCoeff() <= 1e-14);
    }
    SUBCASE("norms never grow") {
        gen::Gen g(13);
        for (int k = 0; k < 20; ++k) {
            const auto c = aluthge_iterate(g.any(g.integer(1, 8)), g.uniform(), 6);
            CHECK(c.terms.size() == 7);
            for (std::size_t j = 1; j < c.terms.size(); ++j) {
                CHECK(oracle::spectral_norm(c.terms[j]) <= oracle::spectral_norm(c.terms[j - 1]) + 1e-10);
            }
        }
    }
}

TEST_CASE("nilpotent_norm_residual") {
    CHECK(nilpotent_norm_residual(paper_fixture("E"), 0.25) == 0.0);
    CHECK(std::abs(nilpotent_norm_residual(paper_fixture("B"), 0.5)) <= 1e-14);
    CHECK(nilpotent_norm_residual(ComplexMatrix::Zero(3, 3), 0.7) == 0.0);
    gen::Gen g(14);
    for (int k = 0; k < 60; ++k) {
        const auto m = g.any(g.integer(1, 8));
        for (double t : kGrid) {
            // Both sides by direct evaluation.
            const double n = oracle::spectral_norm(m);
            if (n == 0.0) continue;
            const double sq = oracle::spectral_norm(m * m);
            const double claim = t <= 0.5 ? std::pow(sq, t) * std::pow(n, 1.0 - 2.0 * t)
                                          : std::pow(sq, 1.0 - t) * std::pow(n, 2.0 * t - 1.0);
            const double r = nilpotent_norm_residual(m, t);
            CHECK(r >= -1e-10);
            CHECK(r == doctest::Approx(claim - oracle::spectral_norm(aluthge_t(m, t))).epsilon(1e-9).scale(n));
        }
    }
}

TEST_CASE("transform norm bounds") {
    gen::Gen g(15);
    for (int k = 0; k < 60; ++k) {
        const auto m = g.any(g.integer(1, 9));
        const double n = oracle::spectral_norm(m);
        for (double t : kGrid) CHECK(oracle::spectral_norm(aluthge_t(m, t)) <= n + 1e-10);
        CHECK(oracle::spectral_norm(aluthge_t(m, 0.5)) <= std::sqrt(oracle::spectral_norm(m * m)) + 1e-10);
    }
}

TEST_CASE("spectral radius survives the half transform") {
    // Restricted to draws with well-conditioned spectra; defective
    // eigenvalues move by O(eps^(1/k)) under rounding.
    gen::Gen g(16);
    for (int k = 0; k < 40; ++k) {
        const int n = g.integer(1, 9);
        const auto m = (k % 2 == 0) ? g.general(n) : g.normal(n);
        const double r0 = spectral_radius(m);
        const double r1 = spectral_radius(aluthge_t(m, 0.5));
        CHECK(std::abs(r0 - r1) <= 1e-8 * std::max(1.0, oracle::spectral_norm(m)));
    }
}

TEST_CASE("vanishing transform forces a vanishing square") {
    gen::Gen g(17);
    for (int k = 0; k < 60; ++k) {
        const auto m = (k % 3 == 0) ? g.square_zero(g.integer(2, 8)) : g.any(g.integer(1, 8));
        const double n = oracle::spectral_norm(m);
        for (double t : kGrid) {
            if (oracle::spectral_norm(aluthge_t(m, t)) <= 1e-12) {
                CHECK(oracle::spectral_norm(m * m) <= 1e-8 * n * n);
            }
        }
    }
}

#include "doctest.h"

#include <cmath>

#include "numrad/frontend.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace numrad;

namespace {

constexpr double kSlack = 1e-7;

const TGrid& grid() {
    static const TGrid g = make_tgrid();
    return g;
}

// Draws that stress different parts of the pipeline: rank deficiency,
// nilpotency, normality, scale.
ComplexMatrix draw(gen::Gen& g, int k) {
    const int n = 1 + k % 7;
    return g.any(n);
}

}  // namespace

TEST_CASE("soundness and ordering on mixed draws") {
    gen::Gen g(40);
    for (int k = 0; k < 60; ++k) {
        const auto m = draw(g, k);
        const auto r = compare_all(m, grid(), 1e-9);
        CAPTURE(k);
        CHECK(r.violations.empty());
        const auto v = [&](const char* n) { return r.value(n); };
        CHECK(v("bound_min_aluthge") <= v("bound_yamazaki") + kSlack);
        CHECK(v("bound_yamazaki") <= v("bound_kittaneh_norm") + kSlack);
        CHECK(v("bound_t_mean") <= v("bound_yamazaki") + kSlack);
        CHECK(v("bound_square_product") <= v("bound_norm_product") + kSlack);
        CHECK(v("bound_norm_product") <= v("bound_kittaneh_norm") + kSlack);
        CHECK(v("bound_square_product") <= v("bound_kittaneh_norm") + kSlack);
        CHECK(v("bound_iterated_closed") <= v("bound_kittaneh_norm") + kSlack);
        CHECK(v("bound_fourth_sandwich_upper") <= v("bound_kittaneh_cartesian_upper") + kSlack);
        CHECK(v("bound_fourth_sandwich_lower") >= v("bound_kittaneh_cartesian_lower") - kSlack);
    }
}

// The t-mean bound mixes powers of the norm and is left out.
TEST_CASE("scaling is homogeneous") {
    gen::Gen g(41);
    for (int k = 0; k < 10; ++k) {
        const auto m = g.general(g.integer(1, 5));
        const double c = g.uniform(0.2, 5.0);
        const auto a = compare_all(m, grid(), 1e-9);
        const auto b = compare_all(c * m, grid(), 1e-9);
        for (std::size_t i = 0; i < a.records.size(); ++i) {
            CAPTURE(a.records[i].name);
            if (a.records[i].name == "bound_t_mean") continue;
            CHECK(b.records[i].value == doctest::Approx(c * a.records[i].value).epsilon(1e-7));
        }
    }
}

TEST_CASE("unitary similarity leaves every bound unchanged") {
    gen::Gen g(42);
    for (int k = 0; k < 8; ++k) {
        const int n = g.integer(1, 5);
        const auto m = g.any(n);
        const auto u = g.unitary(n);
        const auto a = compare_all(m, grid(), 1e-9);
        const auto b = compare_all(u * m * u.adjoint(), grid(), 1e-9);
        const double scale = std::max(1.0, oracle::spectral_norm(m));
        for (std::size_t i = 0; i < a.records.size(); ++i) {
            CAPTURE(a.records[i].name);
            CHECK(std::abs(b.records[i].value - a.records[i].value) <= 1e-7 * scale);
        }
    }
}

TEST_CASE("iterated series is monotone in N and ends below the closed form") {
    gen::Gen g(43);
    for (int k = 0; k < 30; ++k) {
        const auto m = g.any(g.integer(1, 8));
        double prev = bound_iterated_series(m, 0.5, 1).value;
        for (int terms = 2; terms <= 16; ++terms) {
            const double cur = bound_iterated_series(m, 0.5, terms).value;
            CHECK(cur <= prev + kSlack);
            prev = cur;
        }
        CHECK(prev <= bound_iterated_closed(m).value + kSlack);
        const double t = g.uniform();
        CHECK(bound_iterated_series(m, t, 8).value >= numerical_radius(m, 1e-9).lo - kSlack);
    }
}

TEST_CASE("equality for square-zero operators") {
    gen::Gen g(44);
    for (int k = 0; k < 15; ++k) {
        const auto m = g.square_zero(g.integer(2, 8));
        const auto r = compare_all(m, grid(), 1e-9);
        const double w = r.w.mid();
        const double p = oracle::spectral_norm(m.adjoint() * m + m * m.adjoint());
        CHECK(std::abs(w - 0.5 * std::sqrt(p)) <= kSlack);
        for (const char* name : {"bound_norm_product", "bound_square_product", "bound_fourth_power"}) {
            CAPTURE(name);
            CHECK(std::abs(r.value(name) - w) <= kSlack);
        }
    }
}

TEST_CASE("equality for normal operators") {
    gen::Gen g(45);
    for (int k = 0; k < 15; ++k) {
        const auto m = g.normal(g.integer(1, 8));
        const auto r = compare_all(m, grid(), 1e-9);
        const double n = oracle::spectral_norm(m);
        for (const char* name : {"bound_norm_product", "bound_square_product", "bound_fourth_power", "bound_t_mean",
                                 "bound_min_aluthge", "bound_yamazaki"}) {
            CAPTURE(name);
            CHECK(std::abs(r.value(name) - n) <= kSlack);
        }
    }
}

TEST_CASE("bounds respect the trivial norm sandwich") {
    gen::Gen g(46);
    for (int k = 0; k < 20; ++k) {
        const auto m = g.any(g.integer(1, 8));
        const auto r = compare_all(m, grid(), 1e-9);
        const double n = oracle::spectral_norm(m);
        CHECK(r.value("bound_kittaneh_norm") <= n + 1e-10);
        CHECK(r.value("bound_kittaneh_cartesian_lower") >= 0.5 * n - 1e-10);
    }
}

TEST_CASE("heinz and composite residuals stay nonnegative") {
    gen::Gen g(47);
    for (int k = 0; k < 500; ++k) {
        const int n = g.integer(1, 6);
        const auto a = g.psd(n, g.integer(0, n));
        const auto b = g.psd(n, g.integer(0, n));
        CAPTURE(k);
        CHECK(heinz_residual(a, g.any(n), b, g.uniform()) >= -1e-10);
    }
    for (int k = 0; k < 500; ++k) {
        const int n = g.integer(1, 5);
        CAPTURE(k);
        CHECK(composite_spectral_residual(g.any(n), g.any(n), g.any(n), g.any(n)) >= -1e-8);
    }
}

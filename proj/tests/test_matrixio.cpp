#include "doctest.h"

#include <cstdio>
#include <string>

#include "numrad/decomp.hpp"
#include "numrad/matrixio.hpp"

using namespace numrad;

namespace {

bool same(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a.data()[i] != b.data()[i]) return false;
    }
    return true;
}

template <class F>
MatrixFormatError format_error(F&& f) {
    try {
        f();
    } catch (const MatrixFormatError& e) {
        return e;
    }
    FAIL("expected MatrixFormatError");
    return MatrixFormatError("unreachable");
}

}  // namespace

TEST_CASE("parse_matrix decodes row-major [re,im] pairs") {
    const auto e = parse_matrix(R"({"dim":2,"data":[[0,0],[1,0],[0,0],[0,0]]})");
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 1) = 1.0;
    CHECK(same(e, expected));

    const auto a = parse_matrix(R"({"dim":3,"data":[[0,0],[2,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[1,0]]})");
    CHECK(same(a, paper_fixture("A")));

    const auto one = parse_matrix(R"({"dim":1,"data":[[3,-4]]})");
    REQUIRE(one.rows() == 1);
    CHECK(one(0, 0) == Complex(3.0, -4.0));
}

TEST_CASE("parse_matrix keeps decimal input exact") {
    const auto m = parse_matrix(R"({"dim":1,"data":[[0.1,-1e-300]]})");
    CHECK(m(0, 0).real() == 0.1);
    CHECK(m(0, 0).imag() == -1e-300);
}

TEST_CASE("parse_matrix errors carry locations") {
    SUBCASE("malformed syntax") {
        format_error([] { parse_matrix(R"({"dim":2,"data":[)"); });
        format_error([] { parse_matrix("[1,2]"); });
        format_error([] { parse_matrix(R"({"dim":1})"); });
        format_error([] { parse_matrix(R"({"dim":1,"data":[[1,0]],"extra":3})"); });
        format_error([] { parse_matrix(R"({"dim":0,"data":[]})"); });
        format_error([] { parse_matrix(R"({"dim":1.5,"data":[[1,0]]})"); });
    }
    SUBCASE("non-square data") {
        const auto e = format_error([] { parse_matrix(R"({"dim":2,"data":[[1,0],[2,0],[3,0]]})"); });
        CHECK(std::string(e.what()).find("non-square") != std::string::npos);
    }
    SUBCASE("bad entry reports row and column") {
        const auto e = format_error([] { parse_matrix(R"({"dim":2,"data":[[1,0],[2,0],[3],[4,0]]})"); });
        CHECK(e.row() == 1);
        CHECK(e.col() == 0);
    }
    SUBCASE("non-finite entry") {
        const auto e = format_error([] { parse_matrix(R"({"dim":2,"data":[[1,0],[2,0],[3,0],[4,1e999]]})"); });
        CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
        CHECK(e.row() == 1);
        CHECK(e.col() == 1);
    }
}

TEST_CASE("serialize_matrix round-trips exactly") {
    ComplexMatrix e = ComplexMatrix::Zero(2, 2);
    e(0, 1) = 1.0;
    CHECK(same(parse_matrix(serialize_matrix(e)), e));
    CHECK(same(parse_matrix(serialize_matrix(paper_fixture("B"))), paper_fixture("B")));
    const ComplexMatrix zero = ComplexMatrix::Zero(1, 1);
    CHECK(same(parse_matrix(serialize_matrix(zero)), zero));

    ComplexMatrix awkward(2, 2);
    awkward << Complex(0.1, 1.0 / 3.0), Complex(-5e-324, 1.7976931348623157e308),
        Complex(std::nextafter(1.0, 2.0), -0.0), Complex(6.02214076e23, -2.0 / 7.0);
    CHECK(same(parse_matrix(serialize_matrix(awkward)), awkward));
}

TEST_CASE("matrix files round-trip through disk") {
    const std::string path = "numrad_test_matrix.json";
    const auto b = paper_fixture("B");
    write_matrix_file(path, b);
    CHECK(same(read_matrix_file(path), b));
    std::remove(path.c_str());
    CHECK_THROWS(read_matrix_file("does/not/exist.json"));
}

TEST_CASE("built-in fixtures") {
    const auto all = paper_fixtures();
    REQUIRE(all.size() == 5);
    CHECK(all[0].first == "A");
    CHECK(all[4].first == "E");

    const auto a = paper_fixture("A");
    CHECK(a.rows() == 3);
    CHECK(a(0, 1) == Complex(2.0, 0.0));
    CHECK(a(2, 2) == Complex(1.0, 0.0));
    CHECK(a.cwiseAbs().sum() == 3.0);

    const auto b = paper_fixture("B");
    CHECK(b(0, 1) == Complex(2.0, 0.0));
    CHECK(b(1, 2) == Complex(3.0, 0.0));
    CHECK(b.cwiseAbs().sum() == 5.0);

    ComplexMatrix c(2, 2), d(2, 2);
    c << 1.0, 1.0, 0.0, -1.0;
    d << 1.0, 2.0, 0.0, -1.0;
    CHECK(same(paper_fixture("C"), c));
    CHECK(same(paper_fixture("D"), d));

    const auto e = paper_fixture("E");
    CHECK(e(0, 1) == Complex(1.0, 0.0));
    CHECK(e.cwiseAbs().sum() == 1.0);
    CHECK_THROWS_AS(paper_fixture("F"), std::invalid_argument);
}

TEST_CASE("ensemble tags") {
    for (auto k : {EnsembleKind::Ginibre, EnsembleKind::Nilpotent2, EnsembleKind::StrictUpper,
                   EnsembleKind::Normal, EnsembleKind::PaperFixture}) {
        CHECK(parse_ensemble_kind(ensemble_kind_tag(k)) == k);
    }
    CHECK(ensemble_kind_tag(EnsembleKind::StrictUpper) == "strict-upper");
    CHECK_THROWS_AS(parse_ensemble_kind("wishart"), std::invalid_argument);
}

TEST_CASE("ensembles are deterministic and well formed") {
    SUBCASE("determinism") {
        const EnsembleConfig cfg{EnsembleKind::Ginibre, 3, 2, 7};
        const auto x = make_ensemble(cfg);
        const auto y = make_ensemble(cfg);
        REQUIRE(x.size() == 2);
        CHECK(same(x[0], y[0]));
        CHECK(same(x[1], y[1]));
        CHECK_FALSE(same(x[0], x[1]));
        CHECK(same(draw_ensemble_member(cfg, 1), x[1]));
        const auto other = make_ensemble({EnsembleKind::Ginibre, 3, 2, 8});
        CHECK_FALSE(same(other[0], x[0]));
    }
    SUBCASE("nilpotent2 squares to exactly zero") {
        for (int dim = 1; dim <= 10; ++dim) {
            for (const auto& m : make_ensemble({EnsembleKind::Nilpotent2, dim, 5, 11})) {
                const ComplexMatrix sq = m * m;
                CHECK(sq.cwiseAbs().maxCoeff() == 0.0);
                if (dim >= 2) CHECK(m.cwiseAbs().maxCoeff() > 0.0);
            }
        }
    }
    SUBCASE("normal draws commute with their adjoint") {
        for (int dim : {1, 2, 4, 7, 10}) {
            for (const auto& m : make_ensemble({EnsembleKind::Normal, dim, 4, 3})) {
                const double n = spectral_norm(m);
                const double comm = spectral_norm(m.adjoint() * m - m * m.adjoint());
                CHECK(comm <= 1e-12 * std::max(1.0, n * n));
            }
        }
    }
    SUBCASE("strict-upper draws") {
        for (const auto& m : make_ensemble({EnsembleKind::StrictUpper, 5, 3, 4})) {
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j <= i; ++j) CHECK(m(i, j) == Complex(0.0, 0.0));
            CHECK(m(0, 4) != Complex(0.0, 0.0));
        }
    }
    SUBCASE("ginibre entries have unit second moment") {
        const auto m = make_ensemble({EnsembleKind::Ginibre, 60, 1, 5})[0];
        const double mean_sq = m.squaredNorm() / static_cast<double>(m.size());
        CHECK(mean_sq == doctest::Approx(1.0).epsilon(0.05));
        CHECK(std::abs(m.mean()) < 0.05);
    }
    SUBCASE("paper-fixture kind cycles the fixtures of that size") {
        const auto two = make_ensemble({EnsembleKind::PaperFixture, 2, 4, 0});
        CHECK(same(two[0], paper_fixture("C")));
        CHECK(same(two[1], paper_fixture("D")));
        CHECK(same(two[2], paper_fixture("E")));
        CHECK(same(two[3], paper_fixture("C")));
        CHECK_THROWS(make_ensemble({EnsembleKind::PaperFixture, 5, 1, 0}));
    }
    SUBCASE("invalid configs") {
        CHECK_THROWS(make_ensemble({EnsembleKind::Ginibre, 3, 0, 1}));
        CHECK_THROWS(make_ensemble({EnsembleKind::Ginibre, 0, 1, 1}));
    }
}

TEST_CASE("require_operator") {
    CHECK_THROWS_AS(require_operator(ComplexMatrix(2, 3), "t"), std::invalid_argument);
    CHECK_THROWS_AS(require_operator(ComplexMatrix(0, 0), "t"), std::invalid_argument);
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(1, 1) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(require_operator(bad, "t"), std::invalid_argument);
    CHECK_NOTHROW(require_operator(ComplexMatrix::Zero(3, 3), "t"));
}

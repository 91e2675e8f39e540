#include <doctest.h>

#include <cmath>
#include <limits>

#include "epzeros/dpoly.hpp"

using namespace epz;

namespace {

struct Fixture {
    ClassGroup g = enumerate_classes(-4);
    CharacterSystem sys = character_system(g, 0);
    EulerTable table = build_euler_table(sys, 5000, 1e9);
};

} // namespace

TEST_CASE("build_poly: term sets and constants") {
    Fixture fx;
    // Y=1: empty (plus the constant for ratio kind)
    auto p0 = build_poly(fx.table, 0, 1.0, DirichletPolynomial::Plain);
    CHECK(p0.terms.empty());
    CHECK(eval_poly(p0, cplx(2.0, 3.0)) == cplx(0.0, 0.0));
    auto r0 = build_poly(fx.table, 0, 1.0, DirichletPolynomial::Ratio);
    CHECK(r0.terms.empty());
    CHECK(eval_poly(r0, cplx(2.0, 3.0)) == r0.constant);
    // constant for j=J is log c_J
    CHECK(r0.constant == cplx(std::log(4.0), 0.0));

    // D=-4, trivial character, Y=10: terms exactly at p^n in {2,4,5,8,9}
    auto p10 = build_poly(fx.table, 0, 10.0, DirichletPolynomial::Plain);
    std::vector<std::pair<double, double>> want = {
        {2.0, 1.0}, {4.0, 0.5}, {5.0, 2.0}, {8.0, 1.0 / 3}, {9.0, 1.0}};
    CHECK(p10.terms == want);

    CHECK_THROWS_AS(build_poly(fx.table, 0, 1e12, DirichletPolynomial::Plain),
                    CutoffExceeded);
}

TEST_CASE("eval_poly: arithmetic and the tail bound at sigma=3") {
    Fixture fx;
    DirichletPolynomial one;
    one.terms = {{5.0, 2.0}};
    one.log_pn = {std::log(5.0)};
    CHECK(std::abs(eval_poly(one, cplx(2.0, 0.0)) - 0.08) < 1e-15);

    // R_{j,Y}(3) vs log L_j(3): |diff| < sum_{p^n > Y} 2 p^{-3n}
    LSystem lsys(fx.sys);
    for (double Y : {50.0, 500.0}) {
        auto P = build_poly(fx.table, 0, Y, DirichletPolynomial::Plain);
        cplx R = eval_poly(P, cplx(3.0, 0.0));
        cplx logL = std::log(lsys.hecke_l(cplx(3.0, 0.0), 0));
        double bound = poly_tail_bound(fx.table, Y, 3.0) +
                       2.0 * std::pow(5000.0, -2.0) / std::log(2.0); // table truncation slack
        CHECK(std::abs(logL - R) < bound);
    }
}

TEST_CASE("ratio polynomial identity Q = const + R_j - R_J (termwise)") {
    ClassGroup g = enumerate_classes(-39);
    CharacterSystem sys = character_system(g, 0);
    EulerTable table = build_euler_table(sys, 3000, 1e9);
    for (int j = 0; j < sys.J; ++j) {
        auto q = build_poly(table, j, 800.0, DirichletPolynomial::Ratio);
        auto rj = build_poly(table, j, 800.0, DirichletPolynomial::Plain);
        auto rJ = build_poly(table, sys.J - 1, 800.0, DirichletPolynomial::Plain);
        for (cplx s : {cplx(0.8, 13.0), cplx(0.6, 200.0)}) {
            cplx lhs = eval_poly(q, s);
            cplx rhs = (j == sys.J - 1)
                           ? q.constant + eval_poly(rJ, s)
                           : q.constant + eval_poly(rj, s) - eval_poly(rJ, s);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("batched evaluation agrees with pointwise") {
    Fixture fx;
    auto P = build_poly(fx.table, 0, 1000.0, DirichletPolynomial::Plain);
    std::vector<double> ts;
    for (int i = 0; i < 40; ++i) ts.push_back(3.0 + 2.5 * i);
    auto batch = eval_poly_batch(P, 0.8, ts);
    for (size_t i = 0; i < ts.size(); ++i)
        CHECK(std::abs(batch[i] - eval_poly(P, cplx(0.8, ts[i]))) < 1e-14);
}

TEST_CASE("approx_survey: tol=inf gives zero fraction; small survey runs") {
    ClassGroup g = enumerate_classes(-23);
    CharacterSystem sys = character_system(g, 0);
    EulerTable table = build_euler_table(sys, 3000, 1e9);
    LSystem lsys(sys);
    auto inf = approx_survey(lsys, table, 0.9, 50.0, 24, 1000.0,
                             std::numeric_limits<double>::infinity());
    CHECK(inf.exceed == 0);
    CHECK(inf.skipped == 0);
    auto sv = approx_survey(lsys, table, 0.9, 100.0, 24, 1000.0, 0.1);
    CHECK(sv.fraction() <= 1.0);
    CHECK(sv.n == 24);
}

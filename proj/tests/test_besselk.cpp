#include <doctest.h>

#include <cmath>

#include "epzeros/besselk.hpp"
#include "epzeros/specfun.hpp"
#include "reference_values.hpp"

using namespace epz;

TEST_CASE("ktilde against 50-digit references") {
    for (const auto& row : kKtildeRef) {
        cplx nu(row[0], row[1]);
        double y = row[2];
        cplx want(row[3], row[4]);
        cplx got = ktilde(nu, y);
        double scale = std::max(std::abs(want), 1e-30);
        CHECK_MESSAGE(std::abs(got - want) / scale < 5e-11,
                      "nu=(", row[0], ",", row[1], ") y=", y);
    }
}

TEST_CASE("regime overlap cross-checks at heights beyond the reference table") {
    // series vs Debye near the series boundary; Debye vs contour at the
    // rho threshold, on both sides of the transition y = t
    for (double t : {2.0e4, 1.0e5, 4.0e5}) {
        for (double mu : {0.05, 1.0, 2.5}) {
            cplx nu(mu, t);
            double ys = std::sqrt(14.0 * t) * 0.95;
            cplx a = ktilde_series(nu, ys), b = ktilde_debye(nu, ys);
            CHECK(std::abs(a - b) / std::abs(b) < 3e-10);
            double w = std::pow(150.0 * t * t, 2.0 / 3.0);
            for (double y : {std::sqrt(t * t - w), std::sqrt(t * t + w)}) {
                cplx c = ktilde_debye(nu, y), d = ktilde_contour(nu, y);
                CHECK(std::abs(c - d) / std::max(std::abs(c), 1e-30) < 2e-9);
            }
        }
    }
}

TEST_CASE("conjugation symmetry and fast-mode agreement") {
    cplx nu(0.25, 700.0);
    for (double y : {20.0, 350.0, 690.0, 705.0, 1000.0}) {
        cplx v = ktilde(nu, y);
        cplx vc = ktilde(std::conj(nu), y);
        CHECK(std::abs(vc - std::conj(v)) < 1e-12 * std::abs(v) + 1e-300);
        cplx f = ktilde_fast(nu, y);
        CHECK(std::abs(f - v) < 2e-5 * std::abs(v) + 1e-250);
    }
}

#pragma once

// Dirichlet polynomial approximations R_{j,Y}(s) to log L_j(s), the ratio
// polynomials Q_{j,Y}(s), and an empirical survey of the approximation
// quality over t-windows.

#include <complex>
#include <cstdint>
#include <vector>

#include "epzeros/forms.hpp"
#include "epzeros/lfun.hpp"

namespace epz {

struct DirichletPolynomial {
    enum Kind { Plain, Ratio } kind = Plain;
    int j = 0;
    double Y = 2;
    cplx constant = 0;                      // log(c_j/c_J) or log c_J for ratio kind
    std::vector<std::pair<double, double>> terms; // (p^n, coefficient), ascending p^n
    std::vector<double> log_pn;             // precomputed log(p^n)
};

DirichletPolynomial build_poly(const EulerTable& table, int j, double Y,
                               DirichletPolynomial::Kind kind);

cplx eval_poly(const DirichletPolynomial& P, cplx s);

// batched evaluation at sigma + i t_k
std::vector<cplx> eval_poly_batch(const DirichletPolynomial& P, double sigma,
                                  const std::vector<double>& ts);

struct SurveyResult {
    double sigma = 0, T = 0, Y = 0, tol = 0;
    long long n = 0;
    long long exceed = 0;  // samples with max_j |log L_j - R_{j,Y}| > tol
    long long skipped = 0; // branch-tracking failures
    double fraction() const { return n ? static_cast<double>(exceed) / n : 0.0; }
};

SurveyResult approx_survey(const LSystem& lsys, const EulerTable& table, double sigma,
                           double T, long long n_samples, double Y, double tol,
                           std::uint64_t seed = 12345);

// rigorous tail bound sum_{p^n > Y} 2 p^{-n sigma} restricted to n log p <= log(table.Y_max)
double poly_tail_bound(const EulerTable& table, double Y, double sigma);

} // namespace epz

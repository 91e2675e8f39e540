#pragma once

// Empirical value-distribution of bold-L(sigma+it) against the random-model
// law: rectangle probabilities, sup-discrepancy over a seeded rectangle
// family, and the Tsang smoothed-indicator toolkit.

#include <cstdint>
#include <vector>

#include "epzeros/lfun.hpp"
#include "epzeros/rmodel.hpp"

namespace epz {

struct EmpiricalMeasure {
    double sigma = 0, T = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<double>> samples; // 2J-vectors
    long long skipped = 0;
};

// axis-aligned 2J-rectangle with (lo, hi] sides; +-inf for half-infinite
struct Rect2J {
    std::vector<double> lo, hi;
    bool contains(const std::vector<double>& x) const;
};

struct RectFamily {
    std::uint64_t seed = 0;
    std::vector<Rect2J> rects;
};

// n stratified-random samples of bold-L(sigma + it), t in [T, 2T]
EmpiricalMeasure empirical_measure(const LSystem& lsys, double sigma, double T, long long n,
                                   std::uint64_t seed);

// model-side measure: n samples of bold-L(sigma, X)
EmpiricalMeasure model_measure(const CharacterSystem& sys, const EulerTable& table,
                               const ModelConfig& cfg, double sigma, long long n);

// fraction of samples inside R ((lo,hi] per side)
double psi_rect(const std::vector<std::vector<double>>& samples, const Rect2J& R);

// quantile-anchored half-spaces ({0.1..0.9} per coordinate and direction)
// plus n_random seeded random rectangles
RectFamily make_rect_family(const EmpiricalMeasure& anchor, std::uint64_t seed,
                            int n_random);

struct DiscrepancyResult {
    double sup_lower_bound = 0;
    double std_error = 0; // binomial bound
    long long n_emp = 0, n_model = 0;
    std::uint64_t family_seed = 0;
};

DiscrepancyResult discrepancy_sup(const EmpiricalMeasure& emp, const EmpiricalMeasure& model,
                                  const RectFamily& family);

// Tsang kernel G(u) = 2u/pi + 2(1-u)u cot(pi u) on [0,1]
double tsang_G(double u);

// smoothed indicator of [alpha, beta]:
//   Im int_0^eta G(u/eta) e^{2 pi i u x} f_{alpha,beta}(u) du/u,
//   f_{alpha,beta}(u) = (e^{-2 pi i alpha u} - e^{-2 pi i beta u})/2
double tsang_indicator(double alpha, double beta, double eta, double x);

// the paper's Fejer-kernel error envelope at x
double tsang_error_envelope(double alpha, double beta, double eta, double x);

} // namespace epz

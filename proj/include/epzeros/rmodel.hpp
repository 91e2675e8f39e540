#pragma once

// The random Euler-product model: X assigns independent uniform unit-modulus
// values to the rational primes, log L_j(sigma, X) is the truncated Dirichlet
// series of the model, and curly-M(sigma) = E[log|sum_j c_j L_j(sigma,X)|] is
// estimated by Monte Carlo together with its sigma-derivative.

#include <complex>
#include <cstdint>
#include <vector>

#include "epzeros/forms.hpp"
#include "epzeros/lfun.hpp"

namespace epz {

struct RandomSample {
    std::uint64_t seed = 0;       // base seed
    std::uint64_t index = 0;      // sample index (stream)
    long long P_max = 0;
    std::vector<cplx> x;          // X(p) per prime p <= P_max (sieve order)
};

struct ModelConfig {
    long long P_max = 100000;
    int k_max = 3;
    long long n_samples = 10000;
    std::uint64_t base_seed = 1;
    std::vector<double> sigma_grid;
};

struct MomentEstimate {
    double mean = 0;
    double std_error = 0;
    long long n = 0;
    long long rejected = 0;
    double tail_bound = 0; // std-dev bound of the dropped p > P_max tail
};

struct MPrimeEstimate {
    MomentEstimate pathwise;          // mean of Re(F'/F)
    MomentEstimate finite_difference; // CRN central difference, h = 1e-3
};

RandomSample sample_x(const ModelConfig& cfg, std::uint64_t sample_index);

// truncated log L_j(sigma, X); needs table.P_max >= cfg.P_max
cplx log_l_random(double sigma, const RandomSample& X, int j, const EulerTable& table,
                  int k_max);

// model bold-L vector (no branch reduction)
LogVector bold_l_random(double sigma, const RandomSample& X, const CharacterSystem& sys,
                        const EulerTable& table, int k_max);

MomentEstimate estimate_M(double sigma, const ModelConfig& cfg, const CharacterSystem& sys,
                          const EulerTable& table);

MPrimeEstimate estimate_M_prime(double sigma, const ModelConfig& cfg,
                                const CharacterSystem& sys, const EulerTable& table);

// characteristic function E[exp(i (w,z).bold-L(sigma,X))] by Monte Carlo
cplx char_fn_mc(const std::vector<double>& w, const std::vector<double>& z, double sigma,
                const ModelConfig& cfg, const CharacterSystem& sys, const EulerTable& table);

// hat-Psi(y,0,...,0) as a product of per-prime circle averages
cplx char_fn_bessel_axis(double y, double sigma, const ModelConfig& cfg,
                         const CharacterSystem& sys, const EulerTable& table);

// single per-prime circle average (exposed for the J0 comparison)
cplx circle_average_factor(double y, double sigma, const EulerTable& table, size_t prime_index,
                           int k_max, int n_trunc);

// E|sum_{y<p<=z} a_j(p) X(p)/p^sigma|^{2k} by Monte Carlo (Lemma-3-style window)
MomentEstimate prime_window_moment(double sigma, double y, double z, int k, int j,
                                   const ModelConfig& cfg, const EulerTable& table);

// E| log|sum_j c_j L_j(sigma,X)| |^{2k} by Monte Carlo
MomentEstimate abs_log_moment(double sigma, int two_k, const ModelConfig& cfg,
                              const CharacterSystem& sys, const EulerTable& table);

// E| log c_j L_j(sigma,X) |^{2k} by Monte Carlo
MomentEstimate log_lj_moment(double sigma, int two_k, int j, const ModelConfig& cfg,
                             const CharacterSystem& sys, const EulerTable& table);

// std-dev bound of the p > P_max tail of log L at sigma
double tail_std_bound(double sigma, long long P_max);

} // namespace epz

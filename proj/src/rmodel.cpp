#include "epzeros/rmodel.hpp"

#include <cmath>

#include "epzeros/errors.hpp"
#include "epzeros/parallel.hpp"
#include "epzeros/rng.hpp"
#include "epzeros/specfun.hpp"

namespace epz {

namespace {

// per-prime contribution of log L_j and d(log L_j)/dsigma
struct TermAccum {
    cplx logl = 0;
    cplx dlogl = 0;
};

// evaluate all J logs (and optionally derivatives) for one sample
void logs_for_sample(double sigma, const RandomSample& X, const CharacterSystem& sys,
                     const EulerTable& table, int k_max, std::vector<TermAccum>& out,
                     bool want_deriv) {
    int J = sys.J;
    out.assign(J, TermAccum{});
    size_t np = 0;
    for (const auto& pd : table.primes) {
        if (pd.p > X.P_max) break;
        double lp = std::log(static_cast<double>(pd.p));
        cplx xp = X.x[np];
        switch (pd.kind) {
            case SplittingType::Inert: {
                // sum_k X^k/(k p^{2 k sigma}); log N = 2 log p
                cplx xk = 1.0;
                for (int k = 1; k <= k_max; ++k) {
                    xk *= xp;
                    double w = std::exp(-2.0 * k * sigma * lp) / k;
                    cplx term = xk * w;
                    for (int j = 0; j < J; ++j) {
                        out[j].logl += term;
                        if (want_deriv) out[j].dlogl -= term * (2.0 * k * lp);
                    }
                }
                break;
            }
            case SplittingType::Ramified: {
                cplx xk = 1.0;
                for (int k = 1; k <= k_max; ++k) {
                    xk *= xp;
                    double w = std::exp(-static_cast<double>(k) * sigma * lp) / k;
                    for (int j = 0; j < J; ++j) {
                        double chik = (k % 2) ? pd.chi[j].value().real() : 1.0;
                        cplx term = xk * (w * chik);
                        out[j].logl += term;
                        if (want_deriv) out[j].dlogl -= term * (k * lp);
                    }
                }
                break;
            }
            case SplittingType::Split: {
                cplx xk = 1.0;
                for (int k = 1; k <= k_max; ++k) {
                    xk *= xp;
                    double w = std::exp(-static_cast<double>(k) * sigma * lp) / k;
                    for (int j = 0; j < J; ++j) {
                        double a = 2.0 * angle_times(pd.chi[j], k).value().real();
                        cplx term = xk * (w * a);
                        out[j].logl += term;
                        if (want_deriv) out[j].dlogl -= term * (k * lp);
                    }
                }
                break;
            }
        }
        ++np;
    }
}

void check_model(const ModelConfig& cfg, const EulerTable& table) {
    if (table.P_max < cfg.P_max)
        throw DomainError("euler table truncation below model P_max");
    if (cfg.P_max < 100) throw DomainError("P_max must be >= 100");
    if (cfg.k_max < 2) throw DomainError("k_max must be >= 2");
}

} // namespace

RandomSample sample_x(const ModelConfig& cfg, std::uint64_t sample_index) {
    RandomSample s;
    s.seed = cfg.base_seed;
    s.index = sample_index;
    s.P_max = cfg.P_max;
    auto primes = sieve_primes(cfg.P_max);
    s.x.resize(primes.size());
    for (size_t i = 0; i < primes.size(); ++i) {
        double u = u01(cfg.base_seed, sample_index, i);
        double th = 2.0 * M_PI * u;
        s.x[i] = cplx(std::cos(th), std::sin(th));
    }
    return s;
}

cplx log_l_random(double sigma, const RandomSample& X, int j, const EulerTable& table,
                  int k_max) {
    if (!(sigma > 0.5)) throw DomainError("log_l_random: sigma must exceed 1/2");
    std::vector<TermAccum> acc;
    logs_for_sample(sigma, X, table.system, table, k_max, acc, false);
    return acc[j].logl;
}

LogVector bold_l_random(double sigma, const RandomSample& X, const CharacterSystem& sys,
                        const EulerTable& table, int k_max) {
    if (!(sigma > 0.5)) throw DomainError("bold_l_random: sigma must exceed 1/2");
    std::vector<TermAccum> acc;
    logs_for_sample(sigma, X, sys, table, k_max, acc, false);
    int J = sys.J;
    LogVector out;
    out.J = J;
    out.sigma = sigma;
    out.comp.resize(2 * J);
    out.log_cl.resize(J);
    for (int j = 0; j < J; ++j) {
        double cj = sys.coeffs[j];
        out.log_cl[j] = acc[j].logl + cplx(std::log(std::fabs(cj)), cj < 0 ? M_PI : 0.0);
    }
    for (int j = 0; j + 1 < J; ++j) {
        out.comp[j] = out.log_cl[j].real() - out.log_cl[J - 1].real();
        out.comp[J + j] = out.log_cl[j].imag() - out.log_cl[J - 1].imag();
    }
    out.comp[J - 1] = out.log_cl[J - 1].real();
    out.comp[2 * J - 1] = out.log_cl[J - 1].imag();
    return out;
}

double tail_std_bound(double sigma, long long P_max) {
    // Var of the dropped tail <= sum_{p>P_max} 4 p^{-2 sigma} (+ higher powers);
    // prime-counting integral bound
    double P = static_cast<double>(P_max);
    double v = 0;
    // integral_P^inf 4 u^{-2 sigma}/log u du, 60-panel midpoint in log u
    double a = std::log(P);
    for (int i = 0; i < 400; ++i) {
        double w = 0.05;
        double lu = a + (i + 0.5) * w;
        v += 4.0 * std::exp((1.0 - 2.0 * sigma) * lu) / lu * w;
        if (std::exp((1.0 - 2.0 * sigma) * lu) < 1e-22) break;
    }
    v *= 1.3; // slack for pi(x) fluctuation
    v += 8.0 * std::exp((1.0 - 4.0 * sigma) * a) / a; // k >= 2 powers
    return std::sqrt(v);
}

namespace {

// shared MC driver: fn(sample_index) -> accepted value or NaN to reject
template <typename Fn>
MomentEstimate mc_run(const ModelConfig& cfg, Fn&& fn) {
    if (cfg.n_samples < 100) throw DegenerateConfig("n_samples must be >= 100");
    std::vector<double> vals(cfg.n_samples);
    parallel_for(static_cast<size_t>(cfg.n_samples),
                 [&](size_t i) { vals[i] = fn(static_cast<std::uint64_t>(i)); });
    std::vector<double> ok;
    ok.reserve(vals.size());
    long long rej = 0;
    for (double v : vals)
        (std::isnan(v) ? (void)++rej : ok.push_back(v));
    MomentEstimate e;
    auto ms = mean_stderr(ok);
    e.mean = ms.mean;
    e.std_error = ms.stderr_;
    e.n = static_cast<long long>(ok.size());
    e.rejected = rej;
    return e;
}

} // namespace

MomentEstimate estimate_M(double sigma, const ModelConfig& cfg, const CharacterSystem& sys,
                          const EulerTable& table) {
    check_model(cfg, table);
    if (!(sigma > 0.5)) throw DomainError("estimate_M: sigma must exceed 1/2");
    int J = sys.J;
    auto est = mc_run(cfg, [&](std::uint64_t i) {
        RandomSample X = sample_x(cfg, i);
        std::vector<TermAccum> acc;
        logs_for_sample(sigma, X, sys, table, cfg.k_max, acc, false);
        cplx F = 0;
        for (int j = 0; j < J; ++j) F += sys.coeffs[j] * std::exp(acc[j].logl);
        double a = std::abs(F);
        if (a < 1e-300) return std::nan("");
        return std::log(a);
    });
    est.tail_bound = tail_std_bound(sigma, cfg.P_max);
    return est;
}

MPrimeEstimate estimate_M_prime(double sigma, const ModelConfig& cfg,
                                const CharacterSystem& sys, const EulerTable& table) {
    check_model(cfg, table);
    if (!(sigma > 0.5)) throw DomainError("estimate_M_prime: sigma must exceed 1/2");
    int J = sys.J;
    const double h = 1e-3;
    std::vector<double> path(cfg.n_samples), fd(cfg.n_samples);
    parallel_for(static_cast<size_t>(cfg.n_samples), [&](size_t i) {
        RandomSample X = sample_x(cfg, i);
        std::vector<TermAccum> acc;
        logs_for_sample(sigma, X, sys, table, cfg.k_max, acc, true);
        cplx F = 0, Fp = 0;
        for (int j = 0; j < J; ++j) {
            cplx Lj = std::exp(acc[j].logl);
            F += sys.coeffs[j] * Lj;
            Fp += sys.coeffs[j] * Lj * acc[j].dlogl;
        }
        path[i] = (std::abs(F) < 1e-300) ? 0.0 : (Fp / F).real();
        // common random numbers at sigma +- h
        std::vector<TermAccum> am, ap;
        logs_for_sample(sigma - h, X, sys, table, cfg.k_max, am, false);
        logs_for_sample(sigma + h, X, sys, table, cfg.k_max, ap, false);
        cplx Fm = 0, Fpl = 0;
        for (int j = 0; j < J; ++j) {
            Fm += sys.coeffs[j] * std::exp(am[j].logl);
            Fpl += sys.coeffs[j] * std::exp(ap[j].logl);
        }
        fd[i] = (std::log(std::abs(Fpl)) - std::log(std::abs(Fm))) / (2.0 * h);
    });
    MPrimeEstimate out;
    auto ms = mean_stderr(path);
    out.pathwise = {ms.mean, ms.stderr_, static_cast<long long>(cfg.n_samples), 0,
                    tail_std_bound(sigma, cfg.P_max)};
    auto mf = mean_stderr(fd);
    out.finite_difference = {mf.mean, mf.stderr_, static_cast<long long>(cfg.n_samples), 0,
                             tail_std_bound(sigma, cfg.P_max)};
    double comb = std::sqrt(ms.stderr_ * ms.stderr_ + mf.stderr_ * mf.stderr_);
    if (std::fabs(ms.mean - mf.mean) > 5.0 * comb + 1e-9)
        throw EstimatorDisagreement("pathwise and finite-difference M' estimates disagree");
    return out;
}

cplx char_fn_mc(const std::vector<double>& w, const std::vector<double>& z, double sigma,
                const ModelConfig& cfg, const CharacterSystem& sys, const EulerTable& table) {
    check_model(cfg, table);
    int J = sys.J;
    if (static_cast<int>(w.size()) != J || static_cast<int>(z.size()) != J)
        throw DomainError("char_fn_mc: w and z must have length J");
    std::vector<double> re(cfg.n_samples), im(cfg.n_samples);
    parallel_for(static_cast<size_t>(cfg.n_samples), [&](size_t i) {
        RandomSample X = sample_x(cfg, i);
        LogVector lv = bold_l_random(sigma, X, sys, table, cfg.k_max);
        double phase = 0;
        for (int j = 0; j < J; ++j) phase += w[j] * lv.u(j) + z[j] * lv.v(j);
        re[i] = std::cos(phase);
        im[i] = std::sin(phase);
    });
    return {pairwise_sum(re) / cfg.n_samples, pairwise_sum(im) / cfg.n_samples};
}

cplx circle_average_factor(double y, double sigma, const EulerTable& table, size_t prime_index,
                           int k_max, int n_trunc) {
    const auto& pd = table.primes[prime_index];
    double lp = std::log(static_cast<double>(pd.p));
    int J = table.system.J;
    int kk = std::min(k_max, n_trunc);
    // coefficients of Re sum_n (a_1(p^n) - a_J(p^n)) e^{i n th} / p^{n sigma}
    std::vector<double> coef(kk + 1, 0.0);
    for (int n = 1; n <= kk; ++n)
        coef[n] = (table.coeff(pd, 0, n) - table.coeff(pd, J - 1, n)) *
                  std::exp(-n * sigma * lp);
    double total_amp = 0;
    for (int n = 1; n <= kk; ++n) total_amp += std::fabs(coef[n]);
    int M = 16;
    double need = std::fabs(y) * total_amp;
    while (M < 8.0 * (need + kk + 2) && M < 8192) M *= 2;
    cplx acc = 0;
    for (int m = 0; m < M; ++m) {
        double th = 2.0 * M_PI * m / M;
        double r = 0;
        for (int n = 1; n <= kk; ++n) r += coef[n] * std::cos(n * th);
        acc += cplx(std::cos(y * r), std::sin(y * r));
    }
    return acc / static_cast<double>(M);
}

cplx char_fn_bessel_axis(double y, double sigma, const ModelConfig& cfg,
                         const CharacterSystem& sys, const EulerTable& table) {
    check_model(cfg, table);
    if (y < 0) throw DomainError("char_fn_bessel_axis: y must be >= 0");
    int J = sys.J;
    double lc = (J > 1) ? std::log(std::fabs(sys.coeffs[0] / sys.coeffs[J - 1])) : 0.0;
    cplx out = cplx(std::cos(y * lc), std::sin(y * lc));
    for (size_t i = 0; i < table.primes.size(); ++i) {
        if (table.primes[i].p > cfg.P_max) break;
        out *= circle_average_factor(y, sigma, table, i, cfg.k_max, cfg.k_max);
        if (std::abs(out) < 1e-300) break;
    }
    return out;
}

MomentEstimate prime_window_moment(double sigma, double y, double z, int k, int j,
                                   const ModelConfig& cfg, const EulerTable& table) {
    check_model(cfg, table);
    return mc_run(cfg, [&](std::uint64_t i) {
        RandomSample X = sample_x(cfg, i);
        cplx S = 0;
        size_t np = 0;
        for (const auto& pd : table.primes) {
            if (pd.p > X.P_max) break;
            if (pd.p > y && pd.p <= z) {
                double a = table.coeff(pd, j, 1);
                S += a * X.x[np] * std::exp(-sigma * std::log(static_cast<double>(pd.p)));
            }
            ++np;
        }
        return std::pow(std::norm(S), k); // |S|^{2k}
    });
}

MomentEstimate abs_log_moment(double sigma, int two_k, const ModelConfig& cfg,
                              const CharacterSystem& sys, const EulerTable& table) {
    check_model(cfg, table);
    int J = sys.J;
    return mc_run(cfg, [&](std::uint64_t i) {
        RandomSample X = sample_x(cfg, i);
        std::vector<TermAccum> acc;
        logs_for_sample(sigma, X, sys, table, cfg.k_max, acc, false);
        cplx F = 0;
        for (int j = 0; j < J; ++j) F += sys.coeffs[j] * std::exp(acc[j].logl);
        double a = std::abs(F);
        if (a < 1e-300) return std::nan("");
        return std::pow(std::fabs(std::log(a)), two_k);
    });
}

MomentEstimate log_lj_moment(double sigma, int two_k, int j, const ModelConfig& cfg,
                             const CharacterSystem& sys, const EulerTable& table) {
    check_model(cfg, table);
    return mc_run(cfg, [&](std::uint64_t i) {
        RandomSample X = sample_x(cfg, i);
        std::vector<TermAccum> acc;
        logs_for_sample(sigma, X, sys, table, cfg.k_max, acc, false);
        cplx lcj = acc[j].logl + cplx(std::log(std::fabs(sys.coeffs[j])),
                                      sys.coeffs[j] < 0 ? M_PI : 0.0);
        return std::pow(std::abs(lcj), two_k);
    });
}

} // namespace epz

#include "epzeros/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epzeros/errors.hpp"
#include "epzeros/parallel.hpp"
#include "epzeros/rng.hpp"

namespace epz {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kStrata = 1024;
} // namespace

bool Rect2J::contains(const std::vector<double>& x) const {
    for (size_t d = 0; d < lo.size(); ++d)
        if (!(x[d] > lo[d] && x[d] <= hi[d])) return false;
    return true;
}

EmpiricalMeasure empirical_measure(const LSystem& lsys, double sigma, double T, long long n,
                                   std::uint64_t seed) {
    if (!(sigma > 0.5 && sigma < 1.0))
        throw DomainError("empirical_measure: 1/2 < sigma < 1 required");
    EmpiricalMeasure m;
    m.sigma = sigma;
    m.T = T;
    m.seed = seed;
    m.samples.assign(n, {});
    std::vector<char> skip(n, 0);
    parallel_for(static_cast<size_t>(n), [&](size_t i) {
        // stratified t: stratum floor(i K / n) of [T, 2T] split into K strata
        long long stratum = static_cast<long long>(i) * kStrata / n;
        double u = u01(seed, 99, i);
        double t = T * (1.0 + (static_cast<double>(stratum) + u) / kStrata);
        for (int attempt = 0;; ++attempt) {
            try {
                LogVector lv = lsys.log_vector(sigma, t);
                m.samples[i] = lv.comp;
                return;
            } catch (const BranchTrackingFailure&) {
                if (attempt >= 5) {
                    skip[i] = 1;
                    return;
                }
                t += (attempt + 1) * 1e-5 * T / kStrata;
            }
        }
    });
    std::vector<std::vector<double>> kept;
    kept.reserve(m.samples.size());
    for (size_t i = 0; i < m.samples.size(); ++i) {
        if (skip[i]) ++m.skipped;
        else kept.push_back(std::move(m.samples[i]));
    }
    m.samples = std::move(kept);
    if (m.skipped * 100 > n) throw TooManySkips("empirical_measure: >1% branch failures");
    return m;
}

EmpiricalMeasure model_measure(const CharacterSystem& sys, const EulerTable& table,
                               const ModelConfig& cfg, double sigma, long long n) {
    EmpiricalMeasure m;
    m.sigma = sigma;
    m.T = 0;
    m.seed = cfg.base_seed;
    m.samples.assign(n, {});
    parallel_for(static_cast<size_t>(n), [&](size_t i) {
        RandomSample X = sample_x(cfg, i);
        m.samples[i] = bold_l_random(sigma, X, sys, table, cfg.k_max).comp;
    });
    return m;
}

double psi_rect(const std::vector<std::vector<double>>& samples, const Rect2J& R) {
    if (samples.empty()) return 0.0;
    long long inside = 0;
    for (const auto& x : samples)
        if (R.contains(x)) ++inside;
    return static_cast<double>(inside) / samples.size();
}

RectFamily make_rect_family(const EmpiricalMeasure& anchor, std::uint64_t seed, int n_random) {
    RectFamily fam;
    fam.seed = seed;
    if (anchor.samples.empty()) throw DomainError("make_rect_family: empty anchor measure");
    size_t dim = anchor.samples[0].size();
    // empirical quantiles per coordinate
    std::vector<std::vector<double>> qs(dim);
    for (size_t d = 0; d < dim; ++d) {
        std::vector<double> col(anchor.samples.size());
        for (size_t i = 0; i < col.size(); ++i) col[i] = anchor.samples[i][d];
        std::sort(col.begin(), col.end());
        for (int q = 1; q <= 9; ++q)
            qs[d].push_back(col[std::min(col.size() - 1, col.size() * q / 10)]);
    }
    auto full = [&] {
        Rect2J r;
        r.lo.assign(dim, -kInf);
        r.hi.assign(dim, kInf);
        return r;
    };
    for (size_t d = 0; d < dim; ++d)
        for (double q : qs[d]) {
            Rect2J a = full();
            a.hi[d] = q; // {x_d <= q}
            fam.rects.push_back(a);
            Rect2J b = full();
            b.lo[d] = q; // {x_d > q}
            fam.rects.push_back(b);
        }
    // seeded random rectangles anchored at quantile spans
    for (int k = 0; k < n_random; ++k) {
        Rect2J r = full();
        for (size_t d = 0; d < dim; ++d) {
            double u1 = u01(seed, d + 1, k), u2 = u01b(seed, d + 1, k);
            // each side independently half-infinite with probability 1/4
            double a = qs[d][0] + (qs[d][8] - qs[d][0]) * std::min(u1, u2) * 1.4 - 0.2;
            double b = qs[d][0] + (qs[d][8] - qs[d][0]) * std::max(u1, u2) * 1.4 - 0.2;
            double u3 = u01(seed, dim + d + 1, k);
            r.lo[d] = (u3 < 0.25) ? -kInf : a;
            r.hi[d] = (u3 > 0.75) ? kInf : b;
            if (r.lo[d] >= r.hi[d]) r.hi[d] = kInf;
        }
        fam.rects.push_back(r);
    }
    return fam;
}

DiscrepancyResult discrepancy_sup(const EmpiricalMeasure& emp, const EmpiricalMeasure& model,
                                  const RectFamily& family) {
    DiscrepancyResult res;
    res.n_emp = static_cast<long long>(emp.samples.size());
    res.n_model = static_cast<long long>(model.samples.size());
    res.family_seed = family.seed;
    std::vector<double> vals(family.rects.size());
    parallel_for(family.rects.size(), [&](size_t i) {
        vals[i] = std::fabs(psi_rect(emp.samples, family.rects[i]) -
                            psi_rect(model.samples, family.rects[i]));
    });
    for (double v : vals) res.sup_lower_bound = std::max(res.sup_lower_bound, v);
    res.std_error = 0.5 * std::sqrt(1.0 / std::max<long long>(1, res.n_emp) +
                                    1.0 / std::max<long long>(1, res.n_model));
    return res;
}

double tsang_G(double u) {
    if (u < 0.0 || u > 1.0) throw DomainError("tsang_G: u must lie in [0,1]");
    // remove the cot singularities: near 0, u cot(pi u) -> 1/pi;
    // near 1, (1-u) cot(pi u) -> -1/pi
    if (u < 1e-7) return 2.0 * u / M_PI + 2.0 * (1.0 - u) / M_PI * (1.0 - (M_PI * u) * (M_PI * u) / 3.0);
    if (u > 1.0 - 1e-7) {
        double e = 1.0 - u;
        // cot(pi u) = -1/(pi e) + pi e/3 + O(e^3)
        return 2.0 * u / M_PI + 2.0 * u * e * (-1.0 / (M_PI * e) + M_PI * e / 3.0);
    }
    return 2.0 * u / M_PI + 2.0 * (1.0 - u) * u / std::tan(M_PI * u);
}

namespace {

// integrand of the smoothed indicator, with the removable u=0 singularity
cplx tsang_integrand(double alpha, double beta, double eta, double x, double u) {
    if (u < 1e-12) return cplx(0.0, (beta - alpha) * M_PI * tsang_G(0.0));
    cplx e1 = std::exp(cplx(0.0, -2.0 * M_PI * alpha * u));
    cplx e2 = std::exp(cplx(0.0, -2.0 * M_PI * beta * u));
    cplx f = 0.5 * (e1 - e2);
    return tsang_G(u / eta) * std::exp(cplx(0.0, 2.0 * M_PI * u * x)) * f / u;
}

double tsang_quad(double alpha, double beta, double eta, double x, double a, double b,
                  double tol, int depth) {
    auto im_at = [&](double u) { return tsang_integrand(alpha, beta, eta, x, u).imag(); };
    double m = 0.5 * (a + b);
    double fa = im_at(a), fm = im_at(m), fb = im_at(b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = im_at(lm), frm = im_at(rm);
    double s1 = (b - a) / 6.0 * (fa + 4 * fm + fb);
    double s2 = (b - a) / 12.0 * (fa + 4 * flm + 2 * fm + 4 * frm + fb);
    if (std::fabs(s1 - s2) < 15 * tol || depth > 32) return s2;
    return tsang_quad(alpha, beta, eta, x, a, m, tol / 2, depth + 1) +
           tsang_quad(alpha, beta, eta, x, m, b, tol / 2, depth + 1);
}

} // namespace

double tsang_indicator(double alpha, double beta, double eta, double x) {
    if (!(alpha < beta) || !(eta > 0)) throw DomainError("tsang_indicator: need alpha<beta, eta>0");
    // panels sized against the oscillation frequencies
    double freq = 2.0 * M_PI * (std::fabs(x) + std::max(std::fabs(alpha), std::fabs(beta)));
    int npanel = std::max(8, static_cast<int>(eta * freq / 3.0));
    npanel = std::min(npanel, 100000);
    double tot = 0;
    for (int i = 0; i < npanel; ++i) {
        double a = eta * i / npanel, b = eta * (i + 1.0) / npanel;
        tot += tsang_quad(alpha, beta, eta, x, a, b, 1e-11 / npanel, 0);
    }
    return tot;
}

double tsang_error_envelope(double alpha, double beta, double eta, double x) {
    auto fej = [&](double d) {
        double z = M_PI * eta * d;
        if (std::fabs(z) < 1e-12) return 1.0;
        double s = std::sin(z) / z;
        return s * s;
    };
    return fej(x - alpha) + fej(x - beta);
}

} // namespace epz

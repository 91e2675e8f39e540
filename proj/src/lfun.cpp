#include "epzeros/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "epzeros/besselk.hpp"
#include "epzeros/errors.hpp"

namespace epz {

namespace {

using lcplx = std::complex<long double>;
constexpr long double kPiL = 3.14159265358979323846264338L;

lcplx lg(cplx z) { return lgamma_complex(lcplx(z.real(), z.imag())); }

cplx dtoc(lcplx z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// zeta via the shared phase table: needs phase[n] = n^{-it} with Im z = 2t
cplx zeta_cached(cplx z, const EvalContext::TCache& tc) {
    long M = std::max<long>(18, static_cast<long>(0.32 * std::fabs(z.imag())) + 12);
    if (M >= static_cast<long>(tc.phase.size())) M = static_cast<long>(tc.phase.size()) - 1;
    double sig = z.real();
    cplx s = 0;
    for (long n = 1; n < M; ++n) {
        cplx ph = tc.phase[n];
        s += std::exp(-sig * std::log(static_cast<double>(n))) * (ph * ph);
    }
    cplx Mz = std::exp(-sig * std::log(static_cast<double>(M))) * (tc.phase[M] * tc.phase[M]);
    s += 0.5 * Mz + Mz * static_cast<double>(M) / (z - 1.0);
    static const double kB[20] = {
        1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6,
        -3617.0 / 510, 43867.0 / 798, -174611.0 / 330, 854513.0 / 138,
        -236364091.0 / 2730, 8553103.0 / 6, -23749461029.0 / 870,
        8615841276005.0 / 14322, -7709321041217.0 / 510, 2577687858367.0 / 6,
        -26315271553053477373.0 / 1919190, 2929993913841559.0 / 6,
        -261082718496449122051.0 / 13530};
    cplx fac = z * Mz / static_cast<double>(M);
    double invM2 = 1.0 / (static_cast<double>(M) * M);
    double factorial = 2.0;
    for (int k = 1; k <= 20; ++k) {
        cplx term = kB[k - 1] / factorial * fac;
        s += term;
        if (std::abs(term) < 1e-17 * std::abs(s)) break;
        fac *= (z + static_cast<double>(2 * k - 1)) * (z + static_cast<double>(2 * k)) * invM2;
        factorial *= (2.0 * k + 1) * (2.0 * k + 2);
    }
    return s;
}

} // namespace

EvalContext::EvalContext(const BinaryQuadraticForm& form, EvalPolicy policy)
    : form_(reduce_form(form)), pol_(policy) {
    D_ = form_.discriminant();
    validate_discriminant(D_);
    rtD_ = std::sqrt(static_cast<double>(-D_));
    y0_ = rtD_ / (2.0 * form_.a);
    x0_ = static_cast<double>(form_.b) / (2.0 * form_.a);

    // lattice values for the psi route
    double qmax = (pol_.theta_cut + pol_.t_slack * pol_.psi_t_max) * rtD_ / (2.0 * M_PI);
    std::map<long long, double> vals;
    long long a = form_.a, b = form_.b, c = form_.c;
    long long mmax = static_cast<long long>(std::sqrt(qmax / a)) + 2;
    long long nmax = static_cast<long long>(std::sqrt(4.0 * a * qmax / (-D_))) + 2;
    for (long long m = -mmax; m <= mmax; ++m)
        for (long long n = -nmax; n <= nmax; ++n) {
            if (m == 0 && n == 0) continue;
            long long q = a * m * m + b * m * n + c * n * n;
            if (q <= qmax) vals[q] += 1.0;
        }
    lat_.assign(vals.begin(), vals.end());

    // bessel-route tables
    nmax_tables_ = static_cast<int>(bessel_n_max(pol_.t_max)) + 2;
    ln_.resize(nmax_tables_ + 1, 0.0);
    for (int n = 1; n <= nmax_tables_; ++n) ln_[n] = std::log(static_cast<double>(n));
    long long per = 2 * form_.a;
    cosx0_.resize(per);
    for (long long r = 0; r < per; ++r) {
        long long num = ((r * form_.b) % per + per) % per;
        long long g = std::gcd(num, per);
        RationalAngle ang{num == 0 ? 0 : num / g, num == 0 ? 1 : per / g};
        cosx0_[r] = ang.value().real();
    }
    div_offset_.assign(nmax_tables_ + 2, 0);
    std::vector<std::vector<int>> divs(nmax_tables_ + 1);
    for (int d = 1; d <= nmax_tables_; ++d)
        for (int n = d; n <= nmax_tables_; n += d) divs[n].push_back(d);
    for (int n = 1; n <= nmax_tables_; ++n) {
        div_offset_[n] = static_cast<int>(div_flat_.size());
        div_flat_.insert(div_flat_.end(), divs[n].begin(), divs[n].end());
    }
    div_offset_[nmax_tables_ + 1] = static_cast<int>(div_flat_.size());
}

double EvalContext::bessel_n_max(double t) const {
    // smallest ycut >= max(t,1) with t(pi/2 - phi) - ycut cos(phi) <= -Lambda,
    // phi = asin(min(1, t/ycut)); then N = ycut/(2 pi y0)
    double lambda = 42.0 + std::log(1.0 + t);
    double lo = std::max(t, 1.0), hi = M_PI * std::max(t, 1.0) / 2 + lambda + 10;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        double phi = std::asin(std::min(1.0, t / mid));
        double val = t * (M_PI / 2 - phi) - mid * std::cos(phi);
        (val > -lambda ? lo : hi) = mid;
    }
    return hi / (2.0 * M_PI * y0_) + 1;
}

cplx EvalContext::completed_psi(cplx s) const {
    if (std::abs(s) < 1e-12 || std::abs(s - 1.0) < 1e-12)
        throw PoleError("completed_psi: pole at s in {0,1}");
    double at = std::fabs(s.imag());
    if (at > pol_.psi_t_max + 1e-9)
        throw DomainError("completed_psi: |Im s| exceeds configured psi_t_max");
    cplx one_minus = 1.0 - s;
    cplx tot = -1.0 / s - 1.0 / one_minus;
    double qcut = (pol_.theta_cut + pol_.t_slack * at) * rtD_ / (2.0 * M_PI);
    double c = 2.0 * M_PI / rtD_;
    for (const auto& [q, r] : lat_) {
        if (q > qcut) break;
        double x = c * q;
        tot += r * (upper_gamma_scaled(s, x) + upper_gamma_scaled(one_minus, x));
    }
    return tot;
}

cplx EvalContext::dirichlet_series(cplx s) const {
    cplx tot = 0;
    for (const auto& [q, r] : lat_) tot += r * std::exp(-s * std::log(q));
    return tot;
}

cplx EvalContext::epstein_psi_route(cplx s) const {
    cplx psi = completed_psi(s);
    // E = psi (2 pi/sqrt(-D))^s / Gamma(s)
    lcplx ex = lcplx(s.real(), s.imag()) * std::log(lcplx(2.0L * kPiL / rtD_)) - lg(s);
    return psi * dtoc(std::exp(ex));
}

EvalContext::TCache EvalContext::make_tcache(double t) const {
    TCache tc;
    tc.t = t;
    long need = std::max<long>(nmax_tables_,
                               static_cast<long>(0.32 * 2.0 * std::fabs(t)) + 16);
    tc.phase.resize(need + 1);
    tc.phase[0] = 1.0;
    long double tt = t;
    for (long n = 1; n <= need; ++n) {
        long double ph = std::remainder(-tt * std::log(static_cast<long double>(n)), 2.0L * kPiL);
        tc.phase[n] = cplx(std::cos(static_cast<double>(ph)), std::sin(static_cast<double>(ph)));
    }
    return tc;
}

cplx EvalContext::epstein_bessel_route(cplx s, const TCache* tc, bool fast) const {
    double t = s.imag(); // >= 0 here
    int Nmax = static_cast<int>(bessel_n_max(t));
    if (Nmax > nmax_tables_)
        throw DomainError("epstein: |Im s| exceeds configured t_max");

    cplx z2s = 2.0 * s, z2s1 = 2.0 * s - 1.0;
    cplx zeta1, zeta2;
    if (tc) {
        zeta1 = zeta_cached(z2s, *tc);
        zeta2 = zeta_cached(z2s1, *tc);
    } else {
        zeta1 = riemann_zeta(z2s);
        zeta2 = riemann_zeta(z2s1);
    }
    lcplx sl(s.real(), s.imag());
    lcplx lgs = lg(s);
    double ly0 = std::log(y0_);
    cplx term1 = 2.0 * zeta1;
    cplx term2 = 2.0 * std::sqrt(M_PI) *
                 dtoc(std::exp(lg(s - 0.5) - lgs + (1.0L - 2.0L * sl) * static_cast<long double>(ly0))) *
                 zeta2;
    // prefactor 8 pi^s/(Gamma(s) y0^{s-1/2}) e^{-pi t/2}
    lcplx lpref = sl * std::log(lcplx(kPiL)) + std::log(8.0L) - lgs -
                  (sl - 0.5L) * static_cast<long double>(ly0) - kPiL * t / 2.0L;
    cplx pref = dtoc(std::exp(lpref));

    cplx nu(s.real() - 0.5, t);
    // d^{2s-1} for all d <= Nmax
    std::vector<cplx> dpow(Nmax + 1);
    double e2s1 = 2.0 * s.real() - 1.0;
    for (int d = 1; d <= Nmax; ++d) {
        double mag = std::exp(e2s1 * ln_[d]);
        if (tc) {
            cplx p = std::conj(tc->phase[d]); // d^{+it}
            dpow[d] = mag * (p * p);
        } else {
            double ph = std::remainder(2.0 * t * ln_[d], 2.0 * M_PI);
            dpow[d] = mag * cplx(std::cos(ph), std::sin(ph));
        }
    }
    long long per = 2 * form_.a;
    double c2py0 = 2.0 * M_PI * y0_;
    double eh = 0.5 - s.real();
    cplx tot = 0;
    for (int N = 1; N <= Nmax; ++N) {
        double cosv = cosx0_[N % per];
        if (cosv == 0.0) continue;
        cplx sig = 0;
        for (int i = div_offset_[N]; i < div_offset_[N + 1]; ++i) sig += dpow[div_flat_[i]];
        cplx kt = fast ? ktilde_fast(nu, c2py0 * N) : ktilde(nu, c2py0 * N);
        double mag = std::exp(eh * ln_[N]);
        cplx Nph;
        if (tc) Nph = tc->phase[N];
        else {
            double ph = std::remainder(t * ln_[N], 2.0 * M_PI);
            Nph = cplx(std::cos(ph), -std::sin(ph));
        }
        tot += (mag * cosv) * Nph * sig * kt;
    }
    cplx E = term1 + term2 + pref * tot;
    return E * dtoc(std::exp(-sl * std::log(lcplx(static_cast<long double>(form_.a)))));
}

cplx EvalContext::epstein(cplx s, const TCache* tc, bool fast) const {
    if (std::abs(s - 1.0) < 1e-9) throw PoleError("epstein: pole at s=1");
    if (std::abs(s) < 1e-9) throw PoleError("epstein: s=0");
    if (s.imag() < 0) {
        TCache flipped;
        const TCache* use = nullptr;
        if (tc) {
            flipped.t = -tc->t;
            flipped.phase.resize(tc->phase.size());
            for (size_t i = 0; i < tc->phase.size(); ++i) flipped.phase[i] = std::conj(tc->phase[i]);
            use = &flipped;
        }
        return std::conj(epstein(std::conj(s), use, fast));
    }
    if (s.imag() <= pol_.t_switch) return epstein_psi_route(s);
    return epstein_bessel_route(s, tc, fast);
}

cplx EvalContext::epstein(cplx s) const { return epstein(s, nullptr, false); }

cplx LogVector::reconstruct() const {
    // sum_j c_j L_j = exp(log c_J L_J) (1 + sum_{j<J} exp(u_j + i v_j))
    cplx last = std::exp(log_cl[J - 1]);
    cplx tot = last;
    for (int j = 0; j + 1 < J; ++j) tot += last * std::exp(cplx(u(j), v(j)));
    return tot;
}

LSystem::LSystem(CharacterSystem sys, EvalPolicy policy) : sys_(std::move(sys)), pol_(policy) {
    int h = sys_.group.h();
    class_to_ctx_.assign(h, -1);
    // inverse classes share the lattice (b -> -b leaves the value multiset fixed)
    for (int A = 0; A < h; ++A) {
        if (class_to_ctx_[A] >= 0) continue;
        int inv = sys_.group.inverse(A);
        ctx_.push_back(std::make_unique<EvalContext>(sys_.group.classes[A], pol_));
        class_to_ctx_[A] = static_cast<int>(ctx_.size()) - 1;
        if (inv != A) class_to_ctx_[inv] = class_to_ctx_[A];
    }
}

const EvalContext& LSystem::anchor_context() const {
    return *ctx_[class_to_ctx_[sys_.anchor_class]];
}

cplx LSystem::epstein_class(int cls, cplx s) const {
    return ctx_[class_to_ctx_[cls]]->epstein(s);
}

LSystem::ClassEvals LSystem::eval_all(cplx s, const std::vector<EvalContext::TCache>* tc,
                                      bool fast) const {
    ClassEvals ev;
    ev.value.resize(ctx_.size());
    for (size_t i = 0; i < ctx_.size(); ++i)
        ev.value[i] = ctx_[i]->epstein(s, tc ? &(*tc)[i] : nullptr, fast);
    return ev;
}

std::vector<cplx> LSystem::hecke_all(cplx s, const std::vector<EvalContext::TCache>* tc,
                                     bool fast) const {
    ClassEvals ev = eval_all(s, tc, fast);
    int h = sys_.group.h();
    std::vector<cplx> L(sys_.J, 0.0);
    for (int j = 0; j < sys_.J; ++j) {
        cplx acc = 0;
        for (int A = 0; A < h; ++A) acc += sys_.chi(j, A) * ev.value[class_to_ctx_[A]];
        L[j] = acc / static_cast<double>(sys_.w_D);
    }
    return L;
}

cplx LSystem::hecke_l(cplx s, int j) const {
    if (j < 0 || j >= sys_.J) throw DomainError("hecke_l: bad character index");
    bool trivial = true;
    for (int A = 0; A < sys_.group.h(); ++A)
        if (sys_.chars[j][A].num != 0) { trivial = false; break; }
    if (trivial && std::abs(s - 1.0) < 1e-9)
        throw PoleError("hecke_l: pole at s=1 for the trivial character");
    return hecke_all(s, nullptr, false)[j];
}

LogVector LSystem::log_vector(double sigma, double t) const {
    if (!(sigma > 0.5)) throw DomainError("log_vector: sigma must exceed 1/2");
    if (t < 0) {
        LogVector v = log_vector(sigma, -t);
        for (int j = 0; j < v.J; ++j) {
            v.comp[v.J + j] = -v.comp[v.J + j];
            v.log_cl[j] = std::conj(v.log_cl[j]);
        }
        v.t = t;
        return v;
    }
    int J = sys_.J;
    bool big_t = t > pol_.t_switch;
    std::vector<EvalContext::TCache> caches;
    if (big_t) {
        caches.reserve(ctx_.size());
        for (size_t i = 0; i < ctx_.size(); ++i) caches.push_back(ctx_[i]->make_tcache(t));
    }
    const auto* tcp = big_t ? &caches : nullptr;

    // principal branch at sigma0 = 3 (|log L_j| < 1 there by the Euler tail bound)
    auto Lvals = hecke_all(cplx(sigma0_, t), tcp, true);
    std::vector<cplx> cur(J);
    for (int j = 0; j < J; ++j) cur[j] = std::log(Lvals[j]);

    double sig = sigma0_;
    double step = 0.5;
    const double min_step = 1e-7;
    while (sig > sigma + 1e-15) {
        double next = std::max(sigma, sig - step);
        bool last = next <= sigma + 1e-15;
        auto Lv = hecke_all(cplx(next, t), tcp, !last);
        std::vector<cplx> cand(J);
        double worst = 0;
        for (int j = 0; j < J; ++j) {
            cplx lg0 = std::log(Lv[j]);
            double k = std::round((cur[j].imag() - lg0.imag()) / (2.0 * M_PI));
            cand[j] = lg0 + cplx(0.0, 2.0 * M_PI * k);
            worst = std::max(worst, std::abs(cand[j] - cur[j]));
        }
        if (worst > 1.35) {
            step *= 0.5;
            if (step < min_step)
                throw BranchTrackingFailure("log_vector: step underflow (zero on or near path)");
            continue;
        }
        cur = std::move(cand);
        sig = next;
        if (worst < 0.35) step = std::min(step * 2.0, 0.75);
    }
    // final full-accuracy values at (sigma, t)
    auto Lf = hecke_all(cplx(sigma, t), tcp, false);
    for (int j = 0; j < J; ++j) {
        cplx lg0 = std::log(Lf[j]);
        double k = std::round((cur[j].imag() - lg0.imag()) / (2.0 * M_PI));
        cur[j] = lg0 + cplx(0.0, 2.0 * M_PI * k);
    }

    LogVector out;
    out.J = J;
    out.sigma = sigma;
    out.t = t;
    out.comp.resize(2 * J);
    out.log_cl.resize(J);
    for (int j = 0; j < J; ++j) {
        double cj = sys_.coeffs[j];
        out.log_cl[j] = cur[j] + cplx(std::log(std::fabs(cj)), cj < 0 ? M_PI : 0.0);
    }
    for (int j = 0; j + 1 < J; ++j) {
        out.comp[j] = out.log_cl[j].real() - out.log_cl[J - 1].real();
        out.comp[J + j] = out.log_cl[j].imag() - out.log_cl[J - 1].imag();
    }
    out.comp[J - 1] = out.log_cl[J - 1].real();
    out.comp[2 * J - 1] = out.log_cl[J - 1].imag();
    return out;
}

} // namespace epz

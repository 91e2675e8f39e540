#include "epzeros/besselk.hpp"

#include <cmath>

#include "epzeros/errors.hpp"

namespace epz {

namespace {

#include "debye_table.inc"

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

constexpr long double kPiL = 3.14159265358979323846264338L;

lcplx lgamma_l(lcplx z) {
    lcplx acc = 0;
    while (std::abs(z) < 20.0L) {
        acc += std::log(z);
        z += 1.0L;
    }
    static const long double B[12] = {
        1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730,
        7.0L / 6, -3617.0L / 510, 43867.0L / 798, -174611.0L / 330,
        854513.0L / 138, -236364091.0L / 2730};
    lcplx s = (z - 0.5L) * std::log(z) - z + 0.91893853320467274178L;
    lcplx z2 = z * z, zp = z;
    for (int k = 1; k <= 12; ++k) {
        s += B[k - 1] / (static_cast<long double>((2 * k) * (2 * k - 1)) * zp);
        zp *= z2;
    }
    return s - acc;
}

constexpr double kGlx[16] = {
    -0.98940093499164993, -0.94457502307323258, -0.86563120238783174,
    -0.75540440835500303, -0.61787624440264375, -0.45801677765722739,
    -0.28160355077925891, -0.09501250983763744, 0.09501250983763744,
    0.28160355077925891,  0.45801677765722739,  0.61787624440264375,
    0.75540440835500303,  0.86563120238783174,  0.94457502307323258,
    0.98940093499164993};
constexpr double kGlw[16] = {
    0.02715245941175409, 0.06225352393864789, 0.09515851168249278,
    0.12462897125553387, 0.14959598881657673, 0.16915651939500254,
    0.18260341504492359, 0.18945061045506850, 0.18945061045506850,
    0.18260341504492359, 0.16915651939500254, 0.14959598881657673,
    0.12462897125553387, 0.09515851168249278, 0.06225352393864789,
    0.02715245941175409};
constexpr double kG7x[7] = {-0.94910791234275852, -0.74153118559939444,
                            -0.40584515137739717, 0.0, 0.40584515137739717,
                            0.74153118559939444,  0.94910791234275852};
constexpr double kG7w[7] = {0.12948496616886969, 0.27970539148927666,
                            0.38183005050511894, 0.41795918367346939,
                            0.38183005050511894, 0.27970539148927666,
                            0.12948496616886969};

// e^{g(w)} with g = pi t/2 - y cosh w + nu w along a segment, integrated
// adaptively; peak*tol is the absolute tolerance
struct SegIntegrator {
    cplx nu;
    double y, halfpit;

    cplx g_exp(cplx w) const {
        cplx g = -y * std::cosh(w) + nu * w;
        return std::exp(cplx(g.real() + halfpit, g.imag()));
    }
    cplx rule16(cplx a, cplx dir, double len) const {
        cplx s = 0;
        for (int i = 0; i < 16; ++i)
            s += kGlw[i] * g_exp(a + dir * (0.5 * len * (1.0 + kGlx[i])));
        return s * (0.5 * len) * dir;
    }
    cplx rule7(cplx a, cplx dir, double len) const {
        cplx s = 0;
        for (int i = 0; i < 7; ++i)
            s += kG7w[i] * g_exp(a + dir * (0.5 * len * (1.0 + kG7x[i])));
        return s * (0.5 * len) * dir;
    }
    cplx adaptive(cplx a, cplx dir, double len, double tol, int depth = 0) const {
        cplx c16 = rule16(a, dir, len);
        cplx c7 = rule7(a, dir, len);
        if (std::abs(c16 - c7) < tol || depth > 24) return c16;
        return adaptive(a, dir, 0.5 * len, 0.6 * tol, depth + 1) +
               adaptive(a + dir * (0.5 * len), dir, 0.5 * len, 0.6 * tol, depth + 1);
    }
    // segment split into panels sized by the local phase derivative
    cplx segment(cplx a, cplx b, double tol) const {
        double len = std::abs(b - a);
        if (len < 1e-14) return 0;
        cplx dir = (b - a) / len;
        double s = 0;
        cplx tot = 0;
        while (s < len) {
            cplx w0 = a + dir * s;
            double freq = std::abs(-y * std::sinh(w0) + nu);
            double panel = std::min(len - s, std::max(1e-3, 5.0 / std::max(8.0, freq)));
            tot += adaptive(w0, dir, panel, tol);
            s += panel;
        }
        return tot;
    }
};

} // namespace

cplx ktilde_series(cplx nu, double y) {
    // pi/(2 sin(pi nu)) (I_{-nu} - I_{nu}) e^{pi t/2}; exponents in long double
    double t = nu.imag();
    lcplx nul(nu.real(), nu.imag());
    long double lyh = std::log(static_cast<long double>(y) / 2.0L);
    // 2 sin(pi nu) e^{-pi t} without overflow
    long double mu = nu.real();
    lcplx a(std::sin(kPiL * mu), std::cos(kPiL * mu));
    lcplx b(std::sin(kPiL * mu), -std::cos(kPiL * mu));
    long double em = (t < 400) ? std::exp(-2.0L * kPiL * t) : 0.0L;
    lcplx sin_scaled = a + em * b; // = 2 sin(pi nu) e^{-pi t}
    cplx out = 0;
    double z = y * y / 4;
    for (int sgn : {+1, -1}) {
        lcplx nn = static_cast<long double>(sgn) * nul;
        cplx s = 1, term = 1;
        cplx nd(static_cast<double>(nn.real()), static_cast<double>(nn.imag()));
        for (int k = 1; k <= 700; ++k) {
            term *= z / (static_cast<double>(k) * (nd + static_cast<double>(k)));
            s += term;
            if (std::abs(term) < 1e-18 * std::abs(s)) break;
        }
        // exponent: nn log(y/2) - lgamma(1+nn) - pi t/2  (both big pieces in long double)
        lcplx ex = nn * lyh - lgamma_l(1.0L + nn) - kPiL * t / 2.0L;
        cplx exd(static_cast<double>(ex.real()), static_cast<double>(ex.imag()));
        out += static_cast<double>(-sgn) * std::exp(exd) * s;
    }
    lcplx front = kPiL / sin_scaled;
    return cplx(static_cast<double>(front.real()), static_cast<double>(front.imag())) * out;
}

namespace {

cplx debye_one_saddle(cplx nu, double y, int sgn) {
    lcplx nul(nu.real(), nu.imag());
    lcplx S = std::sqrt(nul * nul + static_cast<long double>(y) * y);
    if (sgn < 0) S = -S;
    lcplx p = nul / S;
    cplx pd(static_cast<double>(p.real()), static_cast<double>(p.imag()));
    cplx x = pd * pd;
    cplx Sd(static_cast<double>(S.real()), static_cast<double>(S.imag()));
    cplx tot = 0, Sk = 1;
    double prev = 1e300;
    for (int k = 0; k <= kDebyeKmax; ++k) {
        cplx ak = 0, xp = 1;
        for (int j = 0; j <= kDebyeDeg[k]; ++j) {
            ak += kDebyeA[k][j] * xp;
            xp *= x;
        }
        cplx term = ((k % 2) ? -1.0 : 1.0) * ak / Sk;
        double ta = std::abs(term);
        if (ta > 2.0 * prev) break; // divergence onset
        tot += term;
        prev = ta;
        Sk *= Sd;
        if (ta < 1e-17 * std::abs(tot)) break;
    }
    // exponent pi t/2 - S + nu log((nu+S)/y) in long double
    lcplx ex = kPiL * nu.imag() / 2.0L - S +
               nul * std::log((nul + S) / static_cast<long double>(y));
    cplx exd(static_cast<double>(ex.real()), static_cast<double>(ex.imag()));
    if (exd.real() < -745.0) return 0;
    cplx pref = std::sqrt(cplx(M_PI, 0.0) / (2.0 * Sd));
    return pref * std::exp(exd) * tot;
}

} // namespace

cplx ktilde_debye(cplx nu, double y) {
    if (y >= nu.imag()) return debye_one_saddle(nu, y, +1);
    return debye_one_saddle(nu, y, +1) + debye_one_saddle(nu, y, -1);
}

cplx ktilde_contour(cplx nu, double y) {
    double t = nu.imag(), mu = nu.real();
    SegIntegrator seg{nu, y, M_PI * t / 2};
    cplx total = 0;
    double peak, tail_start, tail_end;
    if (y < t) {
        // saddles near +-xi + i pi/2; ridge between, 45-degree descents to the axis
        double xi = std::acosh(t / y);
        cplx wm(-xi, M_PI / 2), wp(xi, M_PI / 2);
        cplx A(-xi - M_PI / 2, 0.0), B(xi + M_PI / 2, 0.0);
        peak = std::exp(mu * xi);
        double tol = 1e-15 * peak;
        total += seg.segment(A, wm, tol);
        total += seg.segment(wm, wp, tol);
        total += seg.segment(wp, B, tol);
        tail_start = B.real();
        tail_end = A.real();
    } else {
        // single saddle on the imaginary axis; Lambda-shaped path
        cplx ws = std::asinh(nu / y);
        cplx A(ws.real() - ws.imag(), 0.0), B(ws.real() + ws.imag(), 0.0);
        peak = std::abs(seg.g_exp(ws));
        if (peak == 0) peak = 1e-300;
        double tol = 1e-15 * peak;
        total += seg.segment(A, ws, tol);
        total += seg.segment(ws, B, tol);
        tail_start = B.real();
        tail_end = A.real();
    }
    // real-axis tails (monotone decay)
    double u = tail_start;
    for (int i = 0; i < 60; ++i) {
        total += seg.segment(cplx(u, 0), cplx(u + 1, 0), 1e-16 * peak);
        u += 1;
        if (std::abs(seg.g_exp(cplx(u, 0))) < 1e-18 * peak) break;
    }
    u = tail_end;
    for (int i = 0; i < 60; ++i) {
        if (std::abs(seg.g_exp(cplx(u, 0))) < 1e-18 * peak) break;
        total += seg.segment(cplx(u - 1, 0), cplx(u, 0), 1e-16 * peak);
        u -= 1;
    }
    return 0.5 * total;
}

namespace {

cplx ktilde_impl(cplx nu, double y, bool fast) {
    double t = nu.imag();
    if (!(y > 0)) throw DomainError("ktilde: y must be positive");
    if (t < 0) return std::conj(ktilde_impl(std::conj(nu), y, fast));
    double ys = (t >= 50.0) ? std::sqrt(14.0 * t) : ((t >= 8.0) ? 12.0 : 6.0);
    bool near_integer_order = (t < 0.35) &&
        std::fabs(nu.real() - std::round(nu.real())) < 0.05;
    if (y <= ys && !near_integer_order) return ktilde_series(nu, y);
    double n2 = std::abs(nu * nu + y * y);
    double rho = n2 * std::sqrt(n2) / std::norm(nu);
    if (rho >= (fast ? 12.0 : 150.0)) return ktilde_debye(nu, y);
    return ktilde_contour(nu, y);
}

} // namespace

cplx ktilde(cplx nu, double y) { return ktilde_impl(nu, y, false); }
cplx ktilde_fast(cplx nu, double y) { return ktilde_impl(nu, y, true); }

} // namespace epz

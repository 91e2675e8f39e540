#include "epzeros/zeros.hpp"

#include <algorithm>
#include <cmath>

#include "epzeros/errors.hpp"
#include "epzeros/parallel.hpp"

namespace epz {

namespace {

struct BoundaryWalk {
    // counterclockwise polyline of the rectangle boundary, parametrized by
    // arc length; E is evaluated lazily and refined until the argument steps
    // are below pi/2
    const EvalContext& ctx;
    Rectangle r;

    cplx point(double u) const {
        double w = r.sigma_hi - r.sigma_lo, h = r.t_hi - r.t_lo;
        double per = 2 * (w + h);
        u = std::fmod(u, per);
        if (u < 0) u += per;
        if (u < w) return {r.sigma_lo + u, r.t_lo};
        u -= w;
        if (u < h) return {r.sigma_hi, r.t_lo + u};
        u -= h;
        if (u < w) return {r.sigma_hi - u, r.t_hi};
        u -= w;
        return {r.sigma_lo, r.t_hi - u};
    }
};

} // namespace

ZeroScanner::ZeroScanner(const EvalContext& ctx, ZeroPolicy pol) : ctx_(ctx), pol_(pol) {}

int ZeroScanner::winding_count(const Rectangle& rect) const {
    if (!(rect.sigma_lo < rect.sigma_hi && rect.t_lo < rect.t_hi))
        throw DomainError("winding_count: empty rectangle");
    BoundaryWalk walk{ctx_, rect};
    double w = rect.sigma_hi - rect.sigma_lo, h = rect.t_hi - rect.t_lo;
    double per = 2 * (w + h);
    // initial samples: a few per unit of t plus a floor
    int n0 = std::max<int>(32, static_cast<int>(per * 3));
    struct Node {
        double u;
        cplx E;
    };
    std::vector<Node> nodes(n0 + 1);
    parallel_for(static_cast<size_t>(n0 + 1), [&](size_t i) {
        double u = per * static_cast<double>(i) / n0;
        nodes[i] = {u, ctx_.epstein(walk.point(u))};
    });
    nodes.back().u = per;
    nodes.back().E = nodes.front().E;

    double scale = 0;
    for (const auto& nd : nodes) scale = std::max(scale, std::abs(nd.E));
    double minmod = scale;

    double total = 0;
    const int max_depth = 46;
    // refine each gap until |delta arg| < pi/2
    std::vector<Node> stack;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        Node a = nodes[i], b = nodes[i + 1];
        stack.clear();
        stack.push_back(b);
        int depth = 0;
        while (!stack.empty()) {
            Node top = stack.back();
            minmod = std::min(minmod, std::abs(a.E));
            double da = std::arg(top.E / a.E);
            if (std::fabs(da) < M_PI / 2 || top.u - a.u < 1e-13 * per) {
                if (std::abs(a.E) < pol_.boundary_min_scale * scale ||
                    std::abs(top.E) < pol_.boundary_min_scale * scale)
                    throw BoundaryZero("winding_count: |E| below threshold on boundary");
                total += da;
                a = top;
                stack.pop_back();
                depth = 0;
                continue;
            }
            if (++depth > max_depth)
                throw BoundaryZero("winding_count: argument refinement exhausted");
            double um = 0.5 * (a.u + top.u);
            stack.push_back({um, ctx_.epstein(walk.point(um))});
        }
    }
    double raw = total / (2 * M_PI);
    double rounded = std::round(raw);
    if (std::fabs(raw - rounded) > 1e-6)
        throw NonIntegralWinding("winding_count: boundary variation is not integral");
    return static_cast<int>(rounded);
}

int ZeroScanner::winding_count_jittered(Rectangle rect) const {
    const double e = pol_.jitter_step;
    const double offs[5] = {0.0, +e, -e, +3 * e, -3 * e};
    for (int k = 0; k < std::min(pol_.max_jitter, 5); ++k) {
        try {
            Rectangle r = rect;
            r.t_lo += offs[k];
            r.t_hi += offs[k];
            return winding_count(r);
        } catch (const BoundaryZero&) {
            if (k + 1 >= std::min(pol_.max_jitter, 5)) throw;
        }
    }
    throw BoundaryZero("winding_count_jittered: all jitters failed");
}

namespace {

// derivative-free Muller iteration
cplx muller_refine(const EvalContext& ctx, cplx z0, double h0, double target, bool& ok) {
    cplx x0 = z0 - h0, x1 = z0 + h0, x2 = z0;
    cplx f0 = ctx.epstein(x0), f1 = ctx.epstein(x1), f2 = ctx.epstein(x2);
    ok = false;
    for (int it = 0; it < 60; ++it) {
        cplx q = (x2 - x1) / (x1 - x0);
        cplx A = q * f2 - q * (1.0 + q) * f1 + q * q * f0;
        cplx B = (2.0 * q + 1.0) * f2 - (1.0 + q) * (1.0 + q) * f1 + q * q * f0;
        cplx C = (1.0 + q) * f2;
        cplx disc = std::sqrt(B * B - 4.0 * A * C);
        cplx den = (std::abs(B + disc) > std::abs(B - disc)) ? B + disc : B - disc;
        if (std::abs(den) == 0.0) break;
        cplx x3 = x2 - (x2 - x1) * 2.0 * C / den;
        cplx f3 = ctx.epstein(x3);
        x0 = x1; f0 = f1;
        x1 = x2; f1 = f2;
        x2 = x3; f2 = f3;
        if (std::abs(f2) < target) {
            ok = true;
            return x2;
        }
        if (std::abs(x2 - x1) < 1e-15 * (1.0 + std::abs(x2))) break;
    }
    ok = std::abs(f2) < target * 10;
    return x2;
}

} // namespace

std::vector<ZeroRecord> ZeroScanner::list_zeros(const Rectangle& rect) const {
    std::vector<ZeroRecord> out;
    int total = winding_count_jittered(rect);
    if (total == 0) return out;
    struct Cell {
        Rectangle r;
        int w;
    };
    std::vector<Cell> work{{rect, total}};
    while (!work.empty()) {
        Cell cell = work.back();
        work.pop_back();
        double wspan = cell.r.sigma_hi - cell.r.sigma_lo;
        double hspan = cell.r.t_hi - cell.r.t_lo;
        if (cell.w == 1 && wspan < 0.02 && hspan < 0.02) {
            cplx center(0.5 * (cell.r.sigma_lo + cell.r.sigma_hi),
                        0.5 * (cell.r.t_lo + cell.r.t_hi));
            bool ok = false;
            cplx z = muller_refine(ctx_, center, 0.25 * std::max(wspan, hspan),
                                   pol_.refine_target, ok);
            ZeroRecord rec;
            rec.beta = z.real();
            rec.gamma = z.imag();
            rec.residual = std::abs(ctx_.epstein(z));
            rec.cell = cell.r;
            rec.converged = ok;
            // re-verify: unit winding of a 1e-4 square around the zero
            if (ok) {
                Rectangle box{z.real() - 1e-4, z.real() + 1e-4, z.imag() - 1e-4,
                              z.imag() + 1e-4};
                try {
                    rec.verified = (winding_count_jittered(box) == 1);
                } catch (const Error&) {
                    rec.verified = false;
                }
            }
            out.push_back(rec);
            continue;
        }
        // split the longer side; jitter the cut if a zero sits on it
        bool vertical_cut = wspan > hspan;
        int w1 = -1;
        Rectangle r1 = cell.r, r2 = cell.r;
        for (int k = 0; k < 5 && w1 < 0; ++k) {
            double off = (k == 0) ? 0.0 : ((k % 2) ? +1.0 : -1.0) * (k + 1) / 2 * 1e-5;
            r1 = cell.r;
            r2 = cell.r;
            if (vertical_cut) {
                double cut = 0.5 * (cell.r.sigma_lo + cell.r.sigma_hi) + off;
                r1.sigma_hi = cut;
                r2.sigma_lo = cut;
            } else {
                double cut = 0.5 * (cell.r.t_lo + cell.r.t_hi) + off;
                r1.t_hi = cut;
                r2.t_lo = cut;
            }
            try {
                w1 = winding_count_jittered(r1);
            } catch (const BoundaryZero&) {
                w1 = -1;
            }
        }
        if (w1 < 0) throw BoundaryZero("list_zeros: could not place a zero-free cut");
        int w2 = cell.w - w1;
        if (w1 > 0) work.push_back({r1, w1});
        if (w2 > 0) work.push_back({r2, w2});
    }
    std::sort(out.begin(), out.end(),
              [](const ZeroRecord& a, const ZeroRecord& b) { return a.gamma < b.gamma; });
    return out;
}

int ZeroScanner::count_strip(double sigma1, double sigma2, double T) const {
    return count_window(sigma1, sigma2, T, 2 * T);
}

int ZeroScanner::count_window(double sigma1, double sigma2, double t1, double t2) const {
    if (!(0.5 < sigma1 && sigma1 < sigma2)) throw DomainError("count_strip: need 1/2 < s1 < s2");
    return winding_count_jittered({sigma1, sigma2, t1, t2});
}

namespace {

struct QuadState {
    double err_bound = 0;
    bool unresolved = false;
};

// adaptive Simpson on log|E(sigma+it)|; singular subintervals are bounded by
// the integrable-log model and recorded
double adaptive_log_quad(const EvalContext& ctx, double sigma, double a, double b, double fa,
                         double fm, double fb, double tol, int depth, QuadState& st) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = std::log(std::abs(ctx.epstein(cplx(sigma, lm))));
    double frm = std::log(std::abs(ctx.epstein(cplx(sigma, rm))));
    double s1 = (b - a) / 6.0 * (fa + 4 * fm + fb);
    double s2 = (b - a) / 12.0 * (fa + 4 * flm + 2 * fm + 4 * frm + fb);
    if (std::fabs(s1 - s2) < 15 * tol || (b - a) < 1e-8) {
        if ((b - a) < 1e-8) {
            // unresolved log singularity: bound the cell by |len (log len - 1)| + data
            double worst = std::min({fa, fm, fb, flm, frm});
            double bound = (b - a) * (std::fabs(worst) + std::fabs(std::log(b - a)) + 2);
            st.err_bound += bound;
            if (bound > 50 * tol) st.unresolved = true;
        } else {
            st.err_bound += std::fabs(s1 - s2) / 15.0;
        }
        return s2;
    }
    if (depth >= 40) {
        st.err_bound += std::fabs(s1 - s2);
        st.unresolved = true;
        return s2;
    }
    return adaptive_log_quad(ctx, sigma, a, m, fa, flm, fm, tol / 2, depth + 1, st) +
           adaptive_log_quad(ctx, sigma, m, b, fm, frm, fb, tol / 2, depth + 1, st);
}

} // namespace

ZeroScanner::JensenResult ZeroScanner::jensen_window(double sigma, double t1, double t2,
                                                     double abs_tol) const {
    if (!(sigma > 0.5)) throw DomainError("jensen_integral: sigma must exceed 1/2");
    double len = t2 - t1;
    int npanel = std::max(8, static_cast<int>(len / 2));
    std::vector<double> panel_vals(npanel);
    std::vector<QuadState> states(npanel);
    // presample panel endpoints and midpoints in parallel
    std::vector<double> fs(2 * npanel + 1);
    parallel_for(static_cast<size_t>(2 * npanel + 1), [&](size_t i) {
        double t = t1 + len * static_cast<double>(i) / (2 * npanel);
        fs[i] = std::log(std::abs(ctx_.epstein(cplx(sigma, t))));
    });
    parallel_for(static_cast<size_t>(npanel), [&](size_t i) {
        double a = t1 + len * static_cast<double>(i) / npanel;
        double b = t1 + len * static_cast<double>(i + 1) / npanel;
        panel_vals[i] = adaptive_log_quad(ctx_, sigma, a, b, fs[2 * i], fs[2 * i + 1],
                                          fs[2 * i + 2], abs_tol * (b - a) / len, 0,
                                          states[i]);
    });
    JensenResult r;
    r.value = pairwise_sum(panel_vals) / len;
    for (const auto& st : states) {
        r.err_bound += st.err_bound / len;
        r.unresolved = r.unresolved || st.unresolved;
    }
    return r;
}

ZeroScanner::JensenResult ZeroScanner::jensen_integral(double sigma, double T,
                                                       double abs_tol) const {
    return jensen_window(sigma, T, 2 * T, abs_tol);
}

double ZeroScanner::arg_variation_horizontal(double s_from, double s_to, double t) const {
    double lo = std::min(s_from, s_to), hi = std::max(s_from, s_to);
    int n0 = std::max(16, static_cast<int>((hi - lo) * 24));
    std::vector<std::pair<double, cplx>> nodes(n0 + 1);
    for (int i = 0; i <= n0; ++i) {
        double s = lo + (hi - lo) * i / n0;
        nodes[i] = {s, ctx_.epstein(cplx(s, t))};
    }
    double total = 0;
    for (int i = 0; i + 1 <= n0; ++i) {
        std::pair<double, cplx> a = nodes[i], b = nodes[i + 1];
        // bisect until steps are small
        std::vector<std::pair<double, cplx>> stack{b};
        int depth = 0;
        while (!stack.empty()) {
            auto top = stack.back();
            double da = std::arg(top.second / a.second);
            if (std::fabs(da) < M_PI / 2 || depth > 40) {
                total += da;
                a = top;
                stack.pop_back();
                depth = 0;
                continue;
            }
            ++depth;
            double sm = 0.5 * (a.first + top.first);
            stack.push_back({sm, ctx_.epstein(cplx(sm, t))});
        }
    }
    return (s_to >= s_from) ? total : -total;
}

DensityPrediction predicted_density(double sigma1, double sigma2, const ModelConfig& cfg,
                                    const CharacterSystem& sys, const EulerTable& table) {
    if (!(0.5 < sigma1 && sigma1 < sigma2))
        throw DomainError("predicted_density: need 1/2 < sigma1 < sigma2");
    DensityPrediction d;
    d.m1 = estimate_M_prime(sigma1, cfg, sys, table);
    d.m2 = estimate_M_prime(sigma2, cfg, sys, table);
    d.c = -(d.m1.pathwise.mean - d.m2.pathwise.mean) / (2.0 * M_PI);
    d.std_error = std::sqrt(d.m1.pathwise.std_error * d.m1.pathwise.std_error +
                            d.m2.pathwise.std_error * d.m2.pathwise.std_error) /
                  (2.0 * M_PI);
    if (d.c < -3.0 * d.std_error)
        throw NegativeDensity("predicted_density: negative density beyond tolerance");
    return d;
}

} // namespace epz

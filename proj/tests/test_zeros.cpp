#include <doctest.h>

#include <cmath>

#include "epzeros/zeros.hpp"

using namespace epz;

TEST_CASE("winding: zero-free rectangles, additivity, conjugation") {
    EvalContext ctx4(BinaryQuadraticForm{1, 0, 1});
    ZeroScanner sc(ctx4);
    // h=1 control at modest height (full-strip control is an acceptance case)
    Rectangle r{0.6, 0.95, 10.0, 50.0};
    CHECK(sc.winding_count_jittered(r) == 0);
    // fine-grid argument scan oracle: dense fixed sampling of the boundary
    {
        double total = 0;
        auto at = [&](double sig, double t) { return ctx4.epstein(cplx(sig, t)); };
        std::vector<cplx> pts;
        int N = 1200;
        for (int i = 0; i < N; ++i) pts.push_back(at(0.6 + 0.35 * i / N, 10.0));
        for (int i = 0; i < N; ++i) pts.push_back(at(0.95, 10.0 + 40.0 * i / N));
        for (int i = 0; i < N; ++i) pts.push_back(at(0.95 - 0.35 * i / N, 50.0));
        for (int i = 0; i < N; ++i) pts.push_back(at(0.6, 50.0 - 40.0 * i / N));
        pts.push_back(pts[0]);
        for (size_t i = 0; i + 1 < pts.size(); ++i) total += std::arg(pts[i + 1] / pts[i]);
        CHECK(std::fabs(total) < 1e-6);
    }
    // additivity under a vertical cut
    EvalContext ctx39(BinaryQuadraticForm{1, 1, 10});
    ZeroScanner sc39(ctx39);
    Rectangle big{0.55, 1.1, 40.0, 80.0};
    int whole = sc39.winding_count_jittered(big);
    Rectangle left = big, right = big;
    left.sigma_hi = 0.8;
    right.sigma_lo = 0.8;
    CHECK(whole == sc39.winding_count_jittered(left) + sc39.winding_count_jittered(right));
    // conjugation: mirrored window has the same count
    Rectangle mirr{big.sigma_lo, big.sigma_hi, -big.t_hi, -big.t_lo};
    CHECK(sc39.winding_count_jittered(mirr) == whole);
}

TEST_CASE("list_zeros finds and verifies zeros; count matches winding") {
    EvalContext ctx(BinaryQuadraticForm{1, 1, 10});
    ZeroScanner sc(ctx);
    Rectangle r{0.55, 1.15, 40.0, 90.0};
    int w = sc.winding_count_jittered(r);
    auto zs = sc.list_zeros(r);
    CHECK(static_cast<int>(zs.size()) == w);
    for (const auto& z : zs) {
        CHECK(z.residual < 1e-10);
        CHECK(z.verified);
        CHECK(z.beta > r.sigma_lo);
        CHECK(z.beta < r.sigma_hi);
        CHECK(z.gamma > r.t_lo);
        CHECK(z.gamma < r.t_hi);
    }
    // empty rectangle
    Rectangle empty{2.2, 2.6, 12.0, 14.0};
    CHECK(sc.list_zeros(empty).empty());
    // zeros pair under conjugation
    Rectangle rm{r.sigma_lo, r.sigma_hi, -r.t_hi, -r.t_lo};
    auto zm = sc.list_zeros(rm);
    CHECK(zm.size() == zs.size());
}

TEST_CASE("jensen integral: sigma=3 control against the direct mean") {
    EvalContext ctx(BinaryQuadraticForm{1, 0, 1});
    ZeroScanner sc(ctx);
    auto res = sc.jensen_window(3.0, 50.0, 80.0, 1e-7);
    // direct high-node quadrature oracle (composite Simpson, 3000 nodes)
    int N = 3000;
    double acc = 0;
    for (int i = 0; i <= N; ++i) {
        double t = 50.0 + 30.0 * i / N;
        double w = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * std::log(std::abs(ctx.epstein(cplx(3.0, t))));
    }
    acc *= 30.0 / (3.0 * N) / 30.0;
    CHECK(res.value == doctest::Approx(acc).epsilon(1e-6));
    CHECK(!res.unresolved);
    // overlapping-window consistency
    auto a = sc.jensen_window(0.8, 30.0, 60.0, 1e-4);
    auto b = sc.jensen_window(0.8, 30.0, 61.0, 1e-4);
    CHECK(std::fabs(a.value * 30.0 - b.value * 31.0) < 1.0 + 30.0 * (a.err_bound + b.err_bound));
}

TEST_CASE("predicted density: J=1 vanishes; sigma1<sigma2 validated") {
    ClassGroup g4 = enumerate_classes(-4);
    CharacterSystem s4 = character_system(g4, 0);
    EulerTable t4 = build_euler_table(s4, 1000, 1e30);
    ModelConfig cfg{1000, 3, 2000, 5, {}};
    DensityPrediction d = predicted_density(0.6, 0.9, cfg, s4, t4);
    CHECK(std::fabs(d.c) < 3.0 * d.std_error + 1e-9);
    CHECK_THROWS_AS(predicted_density(0.9, 0.6, cfg, s4, t4), DomainError);
    // both endpoints large: c ~ 0 (tails make M' vanish)
    ClassGroup g = enumerate_classes(-23);
    CharacterSystem sys = character_system(g, 0);
    EulerTable table = build_euler_table(sys, 1000, 1e30);
    DensityPrediction far = predicted_density(2.0, 2.5, cfg, sys, table);
    CHECK(std::fabs(far.c) < 3.0 * far.std_error + 1e-3);
}

#pragma once

// Zero counting and listing for E(s,Q) by the argument principle, the Jensen
// t-average of log|E|, and the predicted linear zero-density constant
// -(1/2pi)(M'(sigma1) - M'(sigma2)) from the random model.

#include <vector>

#include "epzeros/lfun.hpp"
#include "epzeros/rmodel.hpp"

namespace epz {

struct Rectangle {
    double sigma_lo = 0.6, sigma_hi = 0.9;
    double t_lo = 0, t_hi = 1;
};

struct ZeroRecord {
    double beta = 0, gamma = 0;
    double residual = 0;   // |E(beta + i gamma)|
    Rectangle cell;        // winding cell the zero was isolated in
    bool verified = false; // unit winding of a 1e-4 square around the zero
    bool converged = true;
};

struct ZeroPolicy {
    double boundary_min_scale = 1e-8; // BoundaryZero threshold relative to boundary scale
    double refine_target = 1e-10;     // Muller residual target
    int max_jitter = 5;               // deterministic jitter protocol length
    double jitter_step = 1e-6;
};

class ZeroScanner {
  public:
    explicit ZeroScanner(const EvalContext& ctx, ZeroPolicy pol = {});

    // (1/2pi) x boundary argument variation, counterclockwise
    int winding_count(const Rectangle& rect) const;

    // winding with the deterministic t-jitter protocol {0,+e,-e,+3e,-3e}
    int winding_count_jittered(Rectangle rect) const;

    std::vector<ZeroRecord> list_zeros(const Rectangle& rect) const;

    // N_E(sigma1, sigma2; T) on [sigma1,sigma2] x [T,2T]
    int count_strip(double sigma1, double sigma2, double T) const;
    int count_window(double sigma1, double sigma2, double t1, double t2) const;

    struct JensenResult {
        double value = 0;      // (1/(t2-t1)) int log|E(sigma+it)| dt
        double err_bound = 0;  // recorded quadrature error bound
        bool unresolved = false;
    };
    JensenResult jensen_integral(double sigma, double T, double abs_tol = 5e-4) const;
    JensenResult jensen_window(double sigma, double t1, double t2, double abs_tol = 5e-4) const;

    // continuous arg E along a horizontal segment (for Littlewood bookkeeping)
    double arg_variation_horizontal(double s_from, double s_to, double t) const;

    const EvalContext& ctx() const { return ctx_; }

  private:
    const EvalContext& ctx_;
    ZeroPolicy pol_;
};

struct DensityPrediction {
    double c = 0;       // zeros per unit T predicted in (sigma1, sigma2]
    double std_error = 0;
    MPrimeEstimate m1, m2;
};

DensityPrediction predicted_density(double sigma1, double sigma2, const ModelConfig& cfg,
                                    const CharacterSystem& sys, const EulerTable& table);

} // namespace epz

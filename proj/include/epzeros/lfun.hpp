#pragma once

// Numerical evaluation of E(s,Q), the completed Psi(s,Q), and the Hecke
// L-functions L_j(s), with continuous-argument tracking for the 2J-vector
// bold-L(s).
//
// Two independent evaluation routes:
//  * completed-psi: the theta-split incomplete-gamma lattice expansion,
//    exactly symmetric under s <-> 1-s.  In double precision its error in
//    E grows like e^{pi|t|/2} (the expansion cancels to the size of
//    Gamma(s)), so it is used for |Im s| <= t_switch only.
//  * bessel sum: the Fourier expansion of E in K-Bessel functions of
//    complex order (normalized by e^{pi t/2}), valid at any height.

#include <complex>
#include <memory>
#include <vector>

#include "epzeros/forms.hpp"
#include "epzeros/specfun.hpp"

namespace epz {

struct EvalPolicy {
    double theta_cut = 40.0;  // lattice cutoff: 2 pi Q/sqrt(-D) <= theta_cut + slack |t|
    double t_slack = 1.2;
    double psi_t_max = 2100.0; // completed-psi lattice coverage
    double t_max = 2.0e4;      // bessel-route table coverage
    double t_switch = 8.0;     // psi route below, bessel route above
    double target_abs_error = 1e-10;
};

// Per-form evaluation context: cached lattice values for the psi route and
// divisor/cosine tables for the bessel route. Immutable after construction.
class EvalContext {
  public:
    explicit EvalContext(const BinaryQuadraticForm& form, EvalPolicy policy = {});

    const BinaryQuadraticForm& form() const { return form_; }
    long long D() const { return D_; }
    const EvalPolicy& policy() const { return pol_; }

    // Psi(s,Q) = (sqrt(-D)/2pi)^s Gamma(s) E(s,Q), via the symmetric expansion
    cplx completed_psi(cplx s) const;

    // E(s,Q) anywhere with |Im s| <= t_max, s not in {0, 1}
    cplx epstein(cplx s) const;

    // Phase tables for repeated evaluation at fixed t (cost ~ one eval)
    struct TCache {
        double t = 0;
        std::vector<cplx> phase; // phase[n] = n^{-it}, n <= limit
    };
    TCache make_tcache(double t) const;

    // full eval with optional shared cache; fast=true relaxes to ~1e-6
    cplx epstein(cplx s, const TCache* tc, bool fast) const;

    // direct Dirichlet series sum_q r(q) q^{-s} over cached lattice values
    // (only meaningful for Re s >= ~1.5; used as an oracle route)
    cplx dirichlet_series(cplx s) const;

    int lattice_terms() const { return static_cast<int>(lat_.size()); }
    double bessel_n_max(double t) const;

  private:
    cplx epstein_psi_route(cplx s) const;
    cplx epstein_bessel_route(cplx s, const TCache* tc, bool fast) const;

    BinaryQuadraticForm form_;
    EvalPolicy pol_;
    long long D_ = -4;
    double rtD_ = 2;           // sqrt(-D)
    double y0_ = 1, x0_ = 0;   // z = x0 + i y0 = (b + i sqrt(-D))/(2a)
    std::vector<std::pair<double, double>> lat_; // (q, multiplicity)
    int nmax_tables_ = 0;
    std::vector<double> cosx0_;     // cos(2 pi r x0) for r = N mod (2a)
    std::vector<double> ln_;        // ln n, 1-based
    std::vector<int> div_offset_;   // flattened divisor lists
    std::vector<int> div_flat_;
};

// the 2J real components of bold-L(sigma+it) plus the per-j continuous logs
struct LogVector {
    int J = 1;
    std::vector<double> comp;       // [u_1..u_J, v_1..v_J] as in the paper
    std::vector<cplx> log_cl;       // continuous log of c_j L_j, per j
    double sigma = 0, t = 0;

    double u(int j) const { return comp[j]; }          // 0-based, j<J
    double v(int j) const { return comp[J + j]; }
    // reassemble sum_j c_j L_j from the components
    cplx reconstruct() const;
};

// Evaluation system for one character system: per-class Epstein contexts
// (inverse classes share a context since their lattices coincide).
class LSystem {
  public:
    LSystem(CharacterSystem sys, EvalPolicy policy = {});

    const CharacterSystem& sys() const { return sys_; }
    const EvalPolicy& policy() const { return pol_; }

    // E(s, Q_A) for class A (cached contexts; thread-safe const)
    cplx epstein_class(int cls, cplx s) const;
    // E(s, anchor class) = E(s, Q) for the input form
    cplx epstein_anchor(cplx s) const { return epstein_class(sys_.anchor_class, s); }
    const EvalContext& anchor_context() const;

    // L(s, chi_j) = (1/w_D) sum_A chi_j(A) E(s, Q_A)
    cplx hecke_l(cplx s, int j) const;

    // continuous-branch vector at sigma+it, tracked from sigma0=3
    LogVector log_vector(double sigma, double t) const;

    int J() const { return sys_.J; }

  private:
    struct ClassEvals {
        std::vector<cplx> value; // E per distinct context
    };
    ClassEvals eval_all(cplx s, const std::vector<EvalContext::TCache>* tc, bool fast) const;
    std::vector<cplx> hecke_all(cplx s, const std::vector<EvalContext::TCache>* tc,
                                bool fast) const;

    CharacterSystem sys_;
    EvalPolicy pol_;
    std::vector<std::unique_ptr<EvalContext>> ctx_;  // distinct contexts
    std::vector<int> class_to_ctx_;
    double sigma0_ = 3.0;
};

} // namespace epz

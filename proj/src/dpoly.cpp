#include "epzeros/dpoly.hpp"

#include <algorithm>
#include <cmath>

#include "epzeros/errors.hpp"
#include "epzeros/parallel.hpp"
#include "epzeros/rng.hpp"

namespace epz {

DirichletPolynomial build_poly(const EulerTable& table, int j, double Y,
                               DirichletPolynomial::Kind kind) {
    if (Y > table.Y_max + 1e-9) throw CutoffExceeded("build_poly: Y exceeds table Y_max");
    if (j < 0 || j >= table.J()) throw DomainError("build_poly: bad character index");
    int J = table.J();
    DirichletPolynomial P;
    P.kind = kind;
    P.j = j;
    P.Y = Y;
    if (kind == DirichletPolynomial::Ratio) {
        double cj = table.system.coeffs[j], cJ = table.system.coeffs[J - 1];
        if (j == J - 1) {
            P.constant = cplx(std::log(std::fabs(cJ)), cJ < 0 ? M_PI : 0.0);
        } else {
            double r = cj / cJ;
            P.constant = cplx(std::log(std::fabs(r)), r < 0 ? M_PI : 0.0);
        }
    }
    for (const auto& pd : table.primes) {
        double pn = 1;
        for (int n = 1; n <= pd.n_max; ++n) {
            pn *= pd.p;
            if (pn > Y) break;
            double coef;
            if (kind == DirichletPolynomial::Plain || j == J - 1)
                coef = table.coeff(pd, j, n);
            else
                coef = table.coeff(pd, j, n) - table.coeff(pd, J - 1, n);
            if (kind == DirichletPolynomial::Ratio && j == J - 1)
                coef = table.coeff(pd, J - 1, n);
            if (coef != 0.0) P.terms.emplace_back(pn, coef);
        }
    }
    std::sort(P.terms.begin(), P.terms.end());
    P.log_pn.resize(P.terms.size());
    for (size_t i = 0; i < P.terms.size(); ++i) P.log_pn[i] = std::log(P.terms[i].first);
    return P;
}

cplx eval_poly(const DirichletPolynomial& P, cplx s) {
    cplx tot = P.constant;
    for (size_t i = 0; i < P.terms.size(); ++i) {
        // coeff * p^{-n s}
        tot += P.terms[i].second * std::exp(-s * P.log_pn[i]);
    }
    return tot;
}

std::vector<cplx> eval_poly_batch(const DirichletPolynomial& P, double sigma,
                                  const std::vector<double>& ts) {
    std::vector<cplx> out(ts.size());
    parallel_for(ts.size(), [&](size_t k) { out[k] = eval_poly(P, cplx(sigma, ts[k])); });
    return out;
}

double poly_tail_bound(const EulerTable& table, double Y, double sigma) {
    double tot = 0;
    for (const auto& pd : table.primes) {
        double pn = 1;
        for (int n = 1; n <= pd.n_max; ++n) {
            pn *= pd.p;
            if (pn <= Y) continue;
            tot += 2.0 * std::exp(-sigma * n * std::log(static_cast<double>(pd.p)));
        }
    }
    return tot;
}

SurveyResult approx_survey(const LSystem& lsys, const EulerTable& table, double sigma,
                           double T, long long n_samples, double Y, double tol,
                           std::uint64_t seed) {
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("approx_survey: 1/2 < sigma < 1");
    int J = lsys.J();
    std::vector<DirichletPolynomial> polys;
    for (int j = 0; j < J; ++j) polys.push_back(build_poly(table, j, Y, DirichletPolynomial::Plain));
    std::vector<int> flag(n_samples, 0); // 0 ok, 1 exceed, 2 skipped
    parallel_for(static_cast<size_t>(n_samples), [&](size_t i) {
        double t = T * (1.0 + u01(seed, 77, i));
        for (int attempt = 0;; ++attempt) {
            try {
                LogVector lv = lsys.log_vector(sigma, t);
                double worst = 0;
                for (int j = 0; j < J; ++j) {
                    // tracked log L_j = log(c_j L_j) minus the c_j constant
                    double cj = lsys.sys().coeffs[j];
                    cplx logL = lv.log_cl[j] - cplx(std::log(std::fabs(cj)), cj < 0 ? M_PI : 0.0);
                    cplx R = eval_poly(polys[j], cplx(sigma, t));
                    worst = std::max(worst, std::abs(logL - R));
                }
                flag[i] = (worst > tol) ? 1 : 0;
                return;
            } catch (const BranchTrackingFailure&) {
                if (attempt >= 4) {
                    flag[i] = 2;
                    return;
                }
                t += 1e-4 * (attempt + 1);
            }
        }
    });
    SurveyResult r;
    r.sigma = sigma;
    r.T = T;
    r.Y = Y;
    r.tol = tol;
    r.n = n_samples;
    for (int f : flag) {
        if (f == 1) ++r.exceed;
        if (f == 2) ++r.skipped;
    }
    return r;
}

} // namespace epz

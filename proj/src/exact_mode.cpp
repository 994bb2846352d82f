#include "tswave/exact_mode.hpp"

#include <cmath>

namespace tswave {

ExactMode assembleExactMode(cplx c, const FlowParams& prm, const ShearProfile& p, const HalfLineGrid& g,
                            double tol, int maxIter) {
    ApproxMode app = buildApprox(prm, p, c, g);
    ErrorTerms et = errorTerms(app, p, prm, g);
    ResolventSolver rs(prm, p, c, g);
    const size_t N = g.size();
    Rows3 La = rs.applyL(app.bundle);
    CVec q0 = La[0], fu(N), fv(N);
    CVec d1(N), d2(N);
    for (size_t i = 0; i < N; ++i) {
        d1[i] = La[1][i] - et.EuSm[i];
        d2[i] = La[2][i] - et.EvSm[i] - et.EvRe[i];
        fu[i] = La[1][i];
        fv[i] = La[2][i] - et.EvRe[i];
    }
    ExactMode e;
    e.c = c;
    ModeBundle terms(N);
    terms.u = et.EuSm;
    for (size_t i = 0; i < N; ++i) terms.v[i] = et.EvSm[i] + et.EvRe[i];
    ModeBundle def(N);
    def.rho = q0;
    def.u = d1;
    def.v = d2;
    e.defect = rs.l2(def) / rs.l2(terms);

    ResolventSolution sm = rs.iterate(fu, fv, Branch::L2, tol, maxIter, &q0);
    ResolventSolution re = rs.iterate(CVec(N, 0.0), et.EvRe, Branch::H1, tol, maxIter);
    e.sm = sm.mode;
    e.re = re.mode;
    e.logSm = sm.log;
    e.logRe = re.log;
    e.mode = axpy(axpy(app.bundle, -1.0, sm.mode), -1.0, re.mode);
    e.F = e.mode.u[0];
    e.FApp = app.bundle.u[0];
    e.uSm0 = sm.mode.u[0];
    e.uRe0 = re.mode.u[0];
    const CVec zero(N, 0.0);
    const double nx = rs.l2(e.mode);
    e.residual = rs.residual(e.mode, zero, zero, zero) / nx;
    e.residualFull = rs.residual(e.mode, zero, zero, zero, true) / nx;
    e.normEvReH1w = et.normEvReH1w.value;
    e.normSmL2 = et.normSmL2.value;
    return e;
}

} // namespace tswave

#include "tswave/fast_mode.hpp"
#include "tswave/airy.hpp"

#include <cmath>

namespace tswave {

FastMode buildFastMode(const FlowParams& prm, const SublayerScales& sc, const HalfLineGrid& grid) {
    return buildFastMode(prm, sc, grid.nodes());
}

FastMode buildFastMode(const FlowParams& prm, const SublayerScales& sc, const RVec& Y) {
    const size_t N = Y.size();
    const double al = prm.alpha();
    const cplx d = sc.delta;
    FastMode f;
    f.Y = Y;
    f.z0 = sc.z0;
    f.delta = d;
    f.alpha = al;
    f.s.assign(N, 0.0);
    f.U0.assign(N, 0.0);
    f.V0.assign(N, 0.0);
    f.bundle = ModeBundle(N);
    auto& D = f.deriv;
    for (CVec* v : {&D.rho1, &D.rho2, &D.u1, &D.u2, &D.v1, &D.v2}) v->assign(N, 0.0);

    const ScaledAiry a0 = airyScaled(sc.z0);
    if (std::abs(a0.ai2) < 1e-300) throw NumericalError("Ai(2, z0) underflows");
    f.ratio = a0.ai1 / a0.ai2;
    const cplx inv0 = 1.0 / a0.ai2;
    const cplx iad = kI * al * d;
    f.cutoff = N;
    const double yTurn = std::abs(sc.z0 * d);
    for (size_t i = 0; i < N; ++i) {
        const cplx s = Y[i] / d + sc.z0;
        f.s[i] = s;
        const ScaledAiry a = airyScaled(s);
        const double ls = a.logScale - a0.logScale;
        if (ls < -700.0) {
            if (Y[i] > yTurn) {
                f.cutoff = i;
                for (size_t j = i; j < N; ++j) f.s[j] = Y[j] / d + sc.z0;
                break;
            }
            continue;
        }
        const cplx k = std::exp(ls) * inv0;
        const cplx Ai = a.ai * k, Aip = a.aiPrime * k, A1 = a.ai1 * k, A2 = a.ai2 * k;
        f.U0[i] = -A1;
        f.V0[i] = A2;
        f.bundle.u[i] = -A1;
        f.bundle.v[i] = iad * A2;
        D.u1[i] = -Ai / d;
        D.u2[i] = -Aip / (d * d);
        D.v1[i] = kI * al * A1;
        D.v2[i] = kI * al * Ai / d;
    }
    f.u0 = -f.ratio;
    f.v0 = iad;
    return f;
}

CVec fastOdeResidual(cplx z0, const CVec& z) {
    const ScaledAiry a0 = airyScaled(z0);
    CVec r(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
        const ScaledAiry a = airyScaled(z[i] + z0);
        const cplx k = std::exp(a.logScale - a0.logScale) / a0.ai2;
        const cplx U0 = -a.ai1 * k, V0 = a.ai2 * k, U0zz = -a.aiPrime * k;
        r[i] = U0zz - (z[i] + z0) * U0 - V0;
    }
    return r;
}

DecayFit fastDecayRate(const FastMode& f, double n, int k, double floor) {
    const CVec& g = k == 0 ? f.bundle.u : (k == 1 ? f.deriv.u1 : f.deriv.u2);
    const double n3 = std::cbrt(n);
    // Fit beyond the turning point of the Airy argument, where the decay is monotone.
    const double y0 = std::abs(f.z0 * f.delta);
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int cnt = 0;
    for (size_t i = 0; i < f.Y.size(); ++i) {
        double a = std::abs(g[i]);
        if (f.Y[i] < y0 || !(a > floor)) continue;
        double x = n3 * f.Y[i], y = std::log(a);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
        ++cnt;
    }
    DecayFit r;
    if (cnt < 3) return r;
    double vx = cnt * sxx - sx * sx, vy = cnt * syy - sy * sy, cxy = cnt * sxy - sx * sy;
    r.rate = -cxy / vx;
    r.r2 = vy > 0 ? cxy * cxy / (vx * vy) : 1.0;
    return r;
}

} // namespace tswave

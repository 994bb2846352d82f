#include "tswave/approx_mode.hpp"
#include "tswave/airy.hpp"

#include <cmath>
#include <limits>

namespace tswave {

ApproxMode assembleApprox(const SlowMode& slow, const FastMode& fast, const SublayerScales& sc) {
    if (slow.Y != fast.Y) throw DomainError("slow and fast modes live on different grids");
    ApproxMode a;
    a.Y = slow.Y;
    a.c = slow.c;
    a.eta = slow.Phi0 / sc.delta;
    a.bundle = axpy(slow.fluid, a.eta, fast.bundle);
    a.deriv = axpy(slow.deriv, a.eta, fast.deriv);
    a.slow = slow;
    a.fast = fast;
    return a;
}

ApproxMode buildApprox(const FlowParams& prm, const ShearProfile& p, cplx c, const HalfLineGrid& grid, double tol) {
    SublayerScales sc = scales(prm, c);
    SlowMode s = buildSlowMode(prm, p, c, grid, tol);
    FastMode f = buildFastMode(prm, sc, grid);
    return assembleApprox(s, f, sc);
}

cplx FApp(cplx c, const FlowParams& prm, const ShearProfile& p, double tol) {
    SublayerScales sc = scales(prm, c);
    SlowBoundary b = slowBoundary(prm, p, c, tol);
    return b.dPhi0 + c * b.rho0 - b.Phi0 / sc.delta * airyRatio(sc.z0);
}

namespace {

// Squared norm on the grid plus a tail from the decay of the last tenth of the samples.
NormValue squaredNorm(const HalfLineGrid& g, const RVec& sq, const RVec& w, NormKind kind) {
    NormValue r;
    r.kind = kind;
    RVec prod(sq.size());
    for (size_t i = 0; i < sq.size(); ++i) prod[i] = sq[i] * w[i];
    double body = g.integrate(prod);
    const size_t N = sq.size();
    const double Ym = g.ymax();
    size_t j = static_cast<size_t>(g.nodesBelow(0.9 * Ym));
    j = std::min(j, N - 2);
    double last = prod[N - 1];
    double tail = 0;
    if (last > 0) {
        double rate = prod[j] > 0 ? std::log(prod[j] / last) / (Ym - g[j]) : 0.0;
        tail = rate > 0 ? last / rate : std::numeric_limits<double>::infinity();
    }
    r.tail = tail;
    r.tailOk = tail <= 1e-3 * body || body == 0.0;
    r.value = std::sqrt(std::max(body, 0.0) + (std::isfinite(tail) ? tail : 0.0));
    return r;
}

RVec weights(const HalfLineGrid& g, NormKind kind, const ShearProfile& p) {
    RVec w(g.size(), 1.0);
    if (kind == NormKind::L2w || kind == NormKind::H1w) {
        for (size_t i = 0; i < g.size(); ++i) {
            double u2 = std::abs(p.eval(g[i], 2));
            if (!(u2 > 1e-300)) throw DomainError("weight |U''|^{-1/2} is singular on the grid");
            w[i] = 1.0 / u2;
        }
    }
    return w;
}

} // namespace

NormValue norm(const HalfLineGrid& g, const CVec& f, NormKind kind, const ShearProfile& p) {
    if (kind == NormKind::H1 || kind == NormKind::H1w) return norm(g, f, g.diff(f, 1), kind, p);
    return norm(g, f, CVec(), kind, p);
}

NormValue norm(const HalfLineGrid& g, const CVec& f, const CVec& df, NormKind kind, const ShearProfile& p) {
    if (f.size() != g.size()) throw DomainError("grid function size mismatch");
    RVec w = weights(g, kind, p);
    RVec sq(f.size());
    const bool h1 = kind == NormKind::H1 || kind == NormKind::H1w;
    if (h1 && df.size() != f.size()) throw DomainError("derivative size mismatch");
    for (size_t i = 0; i < f.size(); ++i) {
        sq[i] = std::norm(f[i]);
        if (h1) sq[i] += std::norm(df[i]);
    }
    return squaredNorm(g, sq, w, kind);
}

ErrorTerms errorTerms(const ApproxMode& a, const ShearProfile& p, const FlowParams& prm, const HalfLineGrid& g) {
    if (a.Y != g.nodes()) throw DomainError("approximate mode and grid differ");
    const size_t N = a.Y.size();
    const double se = prm.sqrtEps(), al = prm.alpha(), a2 = al * al, lam = prm.lambda;
    const cplx ia = kI * al;
    const SlowMode& s = a.slow;
    const FastMode& f = a.fast;
    const cplx eta = a.eta;
    ErrorTerms e;
    e.EvRe = rayleighResidual(s);
    e.EuSm.resize(N);
    e.EvSm.resize(N);
    for (size_t i = 0; i < N; ++i) {
        double d[3] = {p.eval(a.Y[i], 0), p.eval(a.Y[i], 1), p.eval(a.Y[i], 2)};
        const cplx us = s.fluid.u[i], vs = s.fluid.v[i], rs = s.fluid.rho[i];
        const cplx div = ia * us + s.deriv.v1[i];
        const cplx ddiv = ia * s.deriv.u1[i] + s.deriv.v2[i];
        const cplx uf = f.bundle.u[i], vf = f.bundle.v[i];
        e.EuSm[i] = se * (s.deriv.u2[i] - a2 * us) + lam * ia * se * div - se * d[2] * rs +
                    eta * (-se * a2 * uf - ia * (d[0] - a.Y[i]) * uf - vf * (d[1] - 1.0));
        e.EvSm[i] = se * (s.deriv.v2[i] - a2 * vs) + lam * se * ddiv +
                    eta * (se * (f.deriv.v2[i] - a2 * vf) - ia * (d[0] - a.c) * vf);
    }
    // d_Y of the Rayleigh residual from the grid operator.
    e.normEvReH1w = norm(g, e.EvRe, g.diff(e.EvRe, 1), NormKind::H1w, p);
    NormValue nu = norm(g, e.EuSm, NormKind::L2, p), nv = norm(g, e.EvSm, NormKind::L2, p);
    e.normSmL2 = nu;
    e.normSmL2.value = std::hypot(nu.value, nv.value);
    e.normSmL2.tail = nu.tail + nv.tail;
    e.normSmL2.tailOk = nu.tailOk && nv.tailOk;
    return e;
}

} // namespace tswave

#pragma once

#include "tswave/fast_mode.hpp"
#include "tswave/slow_mode.hpp"

namespace tswave {

// Slow mode plus eta times the fast mode, eta = Phi(0)/delta, so that v(0) = 0.
struct ApproxMode {
    RVec Y;
    cplx c, eta;
    ModeBundle bundle;
    ModeDerivatives deriv;
    SlowMode slow;
    FastMode fast;
};

ApproxMode assembleApprox(const SlowMode& slow, const FastMode& fast, const SublayerScales& sc);
ApproxMode buildApprox(const FlowParams& prm, const ShearProfile& p, cplx c, const HalfLineGrid& grid,
                       double tol = 1e-12);

// u_app(0; c) from the slow-mode boundary values and the Airy ratio at z0, without a grid.
cplx FApp(cplx c, const FlowParams& prm, const ShearProfile& p, double tol = 1e-12);

enum class NormKind { L2, H1, L2w, H1w };

struct NormValue {
    NormKind kind = NormKind::L2;
    double value = 0;
    double tail = 0;       // estimated contribution to the squared norm beyond Y_max
    bool tailOk = true;    // tail below 1e-3 of the computed squared norm
};

// Norms on [0, Y_max] with an exponential tail estimate; the weighted kinds use |U''|^{-1/2}.
NormValue norm(const HalfLineGrid& g, const CVec& f, NormKind kind, const ShearProfile& p);
NormValue norm(const HalfLineGrid& g, const CVec& f, const CVec& df, NormKind kind, const ShearProfile& p);

struct ErrorTerms {
    CVec EvRe;        // Rayleigh residual of the slow mode
    CVec EuSm, EvSm;  // viscous remainders of the slow and fast modes
    NormValue normEvReH1w;
    NormValue normSmL2;
};

ErrorTerms errorTerms(const ApproxMode& a, const ShearProfile& p, const FlowParams& prm, const HalfLineGrid& g);

} // namespace tswave

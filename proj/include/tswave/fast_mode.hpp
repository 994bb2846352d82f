#pragma once

#include "tswave/grid.hpp"
#include "tswave/mode.hpp"
#include "tswave/params.hpp"

namespace tswave {

// Viscous wall-sublayer mode (0, U0(Y/delta), i alpha delta V0(Y/delta)) with
// U0(z) = -Ai(1, z + z0)/Ai(2, z0) and V0(z) = Ai(2, z + z0)/Ai(2, z0).
struct FastMode {
    RVec Y;
    cplx z0, delta;
    double alpha = 0;
    CVec s;              // z + z0 at each node
    CVec U0, V0;         // profile functions of the sublayer variable
    ModeBundle bundle;   // (0, u^f, v^f)
    ModeDerivatives deriv;
    cplx ratio;          // Ai(1, z0)/Ai(2, z0)
    cplx u0, v0;         // boundary traces
    size_t cutoff = 0;   // nodes at and beyond this index are below double range and set to zero
};

FastMode buildFastMode(const FlowParams& prm, const SublayerScales& sc, const HalfLineGrid& grid);
FastMode buildFastMode(const FlowParams& prm, const SublayerScales& sc, const RVec& Y);

// Residual of d_z^2 U0 - (z + z0) U0 - V0 at the given sublayer points, with d_z^2 U0 = -Ai'(z + z0)/Ai(2, z0).
CVec fastOdeResidual(cplx z0, const CVec& z);

struct DecayFit {
    double rate = 0;   // tau_1 in |f| ~ C exp(-tau_1 n^{1/3} Y)
    double r2 = 0;
};

// Least-squares decay rate of |d_Y^k u^f| (k = 0, 1, 2) over the nodes where it is above floor.
DecayFit fastDecayRate(const FastMode& f, double n, int k, double floor = 1e-250);

} // namespace tswave

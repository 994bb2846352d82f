#pragma once

#include "tswave/approx_mode.hpp"
#include "tswave/resolvent.hpp"

namespace tswave {

// Xi = Xi_app - Xi_sm - Xi_re on a fixed grid, with F(c) = u(0; c).
struct ExactMode {
    cplx c;
    ModeBundle mode, sm, re;
    IterationLog logSm, logRe;
    cplx F, FApp;
    cplx uSm0, uRe0;
    double residual = 0;       // ||L(Xi)|| / ||Xi|| over the rows where L is imposed
    double residualFull = 0;   // same over all rows
    double defect = 0;         // ||L_h(Xi_app) - error terms|| / ||error terms||: discretization defect
    double normEvReH1w = 0, normSmL2 = 0;
};

// The smallness remainder is driven by (E_u,sm, E_v,sm) plus the discretization defect of
// L_h(Xi_app), so that Xi solves the discrete operator; the regular remainder by (0, E_v,re).
ExactMode assembleExactMode(cplx c, const FlowParams& prm, const ShearProfile& p, const HalfLineGrid& g,
                            double tol = 1e-11, int maxIter = 60);

} // namespace tswave

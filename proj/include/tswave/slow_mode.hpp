#pragma once

#include "tswave/grid.hpp"
#include "tswave/mode.hpp"
#include "tswave/params.hpp"
#include "tswave/profile.hpp"

#include <array>

namespace tswave {

// The two alpha = 0 solutions of the compressible Rayleigh equation and the
// integrals entering the corrector, for one (profile, M, c) with Im c > 0.
class SlowBasis {
public:
    SlowBasis(const ShearProfile& p, double M, cplx c, double tol = 1e-12, double ymax = 60);

    cplx J(double Y) const;          // int_1^Y (U - c)^{-2}
    cplx phiPlus(double Y) const;    // U - c
    cplx phiMinus(double Y) const;   // (U - c)(J - M^2 Y)
    cplx A(double Y) const;
    cplx Ainf() const { return ainf_; }
    cplx I2(double Y) const;         // int_Y^inf phi_+ A^{-2} U'
    cplx I1(double Y) const;         // int_0^Y phi_- A^{-2} U'
    CVec I1OnGrid(const RVec& Y) const;
    cplx phiMinus0() const { return phiMinus0_; }
    cplx c() const { return c_; }
    double M() const { return M_; }
    const ShearProfile& profile() const { return *p_; }

private:
    const ShearProfile* p_;
    double M_;
    cplx c_;
    double tol_;
    cplx ainf_;
    cplx phiMinus0_;
    cplx gOne_;          // exponential kind: primitive at Y = 1
    double knotStep_ = 0.05;
    CVec knotJ_;         // general kinds: J at Y = k * knotStep_
    cplx jFromKnots(double Y) const;
    cplx i1Integrand(double X) const;
};

std::pair<cplx, cplx> phiBasis(const FlowParams& prm, const ShearProfile& p, cplx c, double Y, double tol = 1e-12);
cplx corrector(const FlowParams& prm, const ShearProfile& p, cplx c, double Y, double tol = 1e-12);

struct SlowBoundary {
    cplx Phi0, dPhi0, rho0, phiMinus0, beta;
};

// Boundary values of the slow mode without building it on a grid.
SlowBoundary slowBoundary(const FlowParams& prm, const ShearProfile& p, cplx c, double tol = 1e-12);

struct SlowMode {
    RVec Y;
    cplx c, beta;
    double beta1 = 0;
    double alpha = 0, M = 0;
    CVec phiPlusAlpha, phiMinusAlpha, phi1Alpha;
    CVec I1, I2;
    std::array<CVec, 4> Phi;   // Phi and its first three derivatives
    ModeBundle fluid;
    ModeDerivatives deriv;
    CVec A, Uc, U1;            // A(Y), U - c, U' on the grid
    RVec deficit;              // 1 - U
    CVec W, W1;                // A^{-1}[(U - c)Phi' - Phi U'] and its derivative
    cplx Phi0, dPhi0, rho0;
};

SlowMode buildSlowMode(const FlowParams& prm, const ShearProfile& p, cplx c, const HalfLineGrid& grid,
                       double tol = 1e-12);

// Residual of the compressible Rayleigh operator on the slow mode, from its closed three-term form.
CVec rayleighResidual(const SlowMode& s);
// The same residual as d_Y W - alpha^2 (U - c) Phi with W = A^{-1}[(U - c)Phi' - Phi U'].
CVec rayleighResidualDirect(const SlowMode& s);

} // namespace tswave

#pragma once

#include "tswave/types.hpp"

namespace tswave {

enum class Regime { Theorem, Experimental };

// Parameter bundle: Mach number, viscosity parameter, wavenumber law and bulk viscosity.
struct FlowParams {
    double M = 0.3;
    double eps = 1e-8;
    double K = 8;
    double theta = 0.5;
    double lambda = 0;
    Regime regime = Regime::Theorem;
    double expBeta = 0.1;   // experimental regime: alpha = expC * eps^expBeta
    double expC = 1.0;

    double alpha() const;
    double sqrtEps() const;
    double n() const;                 // alpha / sqrt(eps)
    cplx delta() const;               // e^{-i pi/6} n^{-1/3}
    double beta1() const;             // (1/2)(1 - M^2)^{1/2} alpha
    void check() const;
};

struct SublayerScales {
    double n = 0;
    cplx delta;
    cplx z0;
    cplx eta;   // delta^{-1} Phi(0; c); filled once the slow mode is known
};

SublayerScales scales(const FlowParams& p, cplx c);

// The disk D0 around c0 where the dispersion zero is sought.
struct DiskD0 {
    cplx c0;
    double radius = 0;
    int samples = 64;

    static DiskD0 fromParams(const FlowParams& p);
    cplx point(int k, int n, double phase = 0) const;
    bool contains(cplx c) const { return std::abs(c - c0) <= radius; }
};

} // namespace tswave

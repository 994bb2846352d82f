#pragma once

#include "tswave/exact_mode.hpp"
#include "tswave/params.hpp"
#include "tswave/profile.hpp"

#include <functional>
#include <string>

namespace tswave {

using ComplexMap = std::function<cplx(cplx)>;

// 1 + e^{-i pi/4} K (1 - M^2)^{-1/4} eps^{-1/8} (alpha/(1 - M^2)^{1/2} - c); vanishes at c0.
cplx FRef(cplx c, const FlowParams& prm);

struct WindingResult {
    int winding = 0;
    int samples = 0;
    double minModulus = 0;
    double maxJump = 0;     // largest phase change between neighbouring samples
    CVec points, values;    // final boundary samples
};

// Argument-principle count on the disk boundary. Samples start at n0 and double until two
// consecutive counts agree with every phase step below pi/2, up to nMax.
WindingResult winding(const ComplexMap& F, const DiskD0& disk, int n0 = 64, int nMax = 4096, double phase = 0,
                      double floor = 1e-14, int threads = 1);

struct ZeroResult {
    cplx c;
    cplx F;
    int iters = 0;
    bool converged = false;
    bool inDisk = false;
    std::vector<cplx> trace;
};

// Damped Newton with a central-difference derivative of step h; restarts from points on the
// circle of half radius when the first run fails.
ZeroResult findZero(const ComplexMap& F, cplx cInit, const DiskD0& disk, double tol = 1e-12, int maxIter = 50,
                    double h = 0);

// Newton on the exact dispersion function F(c) = u(0; c), all evaluations on one grid.
struct ExactRoot {
    ZeroResult zero;
    ExactMode mode;     // exact mode at zero.c
};
ExactRoot findExactZero(const FlowParams& prm, const ShearProfile& p, const HalfLineGrid& g, cplx cInit,
                        double tol = 1e-10, int maxIter = 30);

struct SweepRecord {
    double eps = 0, K = 0, M = 0;
    cplx c0, cFound;
    double radius = 0;
    int winding = 0;
    int samples = 0;
    double minBoundaryModulus = 0;
    double rouchGapRatio = 0;
    double tau0 = 0;          // min over the boundary of K eps^{-1/8} Im c
    int newtonIters = 0;
    double residualAtRoot = 0;
    bool rootInDisk = false;
    bool flagged = false;
    std::string flags;
    double wallTime = 0;
};

// One dispersion solve of F_app on D0 at fixed (eps, K, M).
SweepRecord solveDispersion(const FlowParams& prm, const ShearProfile& p, int threads = 1);

struct KScan {
    std::vector<SweepRecord> tried;
    size_t chosen = 0;
    bool fallback = false;   // no K met winding 1 with gap < 1/2; smallest gap used
};

KScan scanK(FlowParams prm, const ShearProfile& p, const RVec& Ks = {4, 6, 8, 12, 16}, int threads = 1);

struct LinFit {
    double slope = 0, intercept = 0, r2 = 0;
    int n = 0;
};
LinFit fitLogLog(const RVec& x, const RVec& y);

struct ScalingReport {
    LinFit alphaImC, imC, delta;
    double growthRatioMin = 0, growthRatioMax = 0;
    int used = 0, excluded = 0;
};

// Log-log fits over records with winding 1 and a root inside D0; the rest are excluded.
ScalingReport sweepScaling(const std::vector<SweepRecord>& recs);

// eps values geometric over [lo, hi] with per_decade points per decade, endpoints included.
RVec geometricSweep(double lo, double hi, int perDecade);

} // namespace tswave

#include "doctest.h"
#include "tswave/airy.hpp"
#include "tswave/fast_mode.hpp"

#include <cmath>

using namespace tswave;

TEST_CASE("sublayer scaling i n delta^3 = 1") {
    for (double eps : {1e-10, 1e-8, 1e-6}) {
        FlowParams prm;
        prm.eps = eps;
        cplx d = prm.delta();
        CHECK(std::abs(kI * prm.n() * d * d * d - 1.0) < 1e-15);
    }
}

TEST_CASE("fast mode boundary normalization") {
    FlowParams prm;
    prm.eps = 1e-8;
    cplx c(0.1, 0.02);
    SublayerScales sc = scales(prm, c);
    FastMode f = buildFastMode(prm, sc, HalfLineGrid::uniform(40, 4000, 4));
    AiryBundle b = airyEval(sc.z0);
    CHECK(std::abs(f.u0 + b.ai1 / b.ai2) <= 1e-12 * std::abs(f.u0));
    CHECK(std::abs(f.v0 - kI * prm.alpha() * sc.delta) <= 1e-12 * std::abs(f.v0));
    CHECK(std::abs(f.bundle.u0() - f.u0) <= 1e-14 * std::abs(f.u0));
    CHECK(f.bundle.rho0() == 0.0);
}

TEST_CASE("sublayer ODE residual on a ray") {
    cplx z0 = std::polar(4.0, -5.0 * kPi / 6.0);
    CVec z;
    for (int k = 0; k < 50; ++k) z.push_back(std::polar(0.3 * k, kPi / 6.0));
    for (cplx r : fastOdeResidual(z0, z)) CHECK(std::abs(r) < 1e-9);
}

TEST_CASE("fast mode derivatives agree with grid differentiation") {
    FlowParams prm;
    prm.eps = 1e-8;
    SublayerScales sc = scales(prm, cplx(0.2, 0.01));
    HalfLineGrid g = HalfLineGrid::uniform(2, 4000, 6);
    FastMode f = buildFastMode(prm, sc, g);
    CVec u1 = g.diff(f.bundle.u, 1), v1 = g.diff(f.bundle.v, 1);
    double scaleU = 0, err = 0;
    for (size_t i = 0; i < g.size(); ++i) {
        scaleU = std::max(scaleU, std::abs(f.deriv.u1[i]));
        err = std::max({err, std::abs(u1[i] - f.deriv.u1[i]), std::abs(v1[i] - f.deriv.v1[i])});
    }
    CHECK(err < 1e-6 * scaleU);
}

TEST_CASE("fast mode decays exponentially in n^{1/3} Y") {
    FlowParams prm;
    prm.eps = 1e-8;
    SublayerScales sc = scales(prm, cplx(0.1, 0.02));
    FastMode f = buildFastMode(prm, sc, HalfLineGrid::uniform(5, 5000, 4));
    for (int k = 0; k <= 2; ++k) {
        DecayFit d = fastDecayRate(f, sc.n, k);
        MESSAGE("decay rate k=" << k << ": " << d.rate << " (r2 " << d.r2 << ")");
        CHECK(d.rate > 0);
        CHECK(d.r2 > 0.9);
    }
}

TEST_CASE("fields far from the wall are cut to zero instead of underflowing") {
    FlowParams prm;
    prm.eps = 1e-10;
    SublayerScales sc = scales(prm, cplx(0.1, 0.02));
    FastMode f = buildFastMode(prm, sc, HalfLineGrid::uniform(60, 3000, 4));
    CHECK(f.cutoff < f.Y.size());
    for (size_t i = f.cutoff; i < f.Y.size(); ++i) CHECK(f.bundle.u[i] == 0.0);
    for (auto x : f.bundle.u) CHECK(std::isfinite(std::abs(x)));
}

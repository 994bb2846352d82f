#include "doctest.h"
#include "tswave/approx_mode.hpp"
#include "tswave/resolvent.hpp"

#include <cmath>
#include <random>

using namespace tswave;

namespace {

FlowParams params(double eps, double K = 8) {
    FlowParams p;
    p.eps = eps;
    p.K = K;
    return p;
}

} // namespace

TEST_CASE("v_app(0) vanishes and u_app(0) equals FApp") {
    ShearProfile p = ShearProfile::exponential();
    for (double eps : {1e-10, 1e-8}) {
        FlowParams prm = params(eps);
        cplx c = DiskD0::fromParams(prm).c0;
        HalfLineGrid g = modeGrid(prm, c, p, 1024);
        ApproxMode a = buildApprox(prm, p, c, g);
        CHECK(std::abs(a.bundle.v0()) < 1e-14);
        cplx F = FApp(c, prm, p);
        CHECK(std::abs(a.bundle.u0() - F) <= 1e-12 * std::abs(F));
    }
}

TEST_CASE("FApp is analytic: Cauchy-Riemann at random points of D0") {
    ShearProfile p = ShearProfile::exponential();
    FlowParams prm = params(1e-8);
    DiskD0 d = DiskD0::fromParams(prm);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 10; ++k) {
        cplx c = d.c0 + std::polar(d.radius * std::sqrt(u(rng)), 2 * kPi * u(rng));
        const double h = 1e-6 * d.radius;
        cplx dx = (FApp(c + h, prm, p) - FApp(c - h, prm, p)) / (2 * h);
        cplx dy = (FApp(c + kI * h, prm, p) - FApp(c - kI * h, prm, p)) / (2 * h);
        CHECK(std::abs(dx - dy / kI) <= 1e-5 * std::abs(dx));
    }
}

TEST_CASE("L2w norm of e^{-Y} is one") {
    ShearProfile p = ShearProfile::exponential();
    HalfLineGrid g = HalfLineGrid::uniform(40, 4000, 4);
    CVec f(g.size());
    for (size_t i = 0; i < g.size(); ++i) f[i] = std::exp(-g[i]);
    NormValue n = norm(g, f, NormKind::L2w, p);
    CHECK(n.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(n.tailOk);
}

TEST_CASE("error terms match direct application of the discrete operator") {
    ShearProfile p = ShearProfile::exponential();
    FlowParams prm = params(1e-8);
    cplx c = DiskD0::fromParams(prm).c0;
    double prev = 0, prevCont = 0;
    for (int n : {1024, 2048}) {
        HalfLineGrid g = modeGrid(prm, c, p, n);
        ApproxMode a = buildApprox(prm, p, c, g);
        ErrorTerms e = errorTerms(a, p, prm, g);
        ResolventSolver S(prm, p, c, g);
        Rows3 La = S.applyL(a.bundle);
        CVec d1(g.size()), d2(g.size());
        for (size_t i = 0; i < g.size(); ++i) {
            d1[i] = La[1][i] - e.EuSm[i];
            d2[i] = La[2][i] - e.EvSm[i] - e.EvRe[i];
        }
        // Interior rows only: one-sided stencils at the ends carry the largest truncation error.
        CVec r1(d1.begin() + 4, d1.end() - 4), r2(d2.begin() + 4, d2.end() - 4);
        double err = 0, ref = 0;
        for (size_t i = 0; i < r1.size(); ++i) {
            err = std::max({err, std::abs(r1[i]), std::abs(r2[i])});
            ref = std::max({ref, std::abs(La[1][i + 4]), std::abs(La[2][i + 4])});
        }
        CAPTURE(n);
        CHECK(err < 1e-2 * ref);
        if (prev > 0) CHECK(prev / err > 8.0);
        prev = err;
        // Continuity holds in closed form; its discrete defect is the truncation error of D1 v.
        double cont = 0;
        for (size_t i = 4; i + 4 < g.size(); ++i) cont = std::max(cont, std::abs(La[0][i]));
        CHECK(cont < 1e-4 * ref);
        if (prevCont > 0) CHECK(prevCont / cont > 8.0);
        prevCont = cont;
    }
}

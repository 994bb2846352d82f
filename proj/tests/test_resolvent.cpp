#include "doctest.h"
#include "tswave/resolvent.hpp"

#include <cmath>
#include <random>

using namespace tswave;

namespace {

FlowParams params(double eps, double M = 0.3) {
    FlowParams p;
    p.eps = eps;
    p.M = M;
    return p;
}

double relDiff(const CVec& a, const CVec& b) {
    double n = 0, d = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        n += std::norm(a[i] - b[i]);
        d += std::norm(b[i]);
    }
    return std::sqrt(n / d);
}

CVec randomSource(const HalfLineGrid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0, 1);
    cplx a(N(rng), N(rng)), b(N(rng), N(rng));
    double s = 0.5 + std::abs(N(rng));
    CVec f(g.size());
    for (size_t i = 0; i < g.size(); ++i) f[i] = (a + b * g[i]) * g[i] * std::exp(-s * g[i]);
    return f;
}

} // namespace

TEST_CASE("Lambda inverse at M = 0 recovers Y e^{-alpha Y} at fourth order") {
    ShearProfile p = ShearProfile::exponential();
    FlowParams prm = params(1e-8);
    prm.M = 0.0;
    const double al = prm.alpha();
    double prev = 0;
    for (int n : {256, 512, 1024}) {
        HalfLineGrid g = HalfLineGrid::uniform(40, n, 4);
        ResolventSolver S(prm, p, cplx(0.1, 0.05), g);
        CVec h(g.size()), exact(g.size());
        for (size_t i = 0; i < g.size(); ++i) {
            h[i] = -2.0 * al * std::exp(-al * g[i]);
            exact[i] = g[i] * std::exp(-al * g[i]);
        }
        double err = 0;
        CVec psi = S.lambdaInverse(h);
        for (size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(psi[i] - exact[i]));
        if (prev > 0) CHECK(std::log2(prev / err) >= 3.5);
        prev = err;
    }
}

TEST_CASE("Lambda round trip on interior nodes") {
    ShearProfile p = ShearProfile::exponential();
    FlowParams prm = params(1e-8);
    cplx c(0.3, 0.02);
    HalfLineGrid g = modeGrid(prm, c, p, 1024);
    ResolventSolver S(prm, p, c, g);
    std::mt19937_64 rng(3);
    CVec h = randomSource(g, rng);
    CVec back = S.lambdaApply(S.lambdaInverse(h));
    for (size_t i = 1; i + 1 < g.size(); ++i) CHECK(std::abs(back[i] - h[i]) < 1e-8 * (1 + std::abs(h[i])));
}

TEST_CASE("operator splittings are exact discrete identities") {
    ShearProfile p = ShearProfile::exponential();
    FlowParams prm = params(1e-8);
    prm.lambda = 0.7;
    cplx c(0.3, 0.02);
    HalfLineGrid g = modeGrid(prm, c, p, 1024);
    ResolventSolver S(prm, p, c, g);
    std::mt19937_64 rng(11);
    ModeBundle b(g.size());
    b.rho = randomSource(g, rng);
    b.u = randomSource(g, rng);
    b.v = randomSource(g, rng);
    Rows3 L = S.applyL(b), LQ = S.applyLQ(b), EQ = S.applyEQ(b), LS = S.applyLS(b);
    double scale = 0, dq = 0, ds = 0;
    for (int r = 0; r < 3; ++r)
        for (size_t i = 0; i < g.size(); ++i) {
            scale = std::max(scale, std::abs(L[r][i]));
            dq = std::max(dq, std::abs(L[r][i] - LQ[r][i] - EQ[r][i]));
            cplx shift = r == 1 ? b.v[i] * p.eval(g[i], 1) : 0.0;
            ds = std::max(ds, std::abs(L[r][i] - (LS[r][i] - shift)));
        }
    CHECK(dq < 1e-12 * scale);
    CHECK(ds < 1e-12 * scale);
}

TEST_CASE("quasi-compressible solve satisfies L_Q on imposed rows") {
    ShearProfile p = ShearProfile::exponential();
    FlowParams prm = params(1e-8);
    cplx c(0.3, 0.02);
    HalfLineGrid g = modeGrid(prm, c, p, 1024);
    ResolventSolver S(prm, p, c, g);
    std::mt19937_64 rng(5);
    CVec s1 = randomSource(g, rng), s2 = randomSource(g, rng);
    ModeBundle q = S.solveQuasiCompressible(s1, s2);
    Rows3 r = S.applyLQ(q);
    CHECK(std::abs(q.v0()) < 1e-12);
    double err = 0, ref = 0;
    for (size_t i = 2; i + 2 < g.size(); ++i) {
        err = std::max({err, std::abs(r[0][i]), std::abs(r[1][i] - s1[i]), std::abs(r[2][i] - s2[i])});
        ref = std::max({ref, std::abs(s1[i]), std::abs(s2[i])});
    }
    CHECK(err < 1e-6 * ref);
}

TEST_CASE("OS_CNS solve inverts the discrete operator") {
    ShearProfile p = ShearProfile::exponential();
    FlowParams prm = params(1e-8);
    cplx c(0.3, 0.02);
    HalfLineGrid g = modeGrid(prm, c, p, 1024, 40);
    ResolventSolver S(prm, p, c, g);
    CVec Psi(g.size());
    // Y^3 e^{-Y} meets the closures Psi(0) = 0 and Lambda(Psi)(0) = 0.
    for (size_t i = 0; i < g.size(); ++i) Psi[i] = g[i] * g[i] * g[i] * std::exp(-g[i]);
    CHECK(relDiff(S.solveOSCNS(S.osApply(Psi)), Psi) < 1e-8);
}

TEST_CASE("manufactured stream function for OS_CNS converges at fourth order") {
    ShearProfile p = ShearProfile::exponential();
    FlowParams prm = params(1e-8);
    const double M2 = prm.M * prm.M, al = prm.alpha(), se = prm.sqrtEps(), n = prm.n();
    cplx c(0.3, 0.02);
    double prev = 0;
    for (int N : {512, 1024, 2048}) {
        HalfLineGrid g = HalfLineGrid::uniform(40, N, 4);
        ResolventSolver S(prm, p, c, g);
        CVec Psi(g.size()), h(g.size());
        for (size_t i = 0; i < g.size(); ++i) {
            const double Y = g[i], e = std::exp(-Y);
            // Derivatives of Y^3 e^{-Y} up to fourth order.
            const double P0 = Y * Y * Y * e, P1 = (3 * Y * Y - Y * Y * Y) * e, P2 = (6 * Y - 6 * Y * Y + Y * Y * Y) * e,
                         P3 = (6 - 18 * Y + 9 * Y * Y - Y * Y * Y) * e, P4 = (-24 + 36 * Y - 12 * Y * Y + Y * Y * Y) * e;
            double d[4];
            p.eval4(Y, d);
            const cplx Uc = d[0] - c, A = 1.0 - M2 * Uc * Uc, A1 = -2.0 * M2 * Uc * d[1];
            const cplx B = kI / n * (P3 - al * al * P1) + Uc * P1 - d[1] * P0;
            const cplx B1 = kI / n * (P4 - al * al * P2) + Uc * P2 - d[2] * P0;
            h[i] = B1 / A - A1 / (A * A) * B - al * al * Uc * P0 - kI * al * se * (P2 - al * al * P0);
            Psi[i] = P0;
        }
        double err = relDiff(S.solveOSCNS(h), Psi);
        CAPTURE(N);
        CHECK(err < 1e-3);
        if (prev > 0) CHECK(std::log2(prev / err) > 3.0);
        prev = err;
    }
}

TEST_CASE("Stokes solve recovers a manufactured solution") {
    ShearProfile p = ShearProfile::exponential();
    FlowParams prm = params(1e-8);
    cplx c(0.3, 0.02);
    HalfLineGrid g = modeGrid(prm, c, p, 1024);
    ResolventSolver S(prm, p, c, g);
    ModeBundle x(g.size());
    for (size_t i = 0; i < g.size(); ++i) {
        double Y = g[i], e = std::exp(-Y);
        x.rho[i] = cplx(0.3, 0.1) * e;
        x.u[i] = cplx(1.0, -0.5) * (1.0 + Y) * e;   // u'(0) = 0 as the wall closure on row 2 requires
        x.v[i] = cplx(0.2, 0.4) * Y * Y * e;
    }
    Rows3 f = S.applyLS(x);
    ModeBundle y = S.solveStokes(f[0], f[1], f[2]);
    CHECK(relDiff(y.u, x.u) < 1e-5);
    CHECK(relDiff(y.v, x.v) < 1e-5);
    CHECK(relDiff(y.rho, x.rho) < 1e-5);
}

TEST_CASE("iteration contracts and agrees with the monolithic solve") {
    ShearProfile p = ShearProfile::exponential();
    FlowParams prm = params(1e-8);
    cplx c = DiskD0::fromParams(prm).c0;
    HalfLineGrid g = modeGrid(prm, c, p, 2048);
    ResolventSolver S(prm, p, c, g);
    std::mt19937_64 rng(21);
    for (int k = 0; k < 2; ++k) {
        CVec fu = randomSource(g, rng), fv = randomSource(g, rng);
        for (Branch br : {Branch::L2, Branch::H1}) {
            ResolventSolution s = S.iterate(fu, fv, br);
            CHECK(s.log.converged);
            for (double r : s.log.ratios) CHECK(r < 0.5);
            CHECK(s.residual < 1e-6);
            CHECK(std::abs(s.mode.v0()) < 1e-13);
        }
        ResolventSolution s = S.iterate(fu, fv, Branch::L2);
        ModeBundle m = S.monolithic(fu, fv);
        ModeBundle d = axpy(s.mode, -1.0, m);
        CHECK(S.l2(d) / S.l2(m) < 1e-6);
    }
}

TEST_CASE("Stokes needs M > 0") {
    ShearProfile p = ShearProfile::exponential();
    FlowParams prm = params(1e-8);
    prm.M = 0.0;
    cplx c(0.3, 0.02);
    HalfLineGrid g = modeGrid(prm, c, p, 512);
    ResolventSolver S(prm, p, c, g);
    CVec z(g.size(), 0.0);
    CHECK_THROWS_AS(S.solveStokes(z, z, z), DomainError);
}

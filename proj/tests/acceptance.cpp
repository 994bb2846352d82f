// Acceptance run: one PASS/FAIL line per criterion with the measured values.
#include "tswave/airy.hpp"
#include "tswave/dispersion.hpp"
#include "tswave/exact_mode.hpp"
#include "tswave/fast_mode.hpp"
#include "tswave/parallel.hpp"
#include "tswave/profile.hpp"
#include "tswave/resolvent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <thread>

using namespace tswave;

namespace {

constexpr double kMach = 0.3;
constexpr int kGridN = 2048;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char b[64];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

HalfLineGrid gridAt(const FlowParams& prm, cplx c, const ShearProfile& p) {
    return modeGrid(prm, c, p, kGridN, std::max(40.0, 25.0 / prm.beta1()));
}

CVec randomSource(const HalfLineGrid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0, 1);
    cplx a(N(rng), N(rng)), b(N(rng), N(rng));
    double s = 0.5 + std::abs(N(rng));
    CVec f(g.size());
    for (size_t i = 0; i < g.size(); ++i) f[i] = (a + b * g[i]) * g[i] * std::exp(-s * g[i]);
    return f;
}

// Everything measured at one sweep point.
struct Point {
    double eps = 0;
    SweepRecord rec;
    bool fallback = false;
    cplx cEval;                 // root in D0 when found, otherwise the disk centre
    bool atRoot = false;
    ExactMode em;               // exact mode at cEval
    ZeroResult newton;          // Newton on the exact F from cEval
    ExactMode emStar;           // exact mode at the Newton end point
    bool starUsable = false;    // Newton converged inside D0
    double meanRatio = 0, maxRatio = 0;
};

} // namespace

int main() {
    const int threads = std::max(1u, std::thread::hardware_concurrency());
    const ShearProfile p = ShearProfile::exponential();
    const RVec eps = geometricSweep(1e-10, 1e-7, 4);
    std::vector<Point> pts(eps.size());

    auto t0 = std::chrono::steady_clock::now();
    parallelFor(eps.size(), threads, [&](size_t k) {
        FlowParams prm;
        prm.M = kMach;
        prm.eps = eps[k];
        KScan s = scanK(prm, p);
        Point& q = pts[k];
        q.eps = eps[k];
        q.rec = s.tried[s.chosen];
        q.fallback = s.fallback;
    });
    const double sweepTime = seconds(t0);

    t0 = std::chrono::steady_clock::now();
    parallelFor(eps.size(), threads, [&](size_t k) {
        Point& q = pts[k];
        FlowParams prm;
        prm.M = kMach;
        prm.eps = q.eps;
        prm.K = q.rec.K;
        q.atRoot = q.rec.winding == 1 && q.rec.rootInDisk;
        q.cEval = q.atRoot ? q.rec.cFound : q.rec.c0;
        HalfLineGrid g = gridAt(prm, q.cEval, p);
        q.em = assembleExactMode(q.cEval, prm, p, g);
        RVec r = q.em.logSm.ratios;
        r.insert(r.end(), q.em.logRe.ratios.begin(), q.em.logRe.ratios.end());
        double lg = 0;
        for (double x : r) {
            lg += std::log(x);
            q.maxRatio = std::max(q.maxRatio, x);
        }
        q.meanRatio = r.empty() ? 0 : std::exp(lg / r.size());
        ExactRoot root = findExactZero(prm, p, g, q.cEval);
        q.newton = root.zero;
        q.emStar = root.mode;
        q.starUsable = root.zero.converged && root.zero.inDisk && root.zero.c.imag() > 0;
    });
    const double modeTime = seconds(t0);

    for (const auto& q : pts)
        std::printf("  eps=%.3e K=%g winding=%d minMod=%.3e gap=%.3e c0=%.5f%+.5fi root=%s newton|F|=%.3e "
                    "ratio(gm)=%.3e ratio(max)=%.3e EvRe=%.3e Esm=%.3e usm0=%.3e ure0=%.3e%s\n",
                    q.eps, q.rec.K, q.rec.winding, q.rec.minBoundaryModulus, q.rec.rouchGapRatio,
                    q.rec.c0.real(), q.rec.c0.imag(), q.atRoot ? "yes" : "no", std::abs(q.newton.F), q.meanRatio,
                    q.maxRatio, q.em.normEvReH1w, q.em.normSmL2, std::abs(q.em.uSm0), std::abs(q.em.uRe0),
                    q.fallback ? " [K-fallback]" : "");
    std::printf("  timing: K-scan sweep %.2f s, exact modes and Newton %.2f s\n", sweepTime, modeTime);

    // 1. Scaling of alpha Im c and Im c over the sweep.
    {
        std::vector<SweepRecord> recs;
        for (const auto& q : pts) recs.push_back(q.rec);
        ScalingReport s = sweepScaling(recs);
        bool ok = s.used == static_cast<int>(pts.size()) && std::abs(s.alphaImC.slope - 0.25) <= 0.03 &&
                  s.alphaImC.r2 >= 0.99 && std::abs(s.imC.slope - 0.125) <= 0.02 && sweepTime < 600;
        std::string d = "points with a root in D0: " + std::to_string(s.used) + "/" + std::to_string(pts.size());
        if (s.used >= 2)
            d += "; slope(alpha Im c)=" + fmt("%.4f", s.alphaImC.slope) + " R2=" + fmt("%.4f", s.alphaImC.r2) +
                 "; slope(Im c)=" + fmt("%.4f", s.imC.slope);
        else
            d += "; slopes undefined";
        d += "; sweep " + fmt("%.2f", sweepTime) + " s";
        report(1, ok, d);
    }

    // 2. Winding, boundary modulus and Rouche gap at every point.
    {
        int wind1 = 0, modOk = 0;
        double worstMod = 1e300;
        for (const auto& q : pts) {
            double bound = 0.5 * std::pow(q.rec.K, -0.5);
            if (q.rec.winding == 1) ++wind1;
            if (q.rec.minBoundaryModulus >= bound) ++modOk;
            worstMod = std::min(worstMod, q.rec.minBoundaryModulus / bound);
        }
        const size_t n = pts.size();
        double gapHi1 = pts[n - 1].rec.rouchGapRatio, gapHi2 = pts[n - 2].rec.rouchGapRatio;
        double gapLo = pts[0].rec.rouchGapRatio;
        bool ok = wind1 == static_cast<int>(n) && modOk == static_cast<int>(n) && gapHi1 < 1 && gapHi2 < 1 &&
                  gapLo <= 0.6;
        report(2, ok,
               "winding 1 at " + std::to_string(wind1) + "/" + std::to_string(n) + "; modulus bound met at " +
                   std::to_string(modOk) + "/" + std::to_string(n) + " (worst min|F|/bound " +
                   fmt("%.3e", worstMod) + "); gap at two largest eps " + fmt("%.3e", gapHi2) + ", " +
                   fmt("%.3e", gapHi1) + "; gap at smallest eps " + fmt("%.3e", gapLo));
    }

    // 3. Error-norm slopes.
    {
        RVec ev, sm;
        int atRoot = 0;
        for (const auto& q : pts) {
            ev.push_back(q.em.normEvReH1w);
            sm.push_back(q.em.normSmL2);
            atRoot += q.atRoot;
        }
        LinFit fe = fitLogLog(eps, ev), fs = fitLogLog(eps, sm);
        bool ok = std::abs(fe.slope - 3.0 / 16) <= 0.03 && std::abs(fs.slope - 7.0 / 16) <= 0.05;
        report(3, ok,
               "slope ||E_v,re||_H1w=" + fmt("%.4f", fe.slope) + " (R2 " + fmt("%.3f", fe.r2) +
                   ", target 0.1875); slope ||E_sm||_L2=" + fmt("%.4f", fs.slope) + " (R2 " + fmt("%.3f", fs.r2) +
                   ", target 0.4375); evaluated at the root at " + std::to_string(atRoot) + "/" +
                   std::to_string(pts.size()) + " points, at c0 elsewhere");
    }

    // 4. Contraction of the Stokes iteration.
    {
        double worst = 0;
        RVec means;
        for (const auto& q : pts) {
            if (q.eps <= 1e-8 * (1 + 1e-12)) worst = std::max(worst, q.maxRatio);
            means.push_back(q.meanRatio);
        }
        LinFit f = fitLogLog(eps, means);
        bool ok = worst < 0.5 && std::abs(f.slope - 0.125) <= 0.05;
        report(4, ok,
               "max ratio for eps <= 1e-8: " + fmt("%.3e", worst) + "; slope of geometric-mean ratio " +
                   fmt("%.4f", f.slope) + " (R2 " + fmt("%.3f", f.r2) + ", target 0.125)");
    }

    // 5. Iterated vs monolithic solve on random sources.
    {
        std::mt19937_64 rng(12345);
        double worst = 0;
        const size_t idx[3] = {0, pts.size() / 2, pts.size() - 1};
        for (size_t k : idx) {
            FlowParams prm;
            prm.M = kMach;
            prm.eps = pts[k].eps;
            prm.K = pts[k].rec.K;
            HalfLineGrid g = gridAt(prm, pts[k].cEval, p);
            ResolventSolver S(prm, p, pts[k].cEval, g);
            for (int s = 0; s < 5; ++s) {
                CVec fu = randomSource(g, rng), fv = randomSource(g, rng);
                ModeBundle it = S.iterate(fu, fv, Branch::L2).mode;
                ModeBundle mono = S.monolithic(fu, fv);
                worst = std::max(worst, S.l2(axpy(it, -1.0, mono)) / S.l2(mono));
            }
        }
        report(5, worst <= 1e-6, "max relative L2 difference over 15 solves: " + fmt("%.3e", worst));
    }

    // 6. Exact-mode closure at the Newton end point.
    {
        double worstF = 0, worstV = 0, worstRes = 0;
        int conv = 0;
        RVec usm, ure;
        for (const auto& q : pts) {
            worstF = std::max(worstF, std::abs(q.newton.F));
            conv += q.starUsable;
            const ExactMode& m = q.starUsable ? q.emStar : q.em;
            worstV = std::max(worstV, std::abs(m.mode.v0()));
            worstRes = std::max(worstRes, m.residual);
            usm.push_back(std::abs(m.uSm0));
            ure.push_back(std::abs(m.uRe0));
        }
        LinFit a = fitLogLog(eps, usm), b = fitLogLog(eps, ure);
        const double minSlope = 1.0 / 16 - 0.02;
        bool ok = worstF <= 1e-10 && worstV <= 1e-14 && worstRes <= 1e-6 && a.slope >= minSlope &&
                  b.slope >= minSlope;
        report(6, ok,
               "Newton converged in D0 at " + std::to_string(conv) + "/" + std::to_string(pts.size()) +
                   "; max |F(c*)|=" + fmt("%.3e", worstF) + "; max |v(0)|=" + fmt("%.3e", worstV) +
                   "; max residual=" + fmt("%.3e", worstRes) + "; slope |u_sm(0)|=" + fmt("%.4f", a.slope) +
                   ", slope |u_re(0)|=" + fmt("%.4f", b.slope) + " (min " + fmt("%.4f", minSlope) + ")");
    }

    // 7. Structural functions of the exponential profile.
    {
        RVec g = validationGrid(40, 2048);
        double hDef = 0, wDiff = 0, idDiff = 0, minMargin = 1e300;
        for (double M : {0.1, 0.3, 0.5}) {
            StructuralFunctions s = structural(p, M, 0.0, g);
            for (size_t i = 0; i < g.size(); ++i) {
                hDef = std::max(hDef, 0.5 * (1 - M * M) - s.H[i]);
                wDiff = std::max(wDiff, std::abs(s.w[i] - s.w0[i]) / s.w0[i]);
                double d[4];
                p.eval4(g[i], d);
                double a = w0MinusUw1Direct(d[0], d[1], d[2], M), b = w0MinusUw1Factored(d[0], d[1], d[2], M);
                idDiff = std::max(idDiff, std::abs(a - b) / std::abs(a));
            }
            minMargin = std::min(minMargin, positivityCheck(s, p, M).margin);
        }
        bool ok = hDef <= 1e-10 && minMargin > 0 && wDiff <= 1e-10 && idDiff <= 1e-9;
        report(7, ok,
               "max (1-M^2)/2 - H=" + fmt("%.3e", hDef) + "; min positivity margin=" + fmt("%.3e", minMargin) +
                   "; max |w(c=0)-w0|/w0=" + fmt("%.3e", wDiff) + "; max two-route difference=" +
                   fmt("%.3e", idDiff));
    }

    // 8. Airy functions.
    {
        RVec args;
        for (int k = -16; k <= 16; ++k) args.push_back(k * kPi / 16.0);
        double overlap = 0;
        for (const auto& e : airyOverlapMatrix({13, 14, 15, 16}, args)) overlap = std::max(overlap, e.relDiff);
        double ratioWorst = 0;
        for (double r : {30.0, 100.0, 300.0}) {
            cplx z0 = std::polar(r, -5.0 * kPi / 6.0);
            double err = std::abs(airyRatio(z0) + std::sqrt(z0)) / std::abs(std::sqrt(z0));
            ratioWorst = std::max(ratioWorst, err * r / 2.0);
        }
        double anchor = std::abs(airyEval(0.0).ai1 + 1.0 / 3.0);
        FlowParams prm;
        prm.M = kMach;
        prm.eps = 1e-8;
        SublayerScales sc = scales(prm, DiskD0::fromParams(prm).c0);
        FastMode f = buildFastMode(prm, sc, HalfLineGrid::uniform(40, 4000, 4));
        cplx target = kI * prm.alpha() * sc.delta;
        double vAnchor = std::abs(f.v0 - target) / std::abs(target);
        bool ok = overlap <= 1e-10 && ratioWorst <= 1 && anchor <= 1e-12 && vAnchor <= 1e-12;
        report(8, ok,
               "overlap max=" + fmt("%.3e", overlap) + "; max ratio error / (2/|z0|)=" + fmt("%.3f", ratioWorst) +
                   "; |Ai(1,0)+1/3|=" + fmt("%.3e", anchor) + "; |v_f(0)-i alpha delta| rel=" +
                   fmt("%.3e", vAnchor));
    }

    // 9. Lambda inverse at M = 0 against Y e^{-alpha Y}.
    {
        FlowParams prm;
        prm.M = 0.0;
        prm.eps = 1e-8;
        const double al = prm.alpha();
        double prev = 0, minOrder = 1e300;
        std::string orders;
        for (int n : {256, 512, 1024, 2048}) {
            HalfLineGrid g = HalfLineGrid::uniform(40, n, 4);
            ResolventSolver S(prm, p, cplx(0.1, 0.05), g);
            CVec h(g.size());
            for (size_t i = 0; i < g.size(); ++i) h[i] = -2.0 * al * std::exp(-al * g[i]);
            CVec psi = S.lambdaInverse(h);
            double err = 0;
            for (size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(psi[i] - g[i] * std::exp(-al * g[i])));
            if (prev > 0) {
                double o = std::log2(prev / err);
                minOrder = std::min(minOrder, o);
                orders += (orders.empty() ? "" : ", ") + fmt("%.3f", o);
            }
            prev = err;
        }
        report(9, minOrder >= 3.5, "observed orders " + orders + "; finest max error " + fmt("%.3e", prev));
    }

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

#include "tswave/dispersion.hpp"
#include "tswave/approx_mode.hpp"
#include "tswave/parallel.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace tswave {

cplx FRef(cplx c, const FlowParams& prm) {
    const double q = 1.0 - prm.M * prm.M;
    const double e8 = std::pow(prm.eps, 0.125);
    return 1.0 + std::polar(1.0, -kPi / 4.0) * prm.K * std::pow(q, -0.25) / e8 * (-c + prm.alpha() / std::sqrt(q));
}

namespace {

int countWinding(const CVec& v, double& maxJump) {
    double total = 0;
    maxJump = 0;
    const size_t n = v.size();
    for (size_t k = 0; k < n; ++k) {
        double d = std::arg(v[(k + 1) % n] / v[k]);
        maxJump = std::max(maxJump, std::abs(d));
        total += d;
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

} // namespace

WindingResult winding(const ComplexMap& F, const DiskD0& disk, int n0, int nMax, double phase, double floor,
                      int threads) {
    if (n0 < 4) throw DomainError("winding needs at least 4 samples");
    WindingResult r;
    int n = n0;
    CVec pts(n), vals(n);
    for (int k = 0; k < n; ++k) pts[k] = disk.point(k, n, phase);
    parallelFor(n, threads, [&](size_t k) { vals[k] = F(pts[k]); });
    int prev = std::numeric_limits<int>::min();
    for (;;) {
        double mn = std::numeric_limits<double>::infinity();
        for (const auto& v : vals) mn = std::min(mn, std::abs(v));
        if (!(mn > floor)) throw NumericalError("zero-on-contour: |F| below floor on the disk boundary");
        double jump;
        int w = countWinding(vals, jump);
        r.winding = w;
        r.samples = n;
        r.minModulus = mn;
        r.maxJump = jump;
        r.points = pts;
        r.values = vals;
        if (w == prev && jump < kPi / 2.0) return r;
        if (2 * n > nMax) {
            if (jump < kPi / 2.0) return r;
            throw NumericalError("winding count did not settle within the sample limit");
        }
        prev = w;
        // Double: keep the old samples at even positions, evaluate the new odd ones.
        CVec p2(2 * n), v2(2 * n);
        for (int k = 0; k < n; ++k) {
            p2[2 * k] = pts[k];
            v2[2 * k] = vals[k];
            p2[2 * k + 1] = disk.point(2 * k + 1, 2 * n, phase);
        }
        parallelFor(n, threads, [&](size_t k) { v2[2 * k + 1] = F(p2[2 * k + 1]); });
        pts.swap(p2);
        vals.swap(v2);
        n *= 2;
    }
}

namespace {

ZeroResult newton(const ComplexMap& F, cplx c, double tol, int maxIter, double h) {
    ZeroResult z;
    cplx f = F(c);
    z.trace.push_back(c);
    for (int it = 0; it < maxIter; ++it) {
        if (std::abs(f) <= tol) {
            z.converged = true;
            break;
        }
        cplx df = (F(c + h) - F(c - h)) / (2.0 * h);
        if (df == 0.0 || !std::isfinite(std::abs(df))) break;
        cplx step = -f / df;
        double lam = 1.0;
        cplx cn, fn;
        bool ok = false;
        for (int k = 0; k < 12; ++k, lam *= 0.5) {
            cn = c + lam * step;
            if (!(cn.imag() > 0)) continue;
            try {
                fn = F(cn);
            } catch (const std::exception&) {
                continue;
            }
            if (std::abs(fn) < std::abs(f)) {
                ok = true;
                break;
            }
        }
        z.iters = it + 1;
        if (!ok) break;
        c = cn;
        f = fn;
        z.trace.push_back(c);
    }
    if (std::abs(f) <= tol) z.converged = true;
    z.c = c;
    z.F = f;
    return z;
}

} // namespace

ZeroResult findZero(const ComplexMap& F, cplx cInit, const DiskD0& disk, double tol, int maxIter, double h) {
    if (h <= 0) h = 1e-6 * disk.radius;
    ZeroResult z = newton(F, cInit, tol, maxIter, h);
    for (int k = 0; k < 4 && !z.converged; ++k) {
        ZeroResult t = newton(F, disk.c0 + std::polar(0.5 * disk.radius, kPi * k / 2.0), tol, maxIter, h);
        t.iters += z.iters;
        t.trace.insert(t.trace.begin(), z.trace.begin(), z.trace.end());
        z = t;
    }
    z.inDisk = disk.contains(z.c);
    return z;
}

ExactRoot findExactZero(const FlowParams& prm, const ShearProfile& p, const HalfLineGrid& g, cplx cInit,
                        double tol, int maxIter) {
    DiskD0 disk = DiskD0::fromParams(prm);
    ComplexMap F = [&](cplx c) { return assembleExactMode(c, prm, p, g).F; };
    ExactRoot r;
    r.zero = newton(F, cInit, tol, maxIter, 1e-6 * disk.radius);
    r.zero.inDisk = disk.contains(r.zero.c);
    r.mode = assembleExactMode(r.zero.c, prm, p, g);
    return r;
}

SweepRecord solveDispersion(const FlowParams& prm, const ShearProfile& p, int threads) {
    prm.check();
    auto t0 = std::chrono::steady_clock::now();
    SweepRecord r;
    r.eps = prm.eps;
    r.K = prm.K;
    r.M = prm.M;
    DiskD0 disk = DiskD0::fromParams(prm);
    r.c0 = disk.c0;
    r.radius = disk.radius;
    ComplexMap F = [&](cplx c) { return FApp(c, prm, p); };
    WindingResult w = winding(F, disk, 64, 4096, 0.0, 1e-14, threads);
    r.winding = w.winding;
    r.samples = w.samples;
    r.minBoundaryModulus = w.minModulus;
    r.tau0 = std::numeric_limits<double>::infinity();
    const double e8 = std::pow(prm.eps, 0.125);
    for (size_t k = 0; k < w.points.size(); ++k) {
        cplx fr = FRef(w.points[k], prm);
        r.rouchGapRatio = std::max(r.rouchGapRatio, std::abs(w.values[k] - fr) / std::abs(fr));
        r.tau0 = std::min(r.tau0, prm.K * w.points[k].imag() / e8);
    }
    ZeroResult z = findZero(F, disk.c0, disk);
    r.cFound = z.c;
    r.newtonIters = z.iters;
    r.residualAtRoot = std::abs(z.F);
    r.rootInDisk = z.converged && z.inDisk;
    auto flag = [&](const std::string& s) {
        r.flagged = true;
        r.flags += r.flags.empty() ? s : ";" + s;
    };
    if (r.winding != 1) flag("winding=" + std::to_string(r.winding));
    if (!z.converged) flag("newton-failed");
    else if (!z.inDisk) flag("root-outside-D0");
    if (r.minBoundaryModulus < 0.5 * std::pow(prm.K, -prm.theta)) flag("boundary-modulus-below-bound");
    r.wallTime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

KScan scanK(FlowParams prm, const ShearProfile& p, const RVec& Ks, int threads) {
    KScan s;
    bool found = false;
    for (double K : Ks) {
        prm.K = K;
        s.tried.push_back(solveDispersion(prm, p, threads));
        const SweepRecord& r = s.tried.back();
        if (r.winding == 1 && r.rouchGapRatio < 0.5) {
            s.chosen = s.tried.size() - 1;
            found = true;
            break;
        }
    }
    if (!found) {
        s.fallback = true;
        size_t best = 0;
        for (size_t i = 1; i < s.tried.size(); ++i)
            if (s.tried[i].rouchGapRatio < s.tried[best].rouchGapRatio) best = i;
        s.chosen = best;
        SweepRecord& r = s.tried[best];
        r.flagged = true;
        r.flags += r.flags.empty() ? "K-fallback" : ";K-fallback";
    }
    return s;
}

LinFit fitLogLog(const RVec& x, const RVec& y) {
    LinFit f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int n = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) continue;
        double a = std::log(x[i]), b = std::log(y[i]);
        sx += a; sy += b; sxx += a * a; sxy += a * b; syy += b * b;
        ++n;
    }
    f.n = n;
    if (n < 2) return f;
    double vx = n * sxx - sx * sx, vy = n * syy - sy * sy, cxy = n * sxy - sx * sy;
    f.slope = cxy / vx;
    f.intercept = (sy - f.slope * sx) / n;
    f.r2 = vy > 0 ? cxy * cxy / (vx * vy) : 1.0;
    return f;
}

ScalingReport sweepScaling(const std::vector<SweepRecord>& recs) {
    ScalingReport s;
    RVec e, aic, ic, d;
    s.growthRatioMin = std::numeric_limits<double>::infinity();
    s.growthRatioMax = 0;
    for (const auto& r : recs) {
        if (r.winding != 1 || !r.rootInDisk) {
            ++s.excluded;
            continue;
        }
        FlowParams prm;
        prm.eps = r.eps;
        prm.K = r.K;
        prm.M = r.M;
        const double al = prm.alpha();
        e.push_back(r.eps);
        aic.push_back(al * r.cFound.imag());
        ic.push_back(r.cFound.imag());
        d.push_back(std::abs(prm.delta()));
        double growth = al * r.cFound.imag() / std::sqrt(r.eps);
        double ref = std::pow(r.K, -2.0 / 3.0) * std::pow(prm.n(), 2.0 / 3.0);
        s.growthRatioMin = std::min(s.growthRatioMin, growth / ref);
        s.growthRatioMax = std::max(s.growthRatioMax, growth / ref);
        ++s.used;
    }
    s.alphaImC = fitLogLog(e, aic);
    s.imC = fitLogLog(e, ic);
    s.delta = fitLogLog(e, d);
    if (s.used == 0) s.growthRatioMin = 0;
    return s;
}

RVec geometricSweep(double lo, double hi, int perDecade) {
    if (!(lo > 0) || !(hi >= lo) || perDecade < 1) throw DomainError("sweep needs 0 < lo <= hi and per_decade >= 1");
    const double dec = std::log10(hi / lo);
    const int steps = static_cast<int>(std::lround(dec * perDecade));
    RVec out;
    for (int k = 0; k <= steps; ++k) out.push_back(lo * std::pow(10.0, dec * k / std::max(steps, 1)));
    if (steps == 0) out.resize(1);
    return out;
}

} // namespace tswave

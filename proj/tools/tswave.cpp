#include "tswave/airy.hpp"
#include "tswave/approx_mode.hpp"
#include "tswave/cli_io.hpp"
#include "tswave/dispersion.hpp"
#include "tswave/exact_mode.hpp"
#include "tswave/fast_mode.hpp"
#include "tswave/parallel.hpp"
#include "tswave/profile.hpp"
#include "tswave/resolvent.hpp"
#include "tswave/slow_mode.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace tswave;
using json = nlohmann::ordered_json;

namespace {

struct Overrides {
    std::optional<std::string> profile;
    std::optional<double> mach, eps, K, theta, lambda, ymax;
    std::optional<int> n, order;
    std::string sweep;
};

struct Globals {
    std::string config;
    std::string outDir;
    int threads = 0;
    long long seed = -1;
};

void addFlowOptions(CLI::App* sc, Overrides& o, bool grid = true) {
    sc->add_option("--profile", o.profile, "shear profile: exp | tanh");
    sc->add_option("--mach", o.mach, "Mach number");
    sc->add_option("--eps", o.eps, "viscosity parameter eps");
    sc->add_option("--K", o.K, "wavenumber constant, alpha = K eps^{1/8}");
    sc->add_option("--theta", o.theta, "disk radius exponent");
    sc->add_option("--lambda", o.lambda, "bulk viscosity ratio");
    if (grid) {
        sc->add_option("--ymax", o.ymax, "grid truncation Y_max (0 selects automatically)");
        sc->add_option("--n", o.n, "grid intervals");
        sc->add_option("--order", o.order, "finite-difference order");
    }
}

RunConfig makeConfig(const Globals& g, const Overrides& o, ConfigUse use) {
    RunConfig cfg = g.config.empty() ? parseConfig("", ConfigUse::General) : loadConfig(g.config, ConfigUse::General);
    if (o.profile) cfg.profile = *o.profile;
    if (o.mach) cfg.flow.M = *o.mach;
    if (o.eps) cfg.flow.eps = *o.eps;
    if (o.K) cfg.flow.K = *o.K;
    if (o.theta) cfg.flow.theta = *o.theta;
    if (o.lambda) cfg.flow.lambda = *o.lambda;
    if (o.ymax) cfg.ymax = *o.ymax;
    if (o.n) cfg.n = *o.n;
    if (o.order) cfg.order = *o.order;
    if (!o.sweep.empty()) cfg.sweep = parseSweep(o.sweep);
    if (!g.outDir.empty()) cfg.outDir = g.outDir;
    if (g.threads > 0) cfg.threads = g.threads;
    if (g.seed >= 0) cfg.seed = static_cast<uint64_t>(g.seed);
    cfg.warnings.clear();
    validateConfig(cfg, use);
    return cfg;
}

std::string outPath(const RunConfig& cfg, const std::string& name) {
    std::filesystem::path p(name);
    if (p.is_absolute()) return name;
    std::filesystem::create_directories(cfg.outDir);
    return (std::filesystem::path(cfg.outDir) / p).string();
}

void finish(RunManifest& man, const RunConfig& cfg, const std::string& command) {
    const std::string path = outPath(cfg, command + "_manifest.json");
    std::ofstream f(path);
    if (!f) throw IOError("cannot write manifest '" + path + "'");
    f << man.json();
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
}

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

cplx phaseSpeed(const std::string& text, const FlowParams& prm) {
    return text.empty() ? DiskD0::fromParams(prm).c0 : parseComplex(text);
}

HalfLineGrid gridFor(const RunConfig& cfg, cplx c, const ShearProfile& p) {
    // Y_max is a floor: the slow mode decays like exp(-beta_1 Y) and needs 25/beta_1.
    return modeGrid(cfg.flow, c, p, cfg.n, std::max(cfg.ymax, 25.0 / cfg.flow.beta1()), cfg.order);
}

void pushComplex(std::vector<Cell>& row, cplx z) {
    row.push_back(z.real());
    row.push_back(z.imag());
}

void complexColumns(Table& t, const std::vector<std::string>& names) {
    for (const auto& n : names) {
        t.columns.push_back("re_" + n);
        t.columns.push_back("im_" + n);
    }
}

json complexJson(cplx z) { return json::array({z.real(), z.imag()}); }

Table modeTable(const RVec& Y, const ModeBundle& b) {
    Table t;
    t.columns = {"Y"};
    complexColumns(t, {"rho", "u", "v"});
    for (size_t i = 0; i < Y.size(); ++i) {
        std::vector<Cell> r{Y[i]};
        pushComplex(r, b.rho[i]);
        pushComplex(r, b.u[i]);
        pushComplex(r, b.v[i]);
        t.add(std::move(r));
    }
    return t;
}

Table sweepTable(const std::vector<SweepRecord>& recs) {
    Table t;
    t.columns = {"eps", "K", "M", "re_c0", "im_c0", "radius", "re_c", "im_c", "winding", "samples",
                 "min_boundary_modulus", "rouche_gap_ratio", "tau0", "newton_iters", "residual_at_root",
                 "root_in_disk", "flags"};
    for (const auto& r : recs)
        t.add({r.eps, r.K, r.M, r.c0.real(), r.c0.imag(), r.radius, r.cFound.real(), r.cFound.imag(),
               static_cast<long long>(r.winding), static_cast<long long>(r.samples), r.minBoundaryModulus,
               r.rouchGapRatio, r.tau0, static_cast<long long>(r.newtonIters), r.residualAtRoot,
               static_cast<long long>(r.rootInDisk), r.flags});
    return t;
}

json logJson(const IterationLog& l) {
    return {{"E", l.E}, {"ratios", l.ratios}, {"steps", l.steps}, {"converged", l.converged}};
}

// Source file columns: Y, re_fu, im_fu, re_fv, im_fv; values are interpolated linearly onto the grid.
void readSource(const std::string& path, const RVec& Y, CVec& fu, CVec& fv) {
    std::ifstream f(path);
    if (!f) throw IOError("cannot read source file '" + path + "'");
    std::string line;
    RVec y;
    CVec a, b;
    std::getline(f, line);
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        RVec v;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() != 5) throw DomainError("source rows need 5 columns: Y,re_fu,im_fu,re_fv,im_fv");
        y.push_back(v[0]);
        a.emplace_back(v[1], v[2]);
        b.emplace_back(v[3], v[4]);
    }
    if (y.size() < 2) throw DomainError("source needs at least two rows");
    fu.assign(Y.size(), 0.0);
    fv.assign(Y.size(), 0.0);
    for (size_t i = 0; i < Y.size(); ++i) {
        if (Y[i] < y.front() || Y[i] > y.back()) continue;   // zero outside the tabulated range
        size_t k = std::upper_bound(y.begin(), y.end(), Y[i]) - y.begin();
        k = std::clamp<size_t>(k, 1, y.size() - 1);
        double t = (Y[i] - y[k - 1]) / (y[k] - y[k - 1]);
        fu[i] = (1 - t) * a[k - 1] + t * a[k];
        fv[i] = (1 - t) * b[k - 1] + t * b[k];
    }
}

int cmdValidateProfile(const Globals& g, const Overrides& o, const std::string& out) {
    RunConfig cfg = makeConfig(g, o, ConfigUse::General);
    RunManifest man("validate-profile", cfg);
    auto t0 = std::chrono::steady_clock::now();
    ShearProfile p = ShearProfile::fromName(cfg.profile);
    ValidationReport r = validate(p, cfg.flow.M, validationGrid(cfg.ymax, cfg.n));
    man.timing("validate", seconds(t0));
    json j{{"profile", p.name()}, {"mach", cfg.flow.M}, {"s0", r.s0}, {"s1", r.s1}, {"s2", r.s2},
           {"sigma1", r.sigma1}, {"sigma2", r.sigma2}, {"a3_sum", r.a3Sum}, {"min_H", r.minH},
           {"argmin_H", r.argMinH}, {"concavity_margin", r.concavityMargin}, {"pass_A0", r.passA0},
           {"pass_A1", r.passA1}, {"pass_A2", r.passA2}, {"pass_A3", r.passA3}, {"pass_A4", r.passA4},
           {"pass_all", r.passAll()}, {"config_hash", cfg.hash()}};
    man.write(outPath(cfg, out), j.dump(2) + "\n");
    finish(man, cfg, "validate-profile");
    return r.passAll() ? 0 : 2;
}

int cmdAiry(const std::string& z) {
    cplx x = parseComplex(z);
    AiryBundle b = airyEval(x);
    json j{{"z", complexJson(x)}, {"Ai", complexJson(b.ai)}, {"Ai_prime", complexJson(b.aiPrime)},
           {"Ai1", complexJson(b.ai1)}, {"Ai2", complexJson(b.ai2)}, {"method", airyMethodName(b.method)},
           {"est_error", b.estError}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmdSlowMode(const Globals& g, const Overrides& o, const std::string& cText, const std::string& out) {
    RunConfig cfg = makeConfig(g, o, ConfigUse::ModePath);
    RunManifest man("slow-mode", cfg);
    ShearProfile p = ShearProfile::fromName(cfg.profile);
    cplx c = phaseSpeed(cText, cfg.flow);
    auto t0 = std::chrono::steady_clock::now();
    HalfLineGrid grid = gridFor(cfg, c, p);
    SlowMode s = buildSlowMode(cfg.flow, p, c, grid, cfg.tolQuad);
    man.timing("build", seconds(t0));
    Table t;
    t.columns = {"Y"};
    complexColumns(t, {"Phi", "dPhi", "rho", "u", "v"});
    for (size_t i = 0; i < s.Y.size(); ++i) {
        std::vector<Cell> r{s.Y[i]};
        for (cplx z : {s.Phi[0][i], s.Phi[1][i], s.fluid.rho[i], s.fluid.u[i], s.fluid.v[i]}) pushComplex(r, z);
        t.add(std::move(r));
    }
    man.write(outPath(cfg, out), t.csv());
    finish(man, cfg, "slow-mode");
    return 0;
}

int cmdFastMode(const Globals& g, const Overrides& o, const std::string& cText, const std::string& out) {
    RunConfig cfg = makeConfig(g, o, ConfigUse::ModePath);
    RunManifest man("fast-mode", cfg);
    ShearProfile p = ShearProfile::fromName(cfg.profile);
    cplx c = phaseSpeed(cText, cfg.flow);
    HalfLineGrid grid = gridFor(cfg, c, p);
    FastMode f = buildFastMode(cfg.flow, scales(cfg.flow, c), grid);
    Table t;
    t.columns = {"Y"};
    complexColumns(t, {"z", "U0", "V0", "u", "v"});
    for (size_t i = 0; i < f.Y.size(); ++i) {
        std::vector<Cell> r{f.Y[i]};
        for (cplx z : {f.s[i] - f.z0, f.U0[i], f.V0[i], f.bundle.u[i], f.bundle.v[i]}) pushComplex(r, z);
        t.add(std::move(r));
    }
    man.write(outPath(cfg, out), t.csv());
    finish(man, cfg, "fast-mode");
    return 0;
}

RVec sweepValues(const RunConfig& cfg) { return cfg.sweep.active ? cfg.sweep.values() : RVec{cfg.flow.eps}; }

int cmdErrors(const Globals& g, const Overrides& o, const std::string& out) {
    RunConfig cfg = makeConfig(g, o, ConfigUse::ModePath);
    RunManifest man("errors", cfg);
    ShearProfile p = ShearProfile::fromName(cfg.profile);
    RVec eps = sweepValues(cfg);
    RVec ev(eps.size()), sm(eps.size());
    std::vector<int> tailOk(eps.size());
    CVec cs(eps.size());
    auto t0 = std::chrono::steady_clock::now();
    parallelFor(eps.size(), cfg.threads, [&](size_t k) {
        FlowParams prm = cfg.flow;
        prm.eps = eps[k];
        cplx c = DiskD0::fromParams(prm).c0;
        HalfLineGrid grid = modeGrid(prm, c, p, cfg.n, 0, cfg.order);
        ApproxMode a = buildApprox(prm, p, c, grid, cfg.tolQuad);
        ErrorTerms e = errorTerms(a, p, prm, grid);
        ev[k] = e.normEvReH1w.value;
        sm[k] = e.normSmL2.value;
        tailOk[k] = e.normEvReH1w.tailOk && e.normSmL2.tailOk;
        cs[k] = c;
    });
    man.timing("errors", seconds(t0));
    Table t;
    t.columns = {"eps", "re_c", "im_c", "norm_EvRe_H1w", "norm_Esm_L2", "tail_ok"};
    for (size_t k = 0; k < eps.size(); ++k) t.add({eps[k], cs[k].real(), cs[k].imag(), ev[k], sm[k], (long long)tailOk[k]});
    const std::string path = outPath(cfg, out);
    man.write(path, t.csv());
    LinFit fe = fitLogLog(eps, ev), fs = fitLogLog(eps, sm);
    json j{{"slope_EvRe_H1w", fe.slope}, {"r2_EvRe_H1w", fe.r2}, {"slope_Esm_L2", fs.slope}, {"r2_Esm_L2", fs.r2},
           {"evaluated_at", "c0"}, {"config_hash", cfg.hash()}};
    man.write(path + ".json", j.dump(2) + "\n");
    finish(man, cfg, "errors");
    return 0;
}

int cmdDispersion(const Globals& g, const Overrides& o, bool scan, const std::string& out) {
    RunConfig cfg = makeConfig(g, o, ConfigUse::ModePath);
    RunManifest man("dispersion", cfg);
    ShearProfile p = ShearProfile::fromName(cfg.profile);
    RVec eps = sweepValues(cfg);
    std::vector<SweepRecord> recs(eps.size());
    auto t0 = std::chrono::steady_clock::now();
    // Parallel over eps points; boundary sampling inside each point stays serial.
    parallelFor(eps.size(), cfg.threads, [&](size_t k) {
        FlowParams prm = cfg.flow;
        prm.eps = eps[k];
        if (scan) {
            KScan s = scanK(prm, p, cfg.Kscan, 1);
            recs[k] = s.tried[s.chosen];
        } else {
            recs[k] = solveDispersion(prm, p, 1);
        }
    });
    man.timing("dispersion", seconds(t0));
    bool flagged = false;
    for (const auto& r : recs)
        if (r.flagged) {
            flagged = true;
            man.warn("eps=" + formatDouble(r.eps) + ": " + r.flags);
        }
    const std::string path = outPath(cfg, out);
    man.write(path, sweepTable(recs).csv());
    if (recs.size() > 1) {
        ScalingReport s = sweepScaling(recs);
        json j{{"slope_alpha_im_c", s.alphaImC.slope}, {"r2_alpha_im_c", s.alphaImC.r2},
               {"slope_im_c", s.imC.slope}, {"r2_im_c", s.imC.r2}, {"slope_delta", s.delta.slope},
               {"points_used", s.used}, {"points_excluded", s.excluded}, {"config_hash", cfg.hash()}};
        man.write(path + ".json", j.dump(2) + "\n");
    }
    finish(man, cfg, "dispersion");
    return flagged ? 3 : 0;
}

int cmdResolvent(const Globals& g, const Overrides& o, const std::string& source, const std::string& branch,
                 const std::string& cText, bool mono, const std::string& out) {
    RunConfig cfg = makeConfig(g, o, ConfigUse::ModePath);
    RunManifest man("resolvent", cfg);
    ShearProfile p = ShearProfile::fromName(cfg.profile);
    cplx c = phaseSpeed(cText, cfg.flow);
    if (branch != "l2" && branch != "h1") throw DomainError("branch must be l2 or h1");
    HalfLineGrid grid = gridFor(cfg, c, p);
    const RVec& Y = grid.nodes();
    CVec fu(Y.size()), fv(Y.size());
    if (source.empty()) {
        for (size_t i = 0; i < Y.size(); ++i) {
            fu[i] = std::exp(-Y[i]) * Y[i];
            fv[i] = kI * std::exp(-2.0 * Y[i]) * Y[i] * Y[i];
        }
    } else {
        readSource(source, Y, fu, fv);
    }
    auto t0 = std::chrono::steady_clock::now();
    ResolventSolver S(cfg.flow, p, c, grid);
    ResolventSolution sol = S.iterate(fu, fv, branch == "l2" ? Branch::L2 : Branch::H1, cfg.tolIter, cfg.maxIter);
    man.timing("iterate", seconds(t0));
    json j{{"c", complexJson(c)}, {"branch", branch}, {"log", logJson(sol.log)}, {"residual", sol.residual},
           {"residual_all_rows", sol.residualFull}, {"cond_os", S.conditionOS()},
           {"cond_stokes", S.conditionStokes()}, {"config_hash", cfg.hash()}};
    if (mono) {
        ModeBundle m = S.monolithic(fu, fv);
        ModeBundle d = axpy(sol.mode, -1.0, m);
        j["monolithic_rel_diff"] = S.l2(d) / S.l2(m);
    }
    const std::string path = outPath(cfg, out);
    man.write(path, modeTable(Y, sol.mode).csv());
    man.write(path + ".json", j.dump(2) + "\n");
    if (!sol.log.converged) man.warn("iteration did not reach tolerance");
    finish(man, cfg, "resolvent");
    return sol.log.converged ? 0 : 3;
}

int cmdEigenmode(const Globals& g, const Overrides& o, const std::string& cText, bool newton, const std::string& out) {
    RunConfig cfg = makeConfig(g, o, ConfigUse::ModePath);
    RunManifest man("eigenmode", cfg);
    ShearProfile p = ShearProfile::fromName(cfg.profile);
    DiskD0 disk = DiskD0::fromParams(cfg.flow);
    cplx c = phaseSpeed(cText, cfg.flow);
    auto t0 = std::chrono::steady_clock::now();
    HalfLineGrid grid = gridFor(cfg, c, p);
    json j;
    ExactMode m;
    bool flagged = false;
    if (newton) {
        ExactRoot r = findExactZero(cfg.flow, p, grid, c, cfg.tolNewton, 30);
        m = r.mode;
        j["newton"] = {{"converged", r.zero.converged}, {"iterations", r.zero.iters}, {"in_disk", r.zero.inDisk}};
        flagged = !r.zero.converged || !r.zero.inDisk;
    } else {
        m = assembleExactMode(c, cfg.flow, p, grid, cfg.tolIter, cfg.maxIter);
    }
    man.timing("eigenmode", seconds(t0));
    j["c"] = complexJson(m.c);
    j["c0"] = complexJson(disk.c0);
    j["F"] = complexJson(m.F);
    j["F_app"] = complexJson(m.FApp);
    j["u_sm0"] = complexJson(m.uSm0);
    j["u_re0"] = complexJson(m.uRe0);
    j["v0_abs"] = std::abs(m.mode.v0());
    j["residual"] = m.residual;
    j["residual_all_rows"] = m.residualFull;
    j["log_sm"] = logJson(m.logSm);
    j["log_re"] = logJson(m.logRe);
    j["config_hash"] = cfg.hash();
    const std::string path = outPath(cfg, out);
    man.write(path, modeTable(grid.nodes(), m.mode).csv());
    man.write(path + ".json", j.dump(2) + "\n");
    if (flagged) man.warn("no exact root with Im c > 0 found inside D0");
    finish(man, cfg, "eigenmode");
    return flagged ? 3 : 0;
}

// Quick internal checks; one CSV row per check.
int cmdSelftest(const Globals& g, const std::string& out) {
    RunConfig cfg = makeConfig(g, Overrides{}, ConfigUse::General);
    RunManifest man("selftest", cfg);
    Table t;
    t.columns = {"check", "value", "tolerance", "pass"};
    bool ok = true;
    auto add = [&](const std::string& name, double v, double tol) {
        bool pass = v <= tol;
        ok = ok && pass;
        t.add({name, v, tol, static_cast<long long>(pass)});
    };
    add("airy_anchor_Ai1_0", std::abs(airyEval(0.0).ai1 + 1.0 / 3.0), 1e-12);
    double worst = 0;
    for (const auto& e : airyOverlapMatrix({13, 14, 15, 16}, {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0}))
        worst = std::max(worst, e.relDiff);
    add("airy_overlap", worst, 1e-10);
    ShearProfile p = ShearProfile::exponential();
    StructuralFunctions s = structural(p, 0.3, 0.0, validationGrid(40, 512));
    double dw = 0;
    for (size_t i = 0; i < s.w.size(); ++i) dw = std::max(dw, std::abs(s.w[i] - s.w0[i]) / std::abs(s.w0[i]));
    add("w_at_c0_equals_w0", dw, 1e-10);
    FlowParams prm;
    cplx c(0.3, 0.05);
    HalfLineGrid grid = HalfLineGrid::uniform(30, 600, 4);
    SlowMode sm = buildSlowMode(prm, p, c, grid);
    CVec a = rayleighResidual(sm), b = rayleighResidualDirect(sm);
    double d = 0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]) / (1.0 + std::abs(a[i])));
    add("rayleigh_two_routes", d, 1e-9);
    man.write(outPath(cfg, out), t.csv());
    finish(man, cfg, "selftest");
    std::cout << t.csv();
    return ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tollmien-Schlichting wave construction for compressible boundary layers"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "key-value configuration file");
    app.add_option("--out-dir", g.outDir, "output directory");
    app.add_option("--threads", g.threads, "worker threads");
    app.add_option("--seed", g.seed, "random seed");

    Overrides oVal, oSlow, oFast, oErr, oDisp, oRes, oEig;
    std::string outVal = "report.json", outSlow = "slow.csv", outFast = "fast.csv", outErr = "errors.csv",
                outDisp = "dispersion.csv", outRes = "resolvent.csv", outEig = "mode.csv", outSelf = "selftest.csv";
    std::string z, cSlow, cFast, cRes, cEig, source, branch = "l2";
    bool scan = false, mono = false, newton = false;

    auto* val = app.add_subcommand("validate-profile", "check the structural hypotheses of a shear profile");
    addFlowOptions(val, oVal);
    val->add_option("--out", outVal, "output file name inside --out-dir");
    auto* ai = app.add_subcommand("airy", "evaluate Ai, Ai', Ai(1,z), Ai(2,z)");
    ai->add_option("--z", z)->required();
    auto* slow = app.add_subcommand("slow-mode", "inviscid slow mode on a grid");
    addFlowOptions(slow, oSlow);
    slow->add_option("--c", cSlow, "phase speed (default: disk centre c0)");
    slow->add_option("--out", outSlow, "output file name inside --out-dir");
    auto* fast = app.add_subcommand("fast-mode", "viscous sublayer mode on a grid");
    addFlowOptions(fast, oFast);
    fast->add_option("--c", cFast, "phase speed (default: disk centre c0)");
    fast->add_option("--out", outFast, "output file name inside --out-dir");
    auto* err = app.add_subcommand("errors", "error-term norms of the approximate mode");
    addFlowOptions(err, oErr);
    err->add_option("--sweep", oErr.sweep, "eps sweep, e.g. eps=1e-10:1e-7 decades=3 per_decade=4");
    err->add_option("--out", outErr, "output file name inside --out-dir");
    auto* disp = app.add_subcommand("dispersion", "winding count and root of F_app on the disk D0");
    addFlowOptions(disp, oDisp, false);
    disp->add_option("--sweep", oDisp.sweep, "eps sweep, e.g. 1e-10:1e-7");
    disp->add_flag("--scan", scan, "scan K over the configured list");
    disp->add_option("--out", outDisp, "output file name inside --out-dir");
    auto* res = app.add_subcommand("resolvent", "iterated resolvent solve for a source");
    addFlowOptions(res, oRes);
    res->add_option("--source", source, "CSV with Y,re_fu,im_fu,re_fv,im_fv");
    res->add_option("--branch", branch, "l2 | h1");
    res->add_option("--c", cRes, "phase speed (default: disk centre c0)");
    res->add_flag("--monolithic", mono, "also solve the single block system and report the difference");
    res->add_option("--out", outRes, "output file name inside --out-dir");
    auto* eig = app.add_subcommand("eigenmode", "exact mode and dispersion function F(c)");
    addFlowOptions(eig, oEig);
    eig->add_option("--c", cEig, "phase speed (default: disk centre c0)");
    eig->add_flag("--newton", newton, "Newton on F(c) from the starting phase speed");
    eig->add_option("--out", outEig, "output file name inside --out-dir");
    auto* self = app.add_subcommand("selftest", "quick internal consistency checks");
    self->add_option("--out", outSelf, "output file name inside --out-dir");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (*val) return cmdValidateProfile(g, oVal, outVal);
        if (*ai) return cmdAiry(z);
        if (*slow) return cmdSlowMode(g, oSlow, cSlow, outSlow);
        if (*fast) return cmdFastMode(g, oFast, cFast, outFast);
        if (*err) return cmdErrors(g, oErr, outErr);
        if (*disp) return cmdDispersion(g, oDisp, scan, outDisp);
        if (*res) return cmdResolvent(g, oRes, source, branch, cRes, mono, outRes);
        if (*eig) return cmdEigenmode(g, oEig, cEig, newton, outEig);
        if (*self) return cmdSelftest(g, outSelf);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const IOError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

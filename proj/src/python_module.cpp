#include "tswave/airy.hpp"
#include "tswave/approx_mode.hpp"
#include "tswave/dispersion.hpp"
#include "tswave/exact_mode.hpp"
#include "tswave/profile.hpp"
#include "tswave/resolvent.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace tswave;

namespace {

py::array_t<cplx> toArray(const CVec& v) { return py::array_t<cplx>(v.size(), v.data()); }
py::array_t<double> toArray(const RVec& v) { return py::array_t<double>(v.size(), v.data()); }

CVec fromArray(const py::array_t<cplx, py::array::c_style | py::array::forcecast>& a) {
    return CVec(a.data(), a.data() + a.size());
}

FlowParams makeParams(double M, double eps, double K, double theta, double lambda) {
    FlowParams p;
    p.M = M;
    p.eps = eps;
    p.K = K;
    p.theta = theta;
    p.lambda = lambda;
    p.check();
    return p;
}

HalfLineGrid gridFor(const FlowParams& prm, cplx c, const ShearProfile& p, int n) {
    return modeGrid(prm, c, p, n, std::max(40.0, 25.0 / prm.beta1()));
}

py::dict bundleDict(const ModeBundle& b) {
    py::dict d;
    d["rho"] = toArray(b.rho);
    d["u"] = toArray(b.u);
    d["v"] = toArray(b.v);
    return d;
}

py::dict recordDict(const SweepRecord& r) {
    py::dict d;
    d["eps"] = r.eps;
    d["K"] = r.K;
    d["M"] = r.M;
    d["c0"] = r.c0;
    d["c_found"] = r.cFound;
    d["radius"] = r.radius;
    d["winding"] = r.winding;
    d["samples"] = r.samples;
    d["min_boundary_modulus"] = r.minBoundaryModulus;
    d["rouche_gap_ratio"] = r.rouchGapRatio;
    d["newton_iters"] = r.newtonIters;
    d["residual_at_root"] = r.residualAtRoot;
    d["root_in_disk"] = r.rootInDisk;
    d["flagged"] = r.flagged;
    d["flags"] = r.flags;
    return d;
}

} // namespace

PYBIND11_MODULE(_tswave, m) {
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<FlowParams>(m, "FlowParams")
        .def(py::init(&makeParams), py::arg("M") = 0.3, py::arg("eps") = 1e-8, py::arg("K") = 8.0,
             py::arg("theta") = 0.5, py::arg("lambda_") = 0.0)
        .def_readwrite("M", &FlowParams::M)
        .def_readwrite("eps", &FlowParams::eps)
        .def_readwrite("K", &FlowParams::K)
        .def_readwrite("theta", &FlowParams::theta)
        .def_readwrite("lambda_", &FlowParams::lambda)
        .def_property_readonly("alpha", &FlowParams::alpha)
        .def_property_readonly("n", &FlowParams::n)
        .def_property_readonly("delta", &FlowParams::delta)
        .def_property_readonly("beta1", &FlowParams::beta1)
        .def_property_readonly("c0", [](const FlowParams& p) { return DiskD0::fromParams(p).c0; })
        .def_property_readonly("radius", [](const FlowParams& p) { return DiskD0::fromParams(p).radius; });

    py::class_<ShearProfile>(m, "ShearProfile")
        .def_static("exponential", &ShearProfile::exponential)
        .def_static("tanh", &ShearProfile::tanhProfile)
        .def_static("tabulated", &ShearProfile::tabulated, py::arg("Y"), py::arg("U"))
        .def_static("from_name", &ShearProfile::fromName)
        .def_property_readonly("name", &ShearProfile::name)
        .def("eval", &ShearProfile::eval, py::arg("Y"), py::arg("order") = 0);

    m.def(
        "validate_profile",
        [](const ShearProfile& p, double M, double ymax, int n) {
            ValidationReport r = validate(p, M, validationGrid(ymax, n));
            py::dict d;
            d["sigma1"] = r.sigma1;
            d["sigma2"] = r.sigma2;
            d["min_H"] = r.minH;
            d["pass"] = r.passAll();
            d["checks"] = std::vector<bool>{r.passA0, r.passA1, r.passA2, r.passA3, r.passA4};
            return d;
        },
        py::arg("profile"), py::arg("M"), py::arg("ymax") = 40.0, py::arg("n") = 2048);

    m.def(
        "airy",
        [](cplx z) {
            AiryBundle b = airyEval(z);
            return py::make_tuple(b.ai, b.aiPrime, b.ai1, b.ai2);
        },
        py::arg("z"), "Ai, Ai', and the primitives Ai(1, z), Ai(2, z).");
    m.def("airy_ratio", &airyRatio, py::arg("z0"));

    m.def(
        "f_app", [](cplx c, const FlowParams& prm, const ShearProfile& p) { return FApp(c, prm, p); }, py::arg("c"),
        py::arg("params"), py::arg("profile"));
    m.def("f_ref", &FRef, py::arg("c"), py::arg("params"));

    m.def(
        "solve_dispersion",
        [](const FlowParams& prm, const ShearProfile& p) { return recordDict(solveDispersion(prm, p)); },
        py::arg("params"), py::arg("profile"));
    m.def(
        "scan_k",
        [](const FlowParams& prm, const ShearProfile& p, const RVec& Ks) {
            KScan s = scanK(prm, p, Ks);
            py::dict d = recordDict(s.tried[s.chosen]);
            d["fallback"] = s.fallback;
            return d;
        },
        py::arg("params"), py::arg("profile"), py::arg("Ks") = RVec{4, 6, 8, 12, 16});

    m.def(
        "approx_mode",
        [](const FlowParams& prm, const ShearProfile& p, cplx c, int n) {
            HalfLineGrid g = gridFor(prm, c, p, n);
            ApproxMode a = buildApprox(prm, p, c, g);
            ErrorTerms e = errorTerms(a, p, prm, g);
            py::dict d = bundleDict(a.bundle);
            d["Y"] = toArray(a.Y);
            d["eta"] = a.eta;
            d["norm_EvRe_H1w"] = e.normEvReH1w.value;
            d["norm_Esm_L2"] = e.normSmL2.value;
            return d;
        },
        py::arg("params"), py::arg("profile"), py::arg("c"), py::arg("n") = 2048);

    m.def(
        "exact_mode",
        [](const FlowParams& prm, const ShearProfile& p, cplx c, int n) {
            HalfLineGrid g = gridFor(prm, c, p, n);
            ExactMode x = assembleExactMode(c, prm, p, g);
            py::dict d = bundleDict(x.mode);
            d["Y"] = toArray(g.nodes());
            d["F"] = x.F;
            d["F_app"] = x.FApp;
            d["u_sm0"] = x.uSm0;
            d["u_re0"] = x.uRe0;
            d["residual"] = x.residual;
            d["ratios_sm"] = toArray(x.logSm.ratios);
            d["ratios_re"] = toArray(x.logRe.ratios);
            return d;
        },
        py::arg("params"), py::arg("profile"), py::arg("c"), py::arg("n") = 2048);

    m.def(
        "resolvent",
        [](const FlowParams& prm, const ShearProfile& p, cplx c, py::array_t<double> Y,
           py::array_t<cplx, py::array::c_style | py::array::forcecast> fu,
           py::array_t<cplx, py::array::c_style | py::array::forcecast> fv, bool monolithic) {
            HalfLineGrid g(RVec(Y.data(), Y.data() + Y.size()), 4);
            ResolventSolver S(prm, p, c, g);
            CVec a = fromArray(fu), b = fromArray(fv);
            if (a.size() != g.size() || b.size() != g.size()) throw DomainError("source size must match the grid");
            py::dict d;
            if (monolithic) {
                d = bundleDict(S.monolithic(a, b));
            } else {
                ResolventSolution s = S.iterate(a, b, Branch::L2);
                d = bundleDict(s.mode);
                d["ratios"] = toArray(s.log.ratios);
                d["residual"] = s.residual;
            }
            return d;
        },
        py::arg("params"), py::arg("profile"), py::arg("c"), py::arg("Y"), py::arg("fu"), py::arg("fv"),
        py::arg("monolithic") = false);

    m.def(
        "mode_grid",
        [](const FlowParams& prm, const ShearProfile& p, cplx c, int n) { return toArray(gridFor(prm, c, p, n).nodes()); },
        py::arg("params"), py::arg("profile"), py::arg("c"), py::arg("n") = 2048);
}

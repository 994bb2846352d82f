#include "tswave/params.hpp"

#include <cmath>

namespace tswave {

double FlowParams::alpha() const {
    if (regime == Regime::Theorem) return K * std::pow(eps, 0.125);
    return expC * std::pow(eps, expBeta);
}

double FlowParams::sqrtEps() const { return std::sqrt(eps); }

double FlowParams::n() const { return alpha() / sqrtEps(); }

cplx FlowParams::delta() const { return std::polar(std::pow(n(), -1.0 / 3.0), -kPi / 6.0); }

double FlowParams::beta1() const { return 0.5 * std::sqrt(1.0 - M * M) * alpha(); }

void FlowParams::check() const {
    if (!(M > 0.0 && M < 1.0)) throw DomainError("Mach number must lie in (0, 1)");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
    if (!(K > 0.0)) throw DomainError("K must be positive");
    if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0, 1)");
    if (!(lambda >= 0.0)) throw DomainError("bulk viscosity lambda must be >= 0");
    if (regime == Regime::Experimental && !(expBeta > 1.0 / 12.0 && expBeta < 0.125))
        throw DomainError("experimental regime needs beta in (1/12, 1/8)");
}

SublayerScales scales(const FlowParams& p, cplx c) {
    SublayerScales s;
    s.n = p.n();
    s.delta = p.delta();
    s.z0 = -c / s.delta;
    s.eta = 0;
    cplx check = kI * s.n * s.delta * s.delta * s.delta;
    if (std::abs(check - 1.0) > 1e-12) throw NumericalError("sublayer scaling i n delta^3 != 1");
    return s;
}

DiskD0 DiskD0::fromParams(const FlowParams& p) {
    const double e8 = std::pow(p.eps, 0.125);
    const double q = std::sqrt(1.0 - p.M * p.M);
    DiskD0 d;
    d.c0 = (p.K / q + std::polar(std::sqrt(q) / p.K, kPi / 4.0)) * e8;
    d.radius = std::pow(p.K, -1.0 - p.theta) * std::sqrt(q) * e8;
    return d;
}

cplx DiskD0::point(int k, int n, double phase) const {
    return c0 + std::polar(radius, 2.0 * kPi * k / n + phase);
}

} // namespace tswave

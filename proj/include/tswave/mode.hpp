#pragma once

#include "tswave/types.hpp"

namespace tswave {

// (rho, u, v) sampled on a grid; boundary traces are the first samples.
struct ModeBundle {
    CVec rho, u, v;

    ModeBundle() = default;
    explicit ModeBundle(size_t n) : rho(n, 0.0), u(n, 0.0), v(n, 0.0) {}
    size_t size() const { return u.size(); }
    cplx rho0() const { return rho.front(); }
    cplx u0() const { return u.front(); }
    cplx v0() const { return v.front(); }
};

// Derivatives of a bundle's fields when they are known in closed form.
struct ModeDerivatives {
    CVec rho1, rho2, u1, u2, v1, v2;
};

// a + s * b, fieldwise.
ModeBundle axpy(const ModeBundle& a, cplx s, const ModeBundle& b);
ModeDerivatives axpy(const ModeDerivatives& a, cplx s, const ModeDerivatives& b);

} // namespace tswave

#include "tswave/mode.hpp"

namespace tswave {

namespace {
CVec combine(const CVec& a, cplx s, const CVec& b) {
    if (a.size() != b.size()) throw DomainError("grid mismatch between combined fields");
    CVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
}
} // namespace

ModeBundle axpy(const ModeBundle& a, cplx s, const ModeBundle& b) {
    ModeBundle r;
    r.rho = combine(a.rho, s, b.rho);
    r.u = combine(a.u, s, b.u);
    r.v = combine(a.v, s, b.v);
    return r;
}

ModeDerivatives axpy(const ModeDerivatives& a, cplx s, const ModeDerivatives& b) {
    ModeDerivatives r;
    r.rho1 = combine(a.rho1, s, b.rho1);
    r.rho2 = combine(a.rho2, s, b.rho2);
    r.u1 = combine(a.u1, s, b.u1);
    r.u2 = combine(a.u2, s, b.u2);
    r.v1 = combine(a.v1, s, b.v1);
    r.v2 = combine(a.v2, s, b.v2);
    return r;
}

} // namespace tswave

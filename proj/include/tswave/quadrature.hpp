#pragma once

#include "tswave/types.hpp"

#include <cmath>

namespace tswave {

struct QuadResult {
    cplx value{0.0, 0.0};
    double errEst = 0;
    int evals = 0;
    bool converged = true;
};

// One 15-point Kronrod panel with the embedded 7-point Gauss estimate.
template <class F>
QuadResult gk15(const F& f, double a, double b) {
    static const double xk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                 0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                 0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static const double wk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                 0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                 0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static const double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                 0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx rk = fc * wk[7];
    cplx rg = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        cplx f1 = f(c - h * xk[j]);
        cplx f2 = f(c + h * xk[j]);
        rk += wk[j] * (f1 + f2);
        if (j % 2 == 1) rg += wg[j / 2] * (f1 + f2);
    }
    QuadResult r;
    r.value = rk * h;
    r.errEst = std::abs((rk - rg) * h);
    r.evals = 15;
    return r;
}

namespace detail {
template <class F>
void adaptStep(const F& f, double a, double b, double tol, int depth, QuadResult& acc) {
    QuadResult p = gk15(f, a, b);
    acc.evals += p.evals;
    if (p.errEst <= tol || depth <= 0 || !(b - a > 1e-14 * (1.0 + std::abs(a)))) {
        if (p.errEst > tol) acc.converged = false;
        acc.value += p.value;
        acc.errEst += p.errEst;
        return;
    }
    double m = 0.5 * (a + b);
    adaptStep(f, a, m, 0.5 * tol, depth - 1, acc);
    adaptStep(f, m, b, 0.5 * tol, depth - 1, acc);
}
} // namespace detail

// Adaptive bisection on [a, b] until each panel's Kronrod-Gauss gap meets its share of tol.
template <class F>
QuadResult integrate(const F& f, double a, double b, double tol = 1e-12, int maxDepth = 40) {
    QuadResult acc;
    if (a == b) return acc;
    detail::adaptStep(f, a, b, tol, maxDepth, acc);
    return acc;
}

} // namespace tswave

#include "tswave/slow_mode.hpp"
#include "tswave/quadrature.hpp"

#include <cmath>

namespace tswave {

SlowBasis::SlowBasis(const ShearProfile& p, double M, cplx c, double tol, double ymax)
    : p_(&p), M_(M), c_(c), tol_(tol) {
    if (!(c.imag() > 0.0)) throw DomainError("slow mode needs Im c > 0");
    if (!(M >= 0.0 && M < 1.0)) throw DomainError("Mach number must lie in [0, 1)");
    ainf_ = 1.0 - M * M * (1.0 - c) * (1.0 - c);
    if (p.kind() == ProfileKind::Exponential) {
        const cplx e = 1.0 - c;
        const cplx a = 1.0 / (e * e), d = 1.0 / e;
        const double U1 = -std::expm1(-1.0);
        gOne_ = a * 1.0 + a * std::log(U1 - c) - d / (U1 - c);
    } else {
        auto f = [this](double X) {
            cplx w = p_->eval(X, 0) - c_;
            return 1.0 / (w * w);
        };
        int nk = static_cast<int>(std::ceil((ymax + 1.0) / knotStep_)) + 1;
        knotJ_.assign(nk, 0.0);
        for (int k = 1; k < nk; ++k) {
            QuadResult q = integrate(f, (k - 1) * knotStep_, k * knotStep_, tol_ * 1e-2);
            if (!q.converged) throw NumericalError("quadrature for J did not converge");
            knotJ_[k] = knotJ_[k - 1] + q.value;
        }
        cplx atOne = integrate(f, 0.0, 1.0, tol_ * 1e-2).value;
        for (auto& v : knotJ_) v -= atOne;
    }
    phiMinus0_ = phiMinus(0.0);
}

cplx SlowBasis::jFromKnots(double Y) const {
    int k = std::min(static_cast<int>(Y / knotStep_), static_cast<int>(knotJ_.size()) - 1);
    double Yk = k * knotStep_;
    auto f = [this](double X) {
        cplx w = p_->eval(X, 0) - c_;
        return 1.0 / (w * w);
    };
    QuadResult q = integrate(f, Yk, Y, tol_ * 1e-2);
    if (!q.converged) throw NumericalError("quadrature for J did not converge");
    return knotJ_[k] + q.value;
}

cplx SlowBasis::J(double Y) const {
    if (p_->kind() == ProfileKind::Exponential) {
        const cplx e = 1.0 - c_;
        const cplx a = 1.0 / (e * e), d = 1.0 / e;
        const cplx w = -std::expm1(-Y) - c_;
        return a * Y + a * std::log(w) - d / w - gOne_;
    }
    return jFromKnots(Y);
}

cplx SlowBasis::phiPlus(double Y) const { return p_->eval(Y, 0) - c_; }

cplx SlowBasis::phiMinus(double Y) const {
    cplx w = p_->eval(Y, 0) - c_;
    return w * (J(Y) - M_ * M_ * Y);
}

cplx SlowBasis::A(double Y) const {
    cplx w = p_->eval(Y, 0) - c_;
    return 1.0 - M_ * M_ * w * w;
}

cplx SlowBasis::I2(double Y) const {
    cplx w = p_->eval(Y, 0) - c_;
    cplx e = 1.0 - c_;
    return (e * e - w * w) / (2.0 * ainf_ * A(Y));
}

cplx SlowBasis::i1Integrand(double X) const {
    cplx a = A(X);
    return phiMinus(X) * p_->eval(X, 1) / (a * a);
}

cplx SlowBasis::I1(double Y) const {
    QuadResult q = integrate([this](double X) { return i1Integrand(X); }, 0.0, Y, tol_);
    if (!q.converged) throw NumericalError("quadrature for the corrector integral did not converge");
    return q.value;
}

CVec SlowBasis::I1OnGrid(const RVec& Y) const {
    CVec out(Y.size(), 0.0);
    const double span = Y.back() - Y.front();
    auto f = [this](double X) { return i1Integrand(X); };
    for (size_t i = 1; i < Y.size(); ++i) {
        double t = tol_ * std::max((Y[i] - Y[i - 1]) / span, 1e-3);
        QuadResult q = integrate(f, Y[i - 1], Y[i], t);
        if (!q.converged) throw NumericalError("quadrature for the corrector integral did not converge");
        out[i] = out[i - 1] + q.value;
    }
    return out;
}

std::pair<cplx, cplx> phiBasis(const FlowParams& prm, const ShearProfile& p, cplx c, double Y, double tol) {
    SlowBasis b(p, prm.M, c, tol, Y + 1.0);
    return {b.phiPlus(Y), b.phiMinus(Y)};
}

cplx corrector(const FlowParams& prm, const ShearProfile& p, cplx c, double Y, double tol) {
    SlowBasis b(p, prm.M, c, tol, Y + 1.0);
    cplx beta = prm.alpha() * std::sqrt(b.Ainf());
    cplx chi = -2.0 * (b.phiPlus(Y) * b.I1(Y) + b.phiMinus(Y) * b.I2(Y));
    return std::exp(-beta * Y) * chi;
}

SlowBoundary slowBoundary(const FlowParams& prm, const ShearProfile& p, cplx c, double tol) {
    SlowBasis b(p, prm.M, c, tol, 2.0);
    const double M2 = prm.M * prm.M;
    SlowBoundary r;
    r.beta = prm.alpha() * std::sqrt(b.Ainf());
    r.phiMinus0 = b.phiMinus0();
    double d[4];
    p.eval4(0.0, d);
    cplx Uc = d[0] - c;
    cplx A = 1.0 - M2 * Uc * Uc;
    cplx I2 = b.I2(0.0);
    cplx chi = -2.0 * r.phiMinus0 * I2;
    cplx chi1 = (d[1] * chi - 2.0 * A * I2) / Uc;
    cplx g = Uc + r.beta * chi;
    cplx g1 = d[1] + r.beta * chi1;
    r.Phi0 = g;
    r.dPhi0 = g1 - r.beta * g;
    cplx P = Uc * r.dPhi0 - r.Phi0 * d[1];
    r.rho0 = -M2 * P / A;
    return r;
}

SlowMode buildSlowMode(const FlowParams& prm, const ShearProfile& p, cplx c, const HalfLineGrid& grid, double tol) {
    prm.check();
    const RVec& Y = grid.nodes();
    const size_t N = Y.size();
    SlowBasis b(p, prm.M, c, tol, grid.ymax() + 1.0);
    const double M2 = prm.M * prm.M;
    const double al = prm.alpha();
    SlowMode s;
    s.Y = Y;
    s.c = c;
    s.alpha = al;
    s.M = prm.M;
    s.beta = al * std::sqrt(b.Ainf());
    s.beta1 = prm.beta1();
    const cplx be = s.beta;
    s.I1 = b.I1OnGrid(Y);
    s.I2.resize(N);
    s.phiPlusAlpha.resize(N);
    s.phiMinusAlpha.resize(N);
    s.phi1Alpha.resize(N);
    for (auto& v : s.Phi) v.resize(N);
    s.A.resize(N);
    s.Uc.resize(N);
    s.U1.resize(N);
    s.deficit.resize(N);
    s.W.resize(N);
    s.W1.resize(N);
    s.fluid = ModeBundle(N);
    auto& D = s.deriv;
    for (CVec* v : {&D.rho1, &D.rho2, &D.u1, &D.u2, &D.v1, &D.v2}) v->resize(N);

    for (size_t i = 0; i < N; ++i) {
        double d[4];
        p.eval4(Y[i], d);
        const cplx Uc = d[0] - c;
        const cplx A = 1.0 - M2 * Uc * Uc;
        if (std::abs(A) < 1e-8) throw DomainError("A(Y) vanishes on the grid");
        const cplx A1 = -2.0 * M2 * Uc * d[1];
        const cplx A2 = -2.0 * M2 * (d[1] * d[1] + Uc * d[2]);
        const cplx I1 = s.I1[i];
        const cplx I2 = b.I2(Y[i]);
        const cplx phm = b.phiMinus(Y[i]);
        const cplx E = std::exp(-be * Y[i]);

        // chi = e^{beta Y} phi_{1,alpha}; derivatives follow from the Wronskian identity.
        const cplx chi = -2.0 * (Uc * I1 + phm * I2);
        const cplx chi1 = (d[1] * chi - 2.0 * A * I2) / Uc;
        const cplx chi2 = (d[2] * chi - 2.0 * A1 * I2) / Uc + 2.0 * d[1] / A;
        const cplx n2p = d[3] * chi + d[2] * chi1 - 2.0 * A2 * I2 + 2.0 * A1 * Uc * d[1] / (A * A);
        const cplx chi3 = (n2p - d[1] * (chi2 - 2.0 * d[1] / A)) / Uc + 2.0 * d[2] / A - 2.0 * d[1] * A1 / (A * A);

        const cplx g = Uc + be * chi, g1 = d[1] + be * chi1, g2 = d[2] + be * chi2, g3 = d[3] + be * chi3;
        const cplx F0 = E * g;
        const cplx F1 = E * (g1 - be * g);
        const cplx F2 = E * (g2 - 2.0 * be * g1 + be * be * g);
        const cplx F3 = E * (g3 - 3.0 * be * g2 + 3.0 * be * be * g1 - be * be * be * g);

        const cplx P = Uc * F1 - F0 * d[1];
        const cplx P1 = Uc * F2 - F0 * d[2];
        const cplx P2 = d[1] * F2 + Uc * F3 - F1 * d[2] - F0 * d[3];
        const cplx W = P / A;
        const cplx W1 = P1 / A - P * A1 / (A * A);
        const cplx W2 = P2 / A - 2.0 * P1 * A1 / (A * A) - P * A2 / (A * A) + 2.0 * P * A1 * A1 / (A * A * A);
        const cplx r0 = -M2 * W, r1 = -M2 * W1, r2 = -M2 * W2;

        s.I2[i] = I2;
        s.phiPlusAlpha[i] = E * Uc;
        s.phiMinusAlpha[i] = E * phm;
        s.phi1Alpha[i] = E * chi;
        s.Phi[0][i] = F0;
        s.Phi[1][i] = F1;
        s.Phi[2][i] = F2;
        s.Phi[3][i] = F3;
        s.A[i] = A;
        s.Uc[i] = Uc;
        s.U1[i] = d[1];
        s.deficit[i] = p.deficit(s.Y[i]);
        s.W[i] = W;
        s.W1[i] = W1;
        s.fluid.rho[i] = r0;
        s.fluid.u[i] = F1 - Uc * r0;
        s.fluid.v[i] = -kI * al * F0;
        D.rho1[i] = r1;
        D.rho2[i] = r2;
        D.u1[i] = F2 - d[1] * r0 - Uc * r1;
        D.u2[i] = F3 - d[2] * r0 - 2.0 * d[1] * r1 - Uc * r2;
        D.v1[i] = -kI * al * F1;
        D.v2[i] = -kI * al * F2;
    }
    s.Phi0 = s.Phi[0][0];
    s.dPhi0 = s.Phi[1][0];
    s.rho0 = s.fluid.rho[0];
    return s;
}

CVec rayleighResidual(const SlowMode& s) {
    const size_t N = s.Y.size();
    CVec r(N);
    const cplx b2 = s.beta * s.beta;
    const double a2 = s.alpha * s.alpha;
    for (size_t i = 0; i < N; ++i) {
        const cplx A = s.A[i];
        const cplx E = std::exp(-s.beta * s.Y[i]);
        // beta^2 - alpha^2 A = alpha^2 M^2 (U - 1)(U + 1 - 2c), kept proportional to 1 - U far out.
        const cplx AinfMinusA = -s.M * s.M * s.deficit[i] * (s.Uc[i] + 1.0 - s.c);
        r[i] = -2.0 * b2 * s.U1[i] * s.phi1Alpha[i] / (A * A) + 4.0 * b2 * E * s.I2[i] +
               s.Uc[i] * a2 * AinfMinusA * s.Phi[0][i] / A;
    }
    return r;
}

CVec rayleighResidualDirect(const SlowMode& s) {
    const size_t N = s.Y.size();
    CVec r(N);
    const double a2 = s.alpha * s.alpha;
    for (size_t i = 0; i < N; ++i) r[i] = s.W1[i] - a2 * s.Uc[i] * s.Phi[0][i];
    return r;
}

} // namespace tswave

#include "tswave/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tswave {

namespace {

using Trip = Eigen::Triplet<cplx>;

CSparseR diagM(const CVec& d) {
    CSparseR m(d.size(), d.size());
    std::vector<Trip> t;
    for (size_t i = 0; i < d.size(); ++i) t.emplace_back(i, i, d[i]);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

CSparseR mul(const CSparseR& a, const CSparseR& b) {
    CSparseR r = a * b;
    return r;
}

CSparseR mul(const CSparseR& a, const CSparseR& b, const CSparseR& c) { return mul(mul(a, b), c); }

CVec apply(const CSparseR& m, const CVec& x) {
    CVec y(m.rows(), 0.0);
    for (int i = 0; i < m.outerSize(); ++i)
        for (CSparseR::InnerIterator it(m, i); it; ++it) y[i] += it.value() * x[it.col()];
    return y;
}

// Copies the rows of m into the block at (r0, c0), skipping the listed rows.
void addBlock(std::vector<Trip>& t, const CSparseR& m, int r0, int c0, const std::set<int>& skip = {}) {
    for (int i = 0; i < m.outerSize(); ++i) {
        if (skip.count(i)) continue;
        for (CSparseR::InnerIterator it(m, i); it; ++it) t.emplace_back(r0 + i, c0 + it.col(), it.value());
    }
}

void addRow(std::vector<Trip>& t, const CSparseR& m, int srcRow, int dstRow, int c0) {
    for (CSparseR::InnerIterator it(m, srcRow); it; ++it) t.emplace_back(dstRow, c0 + it.col(), it.value());
}

Eigen::VectorXcd toEigen(const CVec& v) { return Eigen::Map<const Eigen::VectorXcd>(v.data(), v.size()); }

CVec fromEigen(const Eigen::VectorXcd& v, size_t off, size_t n) {
    CVec r(n);
    for (size_t i = 0; i < n; ++i) r[i] = v[off + i];
    return r;
}

// Rows scaled to unit max modulus; returns the scale applied to each row.
RVec equilibrate(CSparse& m) {
    RVec sc(m.rows(), 0.0);
    for (int k = 0; k < m.outerSize(); ++k)
        for (CSparse::InnerIterator it(m, k); it; ++it) sc[it.row()] = std::max(sc[it.row()], std::abs(it.value()));
    for (auto& v : sc) v = v > 0 ? 1.0 / v : 1.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (CSparse::InnerIterator it(m, k); it; ++it) it.valueRef() *= sc[it.row()];
    return sc;
}

template <class LU>
RVec factorize(LU& lu, CSparse& m, const char* what) {
    RVec sc = equilibrate(m);
    lu.analyzePattern(m);
    lu.factorize(m);
    if (lu.info() != Eigen::Success) throw NumericalError(std::string("singular ") + what + " system");
    return sc;
}

void applyScale(Eigen::VectorXcd& r, const RVec& sc) {
    for (Eigen::Index i = 0; i < r.size(); ++i) r[i] *= sc[i];
}

// r - m x with the products accumulated in long double.
Eigen::VectorXcd residualExtended(const CSparse& m, const Eigen::VectorXcd& r, const Eigen::VectorXcd& x) {
    using lcplx = std::complex<long double>;
    std::vector<lcplx> acc(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) acc[i] = lcplx(r[i].real(), r[i].imag());
    for (int k = 0; k < m.outerSize(); ++k) {
        lcplx xk(x[k].real(), x[k].imag());
        for (CSparse::InnerIterator it(m, k); it; ++it)
            acc[it.row()] -= lcplx(it.value().real(), it.value().imag()) * xk;
    }
    Eigen::VectorXcd out(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i)
        out[i] = cplx(static_cast<double>(acc[i].real()), static_cast<double>(acc[i].imag()));
    return out;
}

// Scaled solve followed by iterative refinement with an extended-precision residual.
template <class LU>
Eigen::VectorXcd solveRefined(const LU& lu, const CSparse& m, const RVec& sc, Eigen::VectorXcd r) {
    applyScale(r, sc);
    Eigen::VectorXcd x = lu.solve(r);
    for (int it = 0; it < 6; ++it) {
        Eigen::VectorXcd dx = lu.solve(residualExtended(m, r, x));
        x += dx;
        if (dx.norm() <= 1e-15 * x.norm()) break;
    }
    return x;
}

CVec scaled(const CVec& a, cplx s) {
    CVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

} // namespace

HalfLineGrid modeGrid(const FlowParams& prm, cplx c, const ShearProfile& p, int n, double ymax, int order) {
    const double Ym = ymax > 0 ? ymax : std::max(40.0, 25.0 / prm.beta1());
    const double d = std::abs(prm.delta());
    const double z0 = std::abs(c) / d;
    // The sublayer mode decays like exp(-z0^{1/2} Y/|delta|) next to the wall.
    const double Lw = d / std::sqrt(std::max(z0, 1.0));
    double Yc = 0;
    if (c.real() > 0 && c.real() < 1) {
        double lo = 0, hi = 60;
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            double m = 0.5 * (lo + hi);
            (p.eval(m, 0) < c.real() ? lo : hi) = m;
        }
        Yc = 0.5 * (lo + hi);
    }
    const double wc = std::max(3.0 * std::abs(c.imag()) / p.eval(Yc, 1), Lw);
    GridSpec s;
    s.ymax = Ym;
    s.n = n;
    s.order = order;
    s.layers = {{0.0, 6.0 * Lw, 0.6}, {Yc, wc, 0.6}, {0.0, 3.0, 1.2}};
    return HalfLineGrid::graded(s);
}

ResolventSolver::ResolventSolver(const FlowParams& prm, const ShearProfile& p, cplx c, const HalfLineGrid& g)
    : prm_(prm), p_(&p), c_(c), g_(&g), N_(g.size()) {
    if (!(prm.M >= 0.0 && prm.M < 1.0)) throw DomainError("Mach number must lie in [0, 1)");
    if (!(prm.eps > 0.0 && prm.eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
    if (!(prm.lambda >= 0.0)) throw DomainError("bulk viscosity lambda must be >= 0");
    if (!(c.imag() > 0)) throw DomainError("resolvent solves need Im c > 0");
    al_ = prm.alpha();
    se_ = prm.sqrtEps();
    nn_ = prm.n();
    M2_ = prm.M * prm.M;
    const size_t n = N_;
    Uc_.resize(n); U1_.resize(n); U2_.resize(n); A_.resize(n); Ainv_.resize(n); A1_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double d[4];
        p.eval4(g[i], d);
        Uc_[i] = d[0] - c;
        U1_[i] = d[1];
        U2_[i] = d[2];
        A_[i] = 1.0 - M2_ * Uc_[i] * Uc_[i];
        if (std::abs(A_[i]) < 1e-8) throw DomainError("A(Y) vanishes on the grid");
        Ainv_[i] = 1.0 / A_[i];
        A1_[i] = -2.0 * M2_ * Uc_[i] * d[1];
    }
    D1_ = g.D(1).cast<cplx>();
    D2_ = g.D(2).cast<cplx>();
    I_.resize(n, n);
    I_.setIdentity();
    const double a2 = al_ * al_;
    const cplx ia = kI * al_;
    CSparseR Da = D2_ - a2 * I_;
    B_ = (kI / nn_) * mul(Da, D1_) + mul(diagM(Uc_), D1_) - diagM(U1_);
    os_ = mul(D1_, diagM(Ainv_), B_) - a2 * diagM(Uc_) - (ia * se_) * Da;
    CVec dAinv(n);
    for (size_t i = 0; i < n; ++i) dAinv[i] = -A1_[i] * Ainv_[i] * Ainv_[i];
    lam_ = mul(diagM(Ainv_), D2_) + mul(diagM(dAinv), D1_) - a2 * I_;

    const int last = static_cast<int>(n) - 1;
    {
        std::vector<Trip> t;
        addBlock(t, os_, 0, 0, {0, 1, last - 1, last});
        t.emplace_back(0, 0, 1.0);
        addRow(t, lam_, 0, 1, 0);
        t.emplace_back(last - 1, last, 1.0);
        addRow(t, D1_, last, last, 0);
        osClosed_.resize(n, n);
        osClosed_.setFromTriplets(t.begin(), t.end());
    }
}

void ResolventSolver::ensureOS() const {
    if (osLU_) return;
    auto lu = std::make_unique<LU>();
    osScaled_ = osClosed_;
    osScale_ = factorize(*lu, osScaled_, "Orr-Sommerfeld");
    osLU_ = std::move(lu);
}

void ResolventSolver::ensureStokes() const {
    if (stLU_) return;
    if (!(M2_ > 0)) throw DomainError("the Stokes system needs M > 0");
    const size_t n = N_;
    const int last = static_cast<int>(n) - 1;
    const double a2 = al_ * al_;
    const cplx ia = kI * al_;
    CSparseR Da = D2_ - a2 * I_;
    {
        const int m = static_cast<int>(n);
        const double lam = prm_.lambda;
        std::vector<Trip> t;
        addBlock(t, diagM(scaled(Uc_, ia)), 0, 0);
        addBlock(t, ia * I_, 0, m);
        addBlock(t, D1_, 0, 2 * m);
        CVec r2xi(n);
        for (size_t i = 0; i < n; ++i) r2xi[i] = -(ia / M2_ + se_ * U2_[i]);
        addBlock(t, diagM(r2xi), m, 0, {0, last});
        CSparseR r2phi = se_ * Da + (lam * ia * se_ * ia) * I_ - diagM(scaled(Uc_, ia));
        addBlock(t, r2phi, m, m, {0, last});
        addBlock(t, (lam * ia * se_) * D1_, m, 2 * m, {0, last});
        addRow(t, D1_, 0, m, m);
        t.emplace_back(m + last, m + last, 1.0);
        addBlock(t, (-1.0 / M2_) * D1_, 2 * m, 0, {0, last});
        addBlock(t, (lam * se_ * ia) * D1_, 2 * m, m, {0, last});
        CSparseR r3psi = se_ * Da + (lam * se_) * mul(D1_, D1_) - diagM(scaled(Uc_, ia));
        addBlock(t, r3psi, 2 * m, 2 * m, {0, last});
        t.emplace_back(2 * m, 2 * m, 1.0);
        t.emplace_back(2 * m + last, 2 * m + last, 1.0);
        stClosed_.resize(3 * n, 3 * n);
        stClosed_.setFromTriplets(t.begin(), t.end());
        auto lu = std::make_unique<LU>();
        stScaled_ = stClosed_;
        stScale_ = factorize(*lu, stScaled_, "Stokes");
        stLU_ = std::move(lu);
    }
}

CVec ResolventSolver::d1(const CVec& f) const { return apply(D1_, f); }
CVec ResolventSolver::d2(const CVec& f) const { return apply(D2_, f); }

CVec ResolventSolver::lambdaApply(const CVec& psi) const { return apply(lam_, psi); }

CVec ResolventSolver::lambdaInverse(const CVec& h) const {
    if (h.size() != N_) throw DomainError("grid function size mismatch");
    if (!lamLU_) {
        const int last = static_cast<int>(N_) - 1;
        std::vector<Trip> t;
        addBlock(t, lam_, 0, 0, {0, last});
        t.emplace_back(0, 0, 1.0);
        t.emplace_back(last, last, 1.0);
        lamScaled_.resize(N_, N_);
        lamScaled_.setFromTriplets(t.begin(), t.end());
        auto lu = std::make_unique<LU>();
        lamScale_ = factorize(*lu, lamScaled_, "Lambda");
        lamLU_ = std::move(lu);
    }
    CVec r = h;
    r.front() = 0;
    r.back() = 0;
    Eigen::VectorXcd x = solveRefined(*lamLU_, lamScaled_, lamScale_, toEigen(r));
    return fromEigen(x, 0, N_);
}

CSparseR ResolventSolver::classicalOsMatrix() const {
    const double a2 = al_ * al_;
    CSparseR Da = D2_ - a2 * I_;
    CSparseR vort = (kI / nn_) * mul(Da, D1_) + mul(diagM(Uc_), D1_) - diagM(U1_);
    return mul(D1_, vort) - a2 * diagM(Uc_) - (kI * al_ * se_) * Da;
}

CVec ResolventSolver::osApply(const CVec& Psi) const { return apply(os_, Psi); }

CVec ResolventSolver::solveOSCNS(const CVec& h) const {
    if (h.size() != N_) throw DomainError("grid function size mismatch");
    CVec r = h;
    r[0] = r[1] = r[N_ - 2] = r[N_ - 1] = 0.0;
    ensureOS();
    Eigen::VectorXcd x = solveRefined(*osLU_, osScaled_, osScale_, toEigen(r));
    return fromEigen(x, 0, N_);
}

CVec ResolventSolver::omegaSource(const CVec& fu, const CVec& fv) const {
    CVec t(N_);
    for (size_t i = 0; i < N_; ++i) t[i] = Ainv_[i] * fu[i];
    CVec dt = d1(t);
    CVec r(N_);
    const cplx k = 1.0 / (kI * al_);
    for (size_t i = 0; i < N_; ++i) r[i] = fv[i] - k * dt[i];
    return r;
}

ModeBundle ResolventSolver::reconstruct(const CVec& Psi, const CVec& s1) const {
    CVec bp = apply(B_, Psi);
    CVec m = d1(Psi);
    const cplx k = 1.0 / (kI * al_);
    ModeBundle b(N_);
    for (size_t i = 0; i < N_; ++i) {
        b.rho[i] = -M2_ * Ainv_[i] * (bp[i] + k * s1[i]);
        b.u[i] = m[i] - Uc_[i] * b.rho[i];
        b.v[i] = -kI * al_ * Psi[i];
    }
    return b;
}

ModeBundle ResolventSolver::solveQuasiCompressible(const CVec& s1, const CVec& s2) const {
    CVec Psi = solveOSCNS(omegaSource(s1, s2));
    return reconstruct(Psi, s1);
}

ModeBundle ResolventSolver::solveStokes(const CVec& q0, const CVec& q1, const CVec& q2) const {
    const size_t n = N_;
    Eigen::VectorXcd r(3 * n);
    for (size_t i = 0; i < n; ++i) {
        r[i] = q0[i];
        r[n + i] = q1[i];
        r[2 * n + i] = q2[i];
    }
    r[n] = r[2 * n - 1] = r[2 * n] = r[3 * n - 1] = 0.0;
    ensureStokes();
    Eigen::VectorXcd x = solveRefined(*stLU_, stScaled_, stScale_, r);
    ModeBundle b;
    b.rho = fromEigen(x, 0, n);
    b.u = fromEigen(x, n, n);
    b.v = fromEigen(x, 2 * n, n);
    return b;
}

Rows3 ResolventSolver::applyL(const ModeBundle& b) const {
    const cplx ia = kI * al_;
    const double a2 = al_ * al_, lam = prm_.lambda;
    CVec div(N_);
    CVec dv = d1(b.v);
    for (size_t i = 0; i < N_; ++i) div[i] = ia * b.u[i] + dv[i];
    CVec ddiv = d1(div), u2 = d2(b.u), v2 = d2(b.v), r1 = d1(b.rho);
    Rows3 r{CVec(N_), CVec(N_), CVec(N_)};
    for (size_t i = 0; i < N_; ++i) {
        r[0][i] = ia * Uc_[i] * b.rho[i] + div[i];
        r[1][i] = se_ * (u2[i] - a2 * b.u[i]) + lam * ia * se_ * div[i] - ia * Uc_[i] * b.u[i] - U1_[i] * b.v[i] -
                  (ia / M2_ + se_ * U2_[i]) * b.rho[i];
        r[2][i] = se_ * (v2[i] - a2 * b.v[i]) + lam * se_ * ddiv[i] - ia * Uc_[i] * b.v[i] - r1[i] / M2_;
    }
    return r;
}

Rows3 ResolventSolver::applyLQ(const ModeBundle& b) const {
    const cplx ia = kI * al_;
    const double a2 = al_ * al_;
    CVec m(N_);
    for (size_t i = 0; i < N_; ++i) m[i] = b.u[i] + Uc_[i] * b.rho[i];
    CVec dv = d1(b.v), m2 = d2(m), v2 = d2(b.v), r1 = d1(b.rho);
    Rows3 r{CVec(N_), CVec(N_), CVec(N_)};
    for (size_t i = 0; i < N_; ++i) {
        r[0][i] = ia * Uc_[i] * b.rho[i] + ia * b.u[i] + dv[i];
        r[1][i] = se_ * (m2[i] - a2 * m[i]) - ia * Uc_[i] * b.u[i] - U1_[i] * b.v[i] - ia / M2_ * b.rho[i];
        r[2][i] = se_ * (v2[i] - a2 * b.v[i]) - ia * Uc_[i] * b.v[i] - r1[i] / M2_;
    }
    return r;
}

Rows3 ResolventSolver::applyLS(const ModeBundle& b) const {
    Rows3 r = applyL(b);
    for (size_t i = 0; i < N_; ++i) r[1][i] += U1_[i] * b.v[i];
    return r;
}

Rows3 ResolventSolver::applyEQ(const ModeBundle& b) const {
    const cplx ia = kI * al_;
    const double a2 = al_ * al_, lam = prm_.lambda;
    CVec w(N_), div(N_);
    CVec dv = d1(b.v);
    for (size_t i = 0; i < N_; ++i) {
        w[i] = Uc_[i] * b.rho[i];
        div[i] = ia * b.u[i] + dv[i];
    }
    CVec w2 = d2(w), ddiv = d1(div);
    Rows3 r{CVec(N_, 0.0), CVec(N_), CVec(N_)};
    for (size_t i = 0; i < N_; ++i) {
        r[1][i] = -se_ * (w2[i] - a2 * w[i]) + lam * se_ * ia * div[i] - se_ * U2_[i] * b.rho[i];
        r[2][i] = lam * se_ * ddiv[i];
    }
    return r;
}

double ResolventSolver::l2(const CVec& f) const {
    const RVec& w = g_->weights();
    double s = 0;
    for (size_t i = 0; i < f.size(); ++i) s += w[i] * std::norm(f[i]);
    return std::sqrt(std::max(s, 0.0));
}

double ResolventSolver::l2(const ModeBundle& b) const {
    return std::sqrt(std::pow(l2(b.rho), 2) + std::pow(l2(b.u), 2) + std::pow(l2(b.v), 2));
}

double ResolventSolver::diagnosticNorm(const ModeBundle& s) const {
    const cplx ia = kI * al_;
    CVec div(N_);
    CVec dv = d1(s.v);
    for (size_t i = 0; i < N_; ++i) div[i] = ia * s.u[i] + dv[i];
    CVec ddiv = d1(div), dxi = d1(s.rho);
    const double M = prm_.M;
    double a = std::sqrt(std::pow(l2(s.rho) / M, 2) + std::pow(l2(s.u), 2) + std::pow(l2(s.v), 2));
    double b = std::sqrt(std::pow(l2(div), 2) + std::pow(l2(ddiv), 2)) / al_;
    double c = l2(dxi) / (M2_ * al_);
    return a + b + c;
}

ResolventSolution ResolventSolver::iterate(const CVec& fu, const CVec& fv, Branch br, double tol, int maxIter,
                                           const CVec* q0) const {
    if (fu.size() != N_ || fv.size() != N_) throw DomainError("source size mismatch");
    const CVec zero(N_, 0.0);
    if (br == Branch::H1) {
        ModeBundle Q0 = solveQuasiCompressible(fu, fv);
        Rows3 e = applyEQ(Q0);
        CVec m1 = scaled(e[1], -1.0), m2 = scaled(e[2], -1.0);
        ResolventSolution inner = iterate(m1, m2, Branch::L2, tol, maxIter, q0);
        ResolventSolution out;
        out.mode = axpy(Q0, 1.0, inner.mode);
        out.log = inner.log;
        out.residual = residual(out.mode, q0 ? *q0 : zero, fu, fv);
        out.residualFull = residual(out.mode, q0 ? *q0 : zero, fu, fv, true);
        return out;
    }
    ResolventSolution out;
    ModeBundle S = solveStokes(q0 ? *q0 : zero, fu, fv);
    ModeBundle total = S;
    double E0 = diagnosticNorm(S);
    out.log.E.push_back(E0);
    int bad = 0;
    for (int j = 0; j < maxIter; ++j) {
        if (out.log.E.back() <= tol * E0 || E0 == 0.0) {
            out.log.converged = true;
            break;
        }
        CVec s1(N_);
        for (size_t i = 0; i < N_; ++i) s1[i] = S.v[i] * U1_[i];
        ModeBundle Q = solveQuasiCompressible(s1, zero);
        Rows3 e = applyEQ(Q);
        S = solveStokes(zero, scaled(e[1], -1.0), scaled(e[2], -1.0));
        total = axpy(axpy(total, 1.0, Q), 1.0, S);
        double Ej = diagnosticNorm(S);
        out.log.ratios.push_back(Ej / out.log.E.back());
        out.log.E.push_back(Ej);
        out.log.steps = j + 1;
        bad = out.log.ratios.back() >= 1.0 ? bad + 1 : 0;
        if (bad >= 3) {
            out.mode = total;
            throw NumericalError("resolvent iteration does not contract (ratio >= 1 for 3 steps)");
        }
    }
    if (!out.log.converged && out.log.E.back() <= tol * E0) out.log.converged = true;
    out.mode = total;
    out.residual = residual(total, q0 ? *q0 : zero, fu, fv);
    out.residualFull = residual(total, q0 ? *q0 : zero, fu, fv, true);
    return out;
}

ModeBundle ResolventSolver::monolithic(const CVec& fu, const CVec& fv, const CVec* q0) const {
    const int m = static_cast<int>(N_), last = m - 1;
    const cplx ia = kI * al_;
    const double a2 = al_ * al_, lam = prm_.lambda;
    ensureStokes();
    std::vector<Trip> t;
    // Stokes rows with their closures.
    for (int k = 0; k < stClosed_.outerSize(); ++k)
        for (CSparse::InnerIterator it(stClosed_, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
    // rho of the reconstruction as a map of (Psi, psi).
    CSparseR PPsi = (-M2_) * mul(diagM(Ainv_), B_);
    CVec pp(N_);
    for (size_t i = 0; i < N_; ++i) pp[i] = -M2_ * Ainv_[i] * U1_[i] / ia;
    CSparseR Ppsi = diagM(pp);
    CSparseR Da = D2_ - a2 * I_;
    CSparseR G2 = (-se_) * mul(Da, diagM(Uc_)) + diagM(scaled(Uc_, lam * a2 * se_)) - diagM(scaled(U2_, se_));
    CSparseR G3 = (-lam * se_ * ia) * mul(D1_, diagM(Uc_));
    const std::set<int> sk = {0, last};
    addBlock(t, mul(G2, PPsi), m, 3 * m, sk);
    addBlock(t, mul(G2, Ppsi), m, 2 * m, sk);
    addBlock(t, mul(G3, PPsi), 2 * m, 3 * m, sk);
    addBlock(t, mul(G3, Ppsi), 2 * m, 2 * m, sk);
    // Stream-function rows: OS(Psi) - Omega(psi U', 0) = 0.
    for (int k = 0; k < osClosed_.outerSize(); ++k)
        for (CSparse::InnerIterator it(osClosed_, k); it; ++it)
            t.emplace_back(3 * m + it.row(), 3 * m + it.col(), it.value());
    CVec au(N_);
    for (size_t i = 0; i < N_; ++i) au[i] = Ainv_[i] * U1_[i] / ia;
    addBlock(t, mul(D1_, diagM(au)), 3 * m, 2 * m, {0, 1, last - 1, last});
    CSparse big(4 * N_, 4 * N_);
    big.setFromTriplets(t.begin(), t.end());
    LU lu;
    RVec sc = factorize(lu, big, "monolithic");
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(4 * N_);
    for (size_t i = 0; i < N_; ++i) {
        r[i] = q0 ? (*q0)[i] : 0.0;
        r[N_ + i] = fu[i];
        r[2 * N_ + i] = fv[i];
    }
    r[N_] = r[2 * N_ - 1] = r[2 * N_] = r[3 * N_ - 1] = 0.0;
    Eigen::VectorXcd x = solveRefined(lu, big, sc, r);
    ModeBundle S;
    S.rho = fromEigen(x, 0, N_);
    S.u = fromEigen(x, N_, N_);
    S.v = fromEigen(x, 2 * N_, N_);
    CVec Psi = fromEigen(x, 3 * N_, N_);
    CVec s1(N_);
    for (size_t i = 0; i < N_; ++i) s1[i] = S.v[i] * U1_[i];
    return axpy(S, 1.0, reconstruct(Psi, s1));
}

double ResolventSolver::residual(const ModeBundle& b, const CVec& q0, const CVec& fu, const CVec& fv,
                                 bool closureRows) const {
    Rows3 r = applyL(b);
    for (size_t i = 0; i < N_; ++i) {
        r[0][i] -= q0[i];
        r[1][i] -= fu[i];
        r[2][i] -= fv[i];
    }
    if (!closureRows) {
        // Rows replaced by boundary closures in the Stokes and stream-function systems.
        const size_t last = N_ - 1;
        r[1][0] = r[1][last] = 0.0;
        r[2][0] = r[2][1] = r[2][last - 1] = r[2][last] = 0.0;
    }
    double num = std::sqrt(std::pow(l2(r[0]), 2) + std::pow(l2(r[1]), 2) + std::pow(l2(r[2]), 2));
    double den = std::sqrt(std::pow(l2(q0), 2) + std::pow(l2(fu), 2) + std::pow(l2(fv), 2));
    return den > 0 ? num / den : num;
}

double conditionEstimate(const CSparse& A, Eigen::SparseLU<CSparse, Eigen::COLAMDOrdering<int>>& lu) {
    const int n = static_cast<int>(A.rows());
    double anorm = 0;
    for (int k = 0; k < A.outerSize(); ++k) {
        double s = 0;
        for (CSparse::InnerIterator it(A, k); it; ++it) s += std::abs(it.value());
        anorm = std::max(anorm, s);
    }
    // Hager's estimate of ||A^{-1}||_1.
    Eigen::VectorXcd x = Eigen::VectorXcd::Constant(n, 1.0 / n);
    double est = 0;
    int jprev = -1;
    for (int it = 0; it < 6; ++it) {
        Eigen::VectorXcd y = lu.solve(x);
        est = y.cwiseAbs().sum();
        Eigen::VectorXcd xi(n);
        for (int i = 0; i < n; ++i) xi[i] = std::abs(y[i]) > 0 ? y[i] / std::abs(y[i]) : cplx(1.0);
        Eigen::VectorXcd z = lu.adjoint().solve(xi);
        int j;
        double zmax = z.cwiseAbs().maxCoeff(&j);
        if (zmax <= std::real(z.dot(x)) || j == jprev) break;
        x.setZero();
        x[j] = 1.0;
        jprev = j;
    }
    return anorm * est;
}

double ResolventSolver::conditionOS() const {
    ensureOS();
    return conditionEstimate(osScaled_, *osLU_);
}

double ResolventSolver::conditionStokes() const {
    ensureStokes();
    return conditionEstimate(stScaled_, *stLU_);
}

} // namespace tswave

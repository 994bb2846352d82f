#include "tswave/profile.hpp"
#include "tswave/fd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tswave {

ShearProfile ShearProfile::exponential() {
    ShearProfile p;
    p.kind_ = ProfileKind::Exponential;
    return p;
}

ShearProfile ShearProfile::tanhProfile() {
    ShearProfile p;
    p.kind_ = ProfileKind::Tanh;
    return p;
}

ShearProfile ShearProfile::tabulated(RVec Y, RVec U) {
    if (Y.size() != U.size() || Y.size() < 8)
        throw DomainError("tabulated profile needs at least 8 matching (Y, U) samples");
    for (size_t i = 1; i < Y.size(); ++i)
        if (!(Y[i] > Y[i - 1])) throw DomainError("tabulated profile abscissae must increase");
    ShearProfile p;
    p.kind_ = ProfileKind::Tabulated;
    p.tabY_ = std::move(Y);
    p.tabU_ = std::move(U);
    return p;
}

ShearProfile ShearProfile::fromName(const std::string& name) {
    if (name == "exp" || name == "exponential") return exponential();
    if (name == "tanh") return tanhProfile();
    throw DomainError("unknown profile kind '" + name + "' (expected exp or tanh)");
}

std::string ShearProfile::name() const {
    switch (kind_) {
    case ProfileKind::Exponential: return "exponential";
    case ProfileKind::Tanh: return "tanh";
    default: return "tabulated";
    }
}

double ShearProfile::tabulatedDeriv(double Y, int order) const {
    // Six-point local fit; beyond the table the last value is held flat.
    const int N = static_cast<int>(tabY_.size());
    if (Y >= tabY_.back()) return order == 0 ? tabU_.back() : 0.0;
    int i = static_cast<int>(std::upper_bound(tabY_.begin(), tabY_.end(), Y) - tabY_.begin()) - 1;
    i = std::max(i, 0);
    const int n = 6;
    int s = stencilStart(i, n, N);
    auto w = fornbergWeights(Y, tabY_.data() + s, n, order);
    double v = 0;
    for (int j = 0; j < n; ++j) v += w[order][j] * tabU_[s + j];
    return v;
}

double ShearProfile::eval(double Y, int order) const {
    if (order < 0 || order > maxOrder())
        throw DomainError("profile derivative order " + std::to_string(order) + " not supported");
    if (!(Y >= 0.0) || !std::isfinite(Y)) throw DomainError("profile evaluated at negative or non-finite Y");
    switch (kind_) {
    case ProfileKind::Exponential: {
        double e = std::exp(-Y);
        if (order == 0) return -std::expm1(-Y);
        return (order % 2 == 1) ? e : -e;
    }
    case ProfileKind::Tanh: {
        double t = std::tanh(Y);
        double s = 1.0 - t * t;
        switch (order) {
        case 0: return t;
        case 1: return s;
        case 2: return -2.0 * t * s;
        case 3: return -2.0 * s * s + 4.0 * t * t * s;
        default: return 16.0 * t * s * s - 8.0 * t * t * t * s;
        }
    }
    default:
        return tabulatedDeriv(Y, order);
    }
}

double ShearProfile::deficit(double Y) const {
    if (kind_ == ProfileKind::Exponential) return std::exp(-Y);
    if (kind_ == ProfileKind::Tanh) return 2.0 / (std::exp(2.0 * Y) + 1.0);
    return 1.0 - eval(Y, 0);
}

void ShearProfile::eval4(double Y, double out[4]) const {
    if (kind_ == ProfileKind::Exponential) {
        double e = std::exp(-Y);
        out[0] = -std::expm1(-Y);
        out[1] = e;
        out[2] = -e;
        out[3] = e;
        return;
    }
    for (int k = 0; k < 4; ++k) out[k] = eval(Y, k);
}

double evalProfile(const ShearProfile& p, double Y, int order) { return p.eval(Y, order); }

RVec validationGrid(double Ymax, int N) {
    if (N < 16 || !(Ymax > 1.0)) throw DomainError("validation grid needs N >= 16 and Ymax > 1");
    RVec g;
    g.reserve(N);
    g.push_back(0.0);
    int ng = N / 4;
    for (int k = 0; k < ng; ++k) g.push_back(1e-4 * std::pow(1e4, static_cast<double>(k) / ng));
    int nu = N - 1 - ng;
    for (int k = 0; k < nu; ++k) g.push_back(1.0 + (Ymax - 1.0) * k / (nu - 1.0));
    return g;
}

double structuralH(double U, double U1, double U2, double M) {
    double M2 = M * M;
    return (-U2 * (1.0 - M2 * U * U) - 2.0 * M2 * U * U1 * U1) / (std::abs(U2) + U1 * U1);
}

double w0MinusUw1Direct(double U, double U1, double U2, double M) {
    double M2 = M * M;
    double H = structuralH(U, U1, U2, M);
    double D = U1 * U1 + std::abs(U2);
    double a = 1.0 - M2 * U * U;
    double w0 = a * a / (H * D);
    double w1 = 4.0 * M2 * U * a / (H * D) - 2.0 * M2 * a * a * (U1 * U1 - U * U2) / (H * H * D * D);
    return w0 - U * w1;
}

double w0MinusUw1Factored(double U, double U1, double U2, double M) {
    double M2 = M * M;
    double H = structuralH(U, U1, U2, M);
    double D = U1 * U1 + std::abs(U2);
    double a = 1.0 - M2 * U * U;
    double brace = (1.0 - 3.0 * M2 * U * U) * a * std::abs(U2) + 8.0 * M2 * M2 * U * U * U * U1 * U1;
    return a / (H * H * D * D) * brace;
}

ValidationReport validate(const ShearProfile& p, double M, const RVec& grid) {
    if (!(M >= 0.0 && M < 1.0)) throw DomainError("Mach number must lie in [0, 1)");
    if (grid.size() < 16) throw DomainError("validation grid too small");
    ValidationReport r;
    const double inf = std::numeric_limits<double>::infinity();
    const double Ymax = grid.back();

    bool a0 = std::abs(p.eval(0.0, 0)) < 1e-12 && std::abs(p.eval(0.0, 1) - 1.0) < 1e-12;
    double prevU = -inf;
    for (double Y : grid) {
        double U = p.eval(Y, 0), U1 = p.eval(Y, 1);
        if (Y > 0 && !(U > 0)) a0 = false;
        if (!(U1 > 0) || U < prevU) a0 = false;   // U rounds to 1 far out, so ties are allowed
        prevU = U;
    }
    if (!(1.0 - p.eval(Ymax, 0) < 1e-6)) a0 = false;
    r.passA0 = a0;

    // s0: least-squares slope of log U' over the outer half of the grid.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (double Y : grid) {
        if (Y < 0.5 * Ymax) continue;
        double U1 = p.eval(Y, 1);
        if (!(U1 > 0)) continue;
        double ly = std::log(U1);
        sx += Y; sy += ly; sxx += Y * Y; sxy += Y * ly;
        ++cnt;
    }
    if (cnt >= 2) r.s0 = -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    r.s1 = inf;
    r.s2 = 0;
    for (double Y : grid) {
        double v = p.eval(Y, 1) * std::exp(r.s0 * Y);
        r.s1 = std::min(r.s1, v);
        r.s2 = std::max(r.s2, v);
    }
    r.passA2 = r.s0 > 0 && r.s1 > 0 && std::isfinite(r.s2);

    r.minH = inf;
    r.sigma2 = 0;
    r.a3Sum = 0;
    double minCurv = inf;
    for (double Y : grid) {
        double d[4];
        p.eval4(Y, d);
        double H = structuralH(d[0], d[1], d[2], M);
        if (H < r.minH) { r.minH = H; r.argMinH = Y; }
        double q1 = d[2] != 0.0 ? std::abs(d[3] / d[2]) : inf;
        double q2 = std::abs(d[2]) / d[1];
        // 1 - U is pure rounding once it drops below ~1e-8; the ratio is not resolvable there.
        double q3 = 1.0 - d[0] > 1e-8 ? (1.0 - d[0]) / d[1] : 0.0;
        r.sigma2 = std::max({r.sigma2, q1, q2, q3});
        r.a3Sum = std::max(r.a3Sum, q1 + q2 + q3);
        minCurv = std::min(minCurv, -d[2] / (d[1] * d[1]));
    }
    r.sigma1 = p.kind() == ProfileKind::Exponential ? 0.5 * (1.0 - M * M) : std::max(r.minH, 0.0);
    r.passA1 = r.sigma1 > 0 && r.minH >= r.sigma1 - 1e-10;
    r.passA3 = std::isfinite(r.sigma2);
    r.concavityMargin = minCurv - r.sigma1 / (1.0 - M * M);
    r.passA4 = r.sigma1 > 0 && r.concavityMargin >= -1e-10;
    return r;
}

StructuralFunctions structural(const ShearProfile& p, double M, cplx c, const RVec& grid) {
    if (!(c.imag() > 0.0) && c != cplx(0.0))
        throw DomainError("structural functions need Im c > 0 (c = 0 admitted for testing)");
    StructuralFunctions s;
    s.Y = grid;
    const double M2 = M * M;
    s.Ainf = 1.0 - M2 * (1.0 - c) * (1.0 - c);
    const size_t n = grid.size();
    s.A.resize(n); s.H.resize(n); s.w.resize(n); s.w0.resize(n); s.w1.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double d[4];
        p.eval4(grid[i], d);
        cplx Uc = d[0] - c;
        cplx A = 1.0 - M2 * Uc * Uc;
        if (std::abs(A) < 1e-8) throw DomainError("A(Y) vanishes on the grid");
        cplx A1 = -2.0 * M2 * Uc * d[1];
        cplx dAU = d[2] / A - d[1] * A1 / (A * A);
        s.A[i] = A;
        s.w[i] = -1.0 / dAU;
        s.H[i] = structuralH(d[0], d[1], d[2], M);
        double D = d[1] * d[1] + std::abs(d[2]);
        double a = 1.0 - M2 * d[0] * d[0];
        double H = s.H[i];
        s.w0[i] = a * a / (H * D);
        s.w1[i] = 4.0 * M2 * d[0] * a / (H * D) - 2.0 * M2 * a * a * (d[1] * d[1] - d[0] * d[2]) / (H * H * D * D);
    }
    return s;
}

PositivityResult positivityCheck(const StructuralFunctions& s, const ShearProfile& p, double M) {
    PositivityResult r;
    r.warning = M * M >= 1.0 / 3.0;
    r.margin = std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (size_t i = 0; i < s.Y.size(); ++i) {
        double U = p.eval(s.Y[i], 0);
        double U2 = std::abs(p.eval(s.Y[i], 2));
        double v = (s.w0[i] - U * s.w1[i]) * U2;
        r.margin = std::min(r.margin, v);
        double q = s.w0[i] * U2;
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    r.boundC = std::max(hi, 1.0 / lo);
    return r;
}

} // namespace tswave

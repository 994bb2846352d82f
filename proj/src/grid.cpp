#include "tswave/grid.hpp"
#include "tswave/fd.hpp"

#include <algorithm>
#include <cmath>

namespace tswave {

namespace {

RSparse derivativeOperator(const RVec& y, int k, int order) {
    const int N = static_cast<int>(y.size());
    const int n = std::min(N, k + order);
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<size_t>(N) * n);
    for (int i = 0; i < N; ++i) {
        int s = stencilStart(i, n, N);
        auto w = fornbergWeights(y[i], y.data() + s, n, k);
        for (int j = 0; j < n; ++j)
            if (w[k][j] != 0.0) t.emplace_back(i, s + j, w[k][j]);
    }
    RSparse D(N, N);
    D.setFromTriplets(t.begin(), t.end());
    return D;
}

// Integrates the local interpolant over each interval with 4-point Gauss-Legendre.
RVec quadratureWeights(const RVec& y, int order) {
    static const double gx[4] = {-0.861136311594052575, -0.339981043584856265, 0.339981043584856265,
                                 0.861136311594052575};
    static const double gw[4] = {0.347854845137453857, 0.652145154862546143, 0.652145154862546143,
                                 0.347854845137453857};
    const int N = static_cast<int>(y.size());
    const int n = std::min(N, std::min(order + 2, 8));
    RVec w(N, 0.0);
    for (int i = 0; i + 1 < N; ++i) {
        double a = y[i], b = y[i + 1];
        int s = std::clamp(i - (n - 2) / 2, 0, N - n);
        for (int g = 0; g < 4; ++g) {
            double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[g];
            auto L = fornbergWeights(x, y.data() + s, n, 0);
            for (int j = 0; j < n; ++j) w[s + j] += 0.5 * (b - a) * gw[g] * L[0][j];
        }
    }
    return w;
}

} // namespace

HalfLineGrid::HalfLineGrid(RVec nodes, int order) : y_(std::move(nodes)), order_(order) {
    if (y_.size() < 9) throw DomainError("grid needs at least 9 nodes");
    if (order < 2 || order > 8) throw DomainError("finite-difference order must lie in [2, 8]");
    if (y_.front() != 0.0) throw DomainError("grid must start at Y = 0");
    for (size_t i = 1; i < y_.size(); ++i)
        if (!(y_[i] > y_[i - 1])) throw DomainError("grid nodes must increase strictly");
    for (int k = 1; k <= 4; ++k) d_.push_back(derivativeOperator(y_, k, order_));
    w_ = quadratureWeights(y_, order_);
}

HalfLineGrid HalfLineGrid::uniform(double ymax, int n, int order) {
    RVec y(n + 1);
    for (int i = 0; i <= n; ++i) y[i] = ymax * i / n;
    return HalfLineGrid(std::move(y), order);
}

HalfLineGrid HalfLineGrid::graded(const GridSpec& spec) {
    if (!(spec.ymax > 0) || spec.n < 8) throw DomainError("graded grid needs ymax > 0 and n >= 8");
    const double Ym = spec.ymax;
    struct L {
        double c, w, amp;
    };
    std::vector<L> ls;
    for (const auto& g : spec.layers) {
        if (!(g.width > 0) || g.fraction <= 0) continue;
        double mass = g.width * (std::atan((Ym - g.center) / g.width) + std::atan(g.center / g.width));
        ls.push_back({g.center, g.width, g.fraction * Ym / mass});
    }
    // Cumulative density G(Y) = Y + sum amp * w * atan((Y - c)/w) + const.
    auto G = [&](double Y) {
        double v = Y;
        for (const auto& l : ls) v += l.amp * l.w * (std::atan((Y - l.c) / l.w) + std::atan(l.c / l.w));
        return v;
    };
    auto g = [&](double Y) {
        double v = 1.0;
        for (const auto& l : ls) {
            double x = (Y - l.c) / l.w;
            v += l.amp / (1.0 + x * x);
        }
        return v;
    };
    const double Gt = G(Ym);
    RVec y(spec.n + 1);
    y[0] = 0.0;
    y[spec.n] = Ym;
    double Y = 0.0;
    for (int i = 1; i < spec.n; ++i) {
        double target = Gt * i / spec.n;
        // Safeguarded Newton on the monotone map G.
        double lo = y[i - 1], hi = Ym;
        Y = std::max(Y, lo);
        for (int it = 0; it < 200; ++it) {
            double f = G(Y) - target;
            if (f > 0) hi = Y; else lo = Y;
            double Yn = Y - f / g(Y);
            if (!(Yn > lo && Yn < hi)) Yn = 0.5 * (lo + hi);
            if (std::abs(Yn - Y) <= 1e-15 * (1.0 + Y)) { Y = Yn; break; }
            Y = Yn;
        }
        y[i] = Y;
    }
    return HalfLineGrid(std::move(y), spec.order);
}

const RSparse& HalfLineGrid::D(int k) const {
    if (k < 1 || k > 4) throw DomainError("derivative order must lie in 1..4");
    return d_[k - 1];
}

CVec HalfLineGrid::diff(const CVec& f, int k) const {
    if (f.size() != y_.size()) throw DomainError("grid function size mismatch");
    const RSparse& D = this->D(k);
    CVec out(f.size(), 0.0);
    for (int i = 0; i < D.outerSize(); ++i)
        for (RSparse::InnerIterator it(D, i); it; ++it) out[i] += it.value() * f[it.col()];
    return out;
}

RVec HalfLineGrid::diff(const RVec& f, int k) const {
    if (f.size() != y_.size()) throw DomainError("grid function size mismatch");
    const RSparse& D = this->D(k);
    RVec out(f.size(), 0.0);
    for (int i = 0; i < D.outerSize(); ++i)
        for (RSparse::InnerIterator it(D, i); it; ++it) out[i] += it.value() * f[it.col()];
    return out;
}

cplx HalfLineGrid::integrate(const CVec& f) const {
    cplx s = 0;
    for (size_t i = 0; i < f.size(); ++i) s += w_[i] * f[i];
    return s;
}

double HalfLineGrid::integrate(const RVec& f) const {
    double s = 0;
    for (size_t i = 0; i < f.size(); ++i) s += w_[i] * f[i];
    return s;
}

int HalfLineGrid::nodesBelow(double y) const {
    return static_cast<int>(std::upper_bound(y_.begin(), y_.end(), y) - y_.begin());
}

HalfLineGrid buildGrid(double ymax, int n, double sublayerWidth, int order) {
    if (n < 256) throw DomainError("grid needs N >= 256");
    if (!(sublayerWidth > 0)) throw DomainError("sublayer width must be positive");
    GridSpec spec;
    spec.ymax = ymax;
    spec.n = n;
    spec.order = order;
    spec.layers.push_back({0.0, 6.0 * sublayerWidth, 0.8});
    HalfLineGrid g = HalfLineGrid::graded(spec);
    if (g.nodesBelow(3.0 * sublayerWidth) - 1 < 12)
        throw DomainError("fewer than 12 nodes inside 3 sublayer widths; increase N");
    return g;
}

} // namespace tswave

#pragma once

#include "tswave/types.hpp"

#include <Eigen/Sparse>

namespace tswave {

using RSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using CSparse = Eigen::SparseMatrix<cplx>;

// A clustering layer for the graded grid: Lorentzian node density of the given width
// around center, holding about fraction * Ymax extra nodes-worth of density.
struct GridLayer {
    double center = 0;
    double width = 1;
    double fraction = 0.5;
};

struct GridSpec {
    double ymax = 40;
    int n = 2048;        // number of intervals; nodes = n + 1
    int order = 4;       // finite-difference order of accuracy
    std::vector<GridLayer> layers;
};

// Nodes 0 = Y_0 < ... < Y_N = Y_max with banded Fornberg derivative operators
// up to fourth order and matching quadrature weights.
class HalfLineGrid {
public:
    HalfLineGrid() = default;
    HalfLineGrid(RVec nodes, int order);

    static HalfLineGrid uniform(double ymax, int n, int order = 4);
    static HalfLineGrid graded(const GridSpec& spec);

    const RVec& nodes() const { return y_; }
    size_t size() const { return y_.size(); }
    double ymax() const { return y_.back(); }
    int order() const { return order_; }
    double operator[](size_t i) const { return y_[i]; }

    // k-th derivative operator, k = 1..4.
    const RSparse& D(int k) const;
    const RVec& weights() const { return w_; }

    CVec diff(const CVec& f, int k) const;
    RVec diff(const RVec& f, int k) const;
    cplx integrate(const CVec& f) const;
    double integrate(const RVec& f) const;
    int nodesBelow(double y) const;

private:
    RVec y_;
    int order_ = 4;
    std::vector<RSparse> d_;
    RVec w_;
};

// Graded grid clustered in a wall layer of the given width; checks sublayer resolution.
HalfLineGrid buildGrid(double ymax, int n, double sublayerWidth, int order = 4);

} // namespace tswave

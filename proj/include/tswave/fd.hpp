#pragma once

#include "tswave/types.hpp"

namespace tswave {

// Finite-difference weights on arbitrary nodes (Fornberg's recursion).
// Returns w[k][j]: weight of node j in the k-th derivative at x0, k = 0..m.
std::vector<RVec> fornbergWeights(double x0, const double* x, int n, int m);

// Start index of an n-point stencil around node i on a grid of size N,
// centred where possible and shifted inward near the ends.
int stencilStart(int i, int n, int N);

} // namespace tswave

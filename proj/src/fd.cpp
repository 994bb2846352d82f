#include "tswave/fd.hpp"

#include <algorithm>

namespace tswave {

std::vector<RVec> fornbergWeights(double x0, const double* x, int n, int m) {
    std::vector<RVec> c(m + 1, RVec(n, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

int stencilStart(int i, int n, int N) {
    int s = i - n / 2;
    if (s < 0) s = 0;
    if (s + n > N) s = N - n;
    return s;
}

} // namespace tswave

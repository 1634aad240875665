// SPDX-License-Identifier: Apache-2.0
#include "trimdiff/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace trimdiff::quadrature {

GaussLegendre::GaussLegendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("GaussLegendre: order must be >= 1");
    nodes.resize(n);
    weights.resize(n);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence for P_n(x) and derivative
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

GaussLegendre GaussLegendre::mapped(double a, double b) const
{
    GaussLegendre g = *this;
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        g.nodes[i] = mid + half * nodes[i];
        g.weights[i] = half * weights[i];
    }
    return g;
}

}  // namespace trimdiff::quadrature

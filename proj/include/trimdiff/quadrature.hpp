// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace trimdiff::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial from the Chebyshev initial guess.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n);

    // affine map to [a, b]
    GaussLegendre mapped(double a, double b) const;
};

}  // namespace trimdiff::quadrature

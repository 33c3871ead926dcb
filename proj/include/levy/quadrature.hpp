#pragma once

#include <cstddef>
#include <vector>

namespace levy {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [lo, hi]; nodes ascending.
QuadratureRule gauss_legendre(std::size_t n, double lo, double hi);

}  // namespace levy

#include "levy/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "levy/error.hpp"

namespace levy {

QuadratureRule gauss_legendre(std::size_t n, double lo, double hi)
{
    if (n < 1) throw Error(ErrorCode::InvalidParameter, "quadrature needs at least one node");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorCode::InvalidParameter, "quadrature interval must be finite with lo < hi");
    }
    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    const std::size_t pairs = (n + 1) / 2;
    const double dn = static_cast<double>(n);

    for (std::size_t i = 0; i < pairs; ++i) {
        // Tricomi's initial guess for the i-th largest root of P_n.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double dk = static_cast<double>(k);
                const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            // P_n'(x) from the recurrence (1 - x^2) P_n' = n (P_{n-1} - x P_n).
            dp = dn * (p0 - x * p1) / (1.0 - x * x);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16) break;
        }
        {
            // One more evaluation at the converged root for the weight.
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double dk = static_cast<double>(k);
                const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = dn * (p0 - x * p1) / (1.0 - x * x);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const std::size_t hi_idx = n - 1 - i;
        rule.nodes[hi_idx] = mid + half * x;
        rule.nodes[i] = mid - half * x;
        rule.weights[hi_idx] = half * w;
        rule.weights[i] = half * w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = mid;
    return rule;
}

}  // namespace levy

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace singmc {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// m-point Gauss-Jacobi rule on (0, 1) for the weight t^p (1 - t)^q,
/// p, q > -1, by Golub-Welsch on the Jacobi recurrence.
QuadratureRule gauss_jacobi(std::size_t m, double p, double q);

/// m-point Gauss-Legendre rule on (0, 1).
QuadratureRule gauss_legendre(std::size_t m);

enum class QuadScheme { gauss_jacobi, power_substitution };

QuadScheme parse_quad_scheme(std::string_view name);
std::string_view to_string(QuadScheme scheme) noexcept;

/// A rule for integrals of f(t) t^p (1 - t)^q over (0, 1).
///
/// gauss_jacobi: the m-point Gauss-Jacobi rule.
/// power_substitution: (0, 1/2] and [1/2, 1) handled separately; on each
/// half t^p (resp. (1-t)^q) is removed by the substitution
/// t = w^{r/(p+1)} / 2, r = kPowerGrading, and the rest integrated by
/// m-point Gauss-Legendre. r = 1 is the plain power substitution; larger r
/// smooths f(t(w)) near the endpoint at the price of a w^{r-1} Jacobian.
inline constexpr double kPowerGrading = 3.0;
QuadratureRule weighted_rule(QuadScheme scheme, std::size_t m, double p, double q);

}  // namespace singmc

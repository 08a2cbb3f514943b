#pragma once

#include <cstddef>
#include <span>

#include "singmc/estimate.hpp"
#include "singmc/quadrature.hpp"
#include "singmc/specfun.hpp"

namespace singmc {

struct QuadSpec {
    std::size_t nodes_per_axis = 32;
    QuadScheme scheme = QuadScheme::gauss_jacobi;
};

struct QuadResult {
    /// Value with nodes_per_axis nodes.
    double value = 0.0;
    /// Value with 2 * nodes_per_axis nodes.
    double refined = 0.0;
    /// |refined - value|.
    double convergence = 0.0;
};

inline constexpr std::size_t kMaxOracleSimplexDim = 3;
inline constexpr std::size_t kMaxOracleBallDim = 2;

/// Deterministic I[z] for n <= 3.
///
/// In increment variables u_k = s_k - s_{k-1} the domain is the unit
/// simplex. Level k scales u_k = L_k v_k over the remaining length L_k, so
/// v_k carries the weight v^{-a_k} (1 - v)^{c_k} with
/// c_k = sum_{j>k} (1 - a_j); every power singularity is then absorbed by
/// the one-dimensional rule and the tensor product integrates a smooth
/// function.
QuadResult quad_volterra(const Integrand& z, const AlphaVector& alpha, const QuadSpec& spec);

/// Deterministic J[z] for n <= 2 (polar coordinates with t = sin^2 phi on
/// each quadrant for n = 2).
QuadResult quad_ball(const Integrand& z, const BallExponents& exponents, const QuadSpec& spec);

/// Exact E[prod s_k^{p_k}] under the polygonal beta law, from the increment
/// moments of Dirichlet(1 - a_1, ..., 1 - a_n, 1).
double dirichlet_moment(const AlphaVector& alpha, std::span<const unsigned> powers);

/// I[prod s_k^{p_k}] = K_{n,S} * dirichlet_moment.
double volterra_monomial_integral(const AlphaVector& alpha, std::span<const unsigned> powers);

}  // namespace singmc

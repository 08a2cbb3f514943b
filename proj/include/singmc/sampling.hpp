#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "singmc/rng.hpp"
#include "singmc/specfun.hpp"

namespace singmc {

/// A point of the open ordered simplex 0 < s_1 < ... < s_n < 1.
struct SimplexPoint {
    std::vector<double> s;

    static bool in_support(std::span<const double> s) noexcept;
};

/// A point of the closed unit ball sum x_k^2 <= 1.
struct BallPoint {
    std::vector<double> x;

    static bool in_support(std::span<const double> x) noexcept;
};

/// How the polygonal beta law is realized.
///
/// chain: kappa_n ~ U^{1/b_n}, then kappa_k = kappa_{k+1} * Beta(b_k, 1 - a_{k+1})
///        for k = n-1 .. 1 (marginal/conditional recursion).
/// increments: s_k = (G_1 + ... + G_k) / (G_1 + ... + G_{n+1}) with
///        G_k ~ Gamma(1 - a_k) and a closing G_{n+1} ~ Gamma(1).
enum class SamplingMethod { chain, increments };

SamplingMethod parse_sampling_method(std::string_view name);
std::string_view to_string(SamplingMethod method) noexcept;

/// Retry budget for rejecting boundary-degenerate draws before giving up
/// with NumericalError. Only exponents within ~1e-3 of the integrability
/// limit come anywhere near it.
inline constexpr int kMaxRedraws = 10000;

/// Inverse CDF of the power law with density (1 - a) x^{-a} on (0, 1).
double power_inverse_cdf(double alpha1, double u);

/// Inverse CDF of Beta(1/2, 1/2): 0.5 + 0.5 sin(pi (u - 1/2)).
double arcsine_inverse_cdf(double u) noexcept;

/// Power-law variate in the open interval (0, 1). Requires alpha1 < 1.
double sample_power(double alpha1, RngStream& rng);

/// Gamma(shape, 1) variate. Marsaglia-Tsang squeeze for shape >= 1,
/// boosted as G_a = G_{a+1} U^{1/a} for shape < 1.
double sample_gamma(double shape, RngStream& rng);

/// Beta(a, b) variate in (0, 1); a = b = 1/2 uses the arcsine inverse CDF.
double sample_beta(double a, double b, RngStream& rng);

/// Polygonal beta draw written into out (size alpha.size()).
void sample_polygonal_beta_into(const AlphaVector& alpha, RngStream& rng, SamplingMethod method,
                                std::span<double> out);
SimplexPoint sample_polygonal_beta(const AlphaVector& alpha, RngStream& rng,
                                   SamplingMethod method = SamplingMethod::chain);

/// Ball beta draw: a Dirichlet(y; (A_k + 1)/2, closing 1) point mapped to
/// x_k = +-sqrt(y_k) with independent fair signs.
void sample_ball_beta_into(const BallExponents& exponents, RngStream& rng, std::span<double> out);
BallPoint sample_ball_beta(const BallExponents& exponents, RngStream& rng);

/// Sorted uniforms: the uniform law on S(n). Ties are re-drawn.
void sample_uniform_simplex_into(RngStream& rng, std::span<double> out);
SimplexPoint sample_uniform_simplex(std::size_t n, RngStream& rng);

}  // namespace singmc

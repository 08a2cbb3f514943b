#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace singmc {

/// Margin kept between an exponent and the point where the gamma-function
/// normalization diverges.
inline constexpr double kIntegrabilityMargin = 1e-9;

/// Singularity exponents for the ordered simplex 0 < s_1 < ... < s_n < 1.
///
/// The kernel is s_1^{-a_1} (s_2 - s_1)^{-a_2} ... (s_n - s_{n-1})^{-a_n}.
/// Every exponent must satisfy a_k < 1 - kIntegrabilityMargin. Negative
/// exponents are allowed (the kernel is then bounded).
class AlphaVector {
public:
    /// Throws DomainError on an empty vector, a non-finite entry, or an
    /// entry that violates the integrability bound.
    explicit AlphaVector(std::vector<double> alpha);

    std::size_t size() const noexcept { return alpha_.size(); }
    std::span<const double> values() const noexcept { return alpha_; }
    double operator[](std::size_t k) const noexcept { return alpha_[k]; }

    /// 1 - a_k, the gamma shape of the k-th increment.
    double shape(std::size_t k) const noexcept { return 1.0 - alpha_[k]; }

    /// b_k = sum_{j<=k} (1 - a_j), zero-based k.
    double cumulative_shape(std::size_t k) const noexcept { return cumulative_[k]; }

    bool all_zero() const noexcept;
    bool any_at_least(double threshold) const noexcept;

private:
    std::vector<double> alpha_;
    std::vector<double> cumulative_;
};

/// Monomial exponents A for the unit ball. D = sum A_k + n must be positive
/// and each A_k > -1 + kIntegrabilityMargin.
class BallExponents {
public:
    explicit BallExponents(std::vector<double> exponents);

    std::size_t size() const noexcept { return a_.size(); }
    std::span<const double> values() const noexcept { return a_; }
    double operator[](std::size_t k) const noexcept { return a_[k]; }

    /// Dirichlet shape (A_k + 1) / 2 of the squared k-th coordinate.
    double half_shape(std::size_t k) const noexcept { return 0.5 * (a_[k] + 1.0); }
    double degree() const noexcept { return degree_; }

private:
    std::vector<double> a_;
    double degree_;
};

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// ln K_{n,S}: log of the integral of the simplex kernel over S(n).
double log_simplex_constant(const AlphaVector& alpha);

/// K_{n,S} = prod Gamma(1 - a_k) / Gamma(1 + sum(1 - a_k)).
/// Throws NumericalError if the value leaves the double range.
double simplex_constant(const AlphaVector& alpha);

/// W_n(beta) = Gamma(beta)^n / Gamma(1 + n beta), beta in (0, 1].
double w_n(double beta, std::size_t n);

double log_ball_constant(const BallExponents& exponents);

/// K_{n,B} = prod Gamma((A_k + 1)/2) / Gamma(D/2 + 1), the integral of
/// |x_1|^{A_1} ... |x_n|^{A_n} over the unit ball.
double ball_constant(const BallExponents& exponents);

/// Volume of S(n), 1/n!.
double simplex_volume(std::size_t n);

}  // namespace singmc

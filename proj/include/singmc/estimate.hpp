#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "singmc/parallel.hpp"
#include "singmc/sampling.hpp"
#include "singmc/specfun.hpp"

namespace singmc {

/// z(s) on the simplex or z(x) on the ball. `evaluate` must be safe to call
/// concurrently from several threads.
struct Integrand {
    std::size_t arity;
    std::function<double(std::span<const double>)> evaluate;
};

struct EstimateOptions {
    std::size_t samples = 100000;
    double confidence = 0.95;
    std::uint64_t seed = 0;
    /// Worker w draws from RngStream(seed, w); results depend on the worker
    /// count but not on the execution policy.
    std::size_t workers = 1;
    Execution execution = Execution::openmp;
    SamplingMethod method = SamplingMethod::chain;
    /// Drop points where the integrand is not finite instead of aborting.
    /// Biases the estimate; the number dropped is reported.
    bool skip_nonfinite = false;
};

struct EstimateReport {
    double estimate = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t n_samples = 0;
    /// Multiplier applied to the sample mean: K_{n,S}, K_{n,B}, or 1/n!.
    double constant = 0.0;
    /// Empirical E[(constant * value)^2].
    double second_moment = 0.0;
    std::uint64_t seed = 0;
    std::size_t n_workers = 0;
    /// Set when the population variance may be infinite (direct estimator
    /// with some alpha_k >= 1/2).
    bool unreliable = false;
    std::size_t n_skipped = 0;
};

/// Standard normal quantile.
double normal_quantile(double p);

/// R(s) = s_1^{-a_1} prod_{k>1} (s_k - s_{k-1})^{-a_k}.
double volterra_kernel(const AlphaVector& alpha, std::span<const double> s);

/// I[z] = K_{n,S} E z(kappa), kappa polygonal beta.
EstimateReport estimate_volterra(const Integrand& z, const AlphaVector& alpha,
                                 const EstimateOptions& options);

/// J[z] = K_{n,B} E z(zeta), zeta ball beta.
EstimateReport estimate_ball(const Integrand& z, const BallExponents& exponents,
                             const EstimateOptions& options);

/// The uniform-sampling representation I[z] = (1/n!) E[z(eta) R(eta)],
/// eta uniform on S(n). Its variance is infinite once some alpha_k >= 1/2.
EstimateReport estimate_direct(const Integrand& z, const AlphaVector& alpha,
                               const EstimateOptions& options);

}  // namespace singmc

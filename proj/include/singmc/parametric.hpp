#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "singmc/parallel.hpp"
#include "singmc/sampling.hpp"
#include "singmc/specfun.hpp"

namespace singmc {

/// z(s, theta): a family of simplex integrands indexed by a parameter
/// vector of dimension param_dim. Must be safe for concurrent calls.
struct ParamIntegrand {
    std::size_t arity;
    std::size_t param_dim;
    std::function<double(std::span<const double> s, std::span<const double> theta)> evaluate;
};

/// One axis of a tensor-product grid: `count` evenly spaced values from
/// start to stop inclusive (count == 1 gives just start).
struct GridAxis {
    double start;
    double stop;
    std::size_t count;
};

/// Finite discretization of the parameter space: m >= 1 distinct points of
/// a common dimension d.
class ThetaGrid {
public:
    explicit ThetaGrid(std::vector<std::vector<double>> points);

    /// Tensor product of the axes; the last axis varies fastest.
    static ThetaGrid from_axes(std::span<const GridAxis> axes);

    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dim() const noexcept { return points_.front().size(); }
    std::span<const double> operator[](std::size_t j) const noexcept { return points_[j]; }
    const std::vector<std::vector<double>>& points() const noexcept { return points_; }

private:
    std::vector<std::vector<double>> points_;
};

struct ParamOptions {
    std::size_t samples = 100000;
    double confidence = 0.95;
    std::size_t gaussian_draws = 10000;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    Execution execution = Execution::openmp;
    SamplingMethod method = SamplingMethod::chain;
};

/// Jitter schedule for factorizing the estimated covariance: relative to
/// trace/m, starting at the first value and growing x10 up to the last.
inline constexpr double kJitterStart = 1e-12;
inline constexpr double kJitterMax = 1e-6;

/// Gaussian draws are generated in fixed-size chunks, chunk c from stream
/// kGaussianStreamBase + c, so the sup quantile does not depend on the
/// worker count.
inline constexpr std::size_t kGaussianChunk = 1024;
inline constexpr std::uint64_t kGaussianStreamBase = std::uint64_t{1} << 63;

struct ParamBandReport {
    std::vector<double> q_hat;
    /// Uniform half-width: sup_quantile / sqrt(n_samples).
    double band_halfwidth = 0.0;
    /// Estimated covariance of the limiting Gaussian field on the grid.
    Eigen::MatrixXd covariance;
    double sup_quantile = 0.0;
    std::size_t n_samples = 0;
    std::size_t n_gaussian_draws = 0;
    std::uint64_t seed = 0;
    /// Relative diagonal jitter that made the factorization succeed.
    double jitter = 0.0;
};

/// Dependent-trial estimate of Q(theta_j) = K E z(kappa, theta_j) on every
/// grid point from one shared sample set, with a simultaneous band
/// calibrated by simulating sup_j |xi_j| for xi ~ N(0, covariance).
ParamBandReport estimate_parametric(const ParamIntegrand& z, const AlphaVector& alpha,
                                    const ThetaGrid& grid, const ParamOptions& options);

/// The shared sample set estimate_parametric draws for the same options,
/// flattened row-major (samples x n).
std::vector<double> draw_common_samples(const AlphaVector& alpha, const ParamOptions& options);

/// Sup-norm quantile of a mean-zero Gaussian vector with the given
/// covariance, from `draws` simulated vectors. Writes the jitter used.
double gaussian_sup_quantile(const Eigen::MatrixXd& covariance, double level, std::size_t draws,
                             std::uint64_t seed, std::size_t workers, Execution execution,
                             double* jitter_used = nullptr);

struct RhoEstimate {
    Eigen::MatrixXd rho;
    std::size_t skipped = 0;
};

/// Max over probe points of |z(s, theta_j) - z(s, theta_k)| / Y(s), where
/// Y(s) = max_j |z(s, theta_j)| over the grid. Probe points with Y(s) = 0
/// are skipped and counted.
RhoEstimate estimate_rho(const ParamIntegrand& z, const ThetaGrid& grid,
                         std::span<const SimplexPoint> probe);

}  // namespace singmc

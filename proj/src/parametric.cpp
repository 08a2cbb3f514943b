#include "singmc/parametric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "singmc/errors.hpp"

namespace singmc {

ThetaGrid::ThetaGrid(std::vector<std::vector<double>> points) : points_(std::move(points)) {
    if (points_.empty()) throw DomainError("parameter grid needs at least one point");
    const std::size_t d = points_.front().size();
    for (const auto& p : points_) {
        if (p.size() != d) throw DomainError("parameter grid points must share one dimension");
        for (double v : p)
            if (!std::isfinite(v)) throw DomainError("parameter grid points must be finite");
    }
    auto sorted = points_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("parameter grid points must be distinct");
}

ThetaGrid ThetaGrid::from_axes(std::span<const GridAxis> axes) {
    if (axes.empty()) throw DomainError("parameter grid needs at least one axis");
    std::vector<std::vector<double>> points{{}};
    for (const auto& axis : axes) {
        if (axis.count < 1) throw DomainError("grid axis count must be at least 1");
        std::vector<std::vector<double>> next;
        next.reserve(points.size() * axis.count);
        for (const auto& prefix : points) {
            for (std::size_t i = 0; i < axis.count; ++i) {
                const double t = axis.count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(axis.count - 1);
                auto p = prefix;
                p.push_back(i + 1 == axis.count && axis.count > 1 ? axis.stop
                                                                  : axis.start + t * (axis.stop - axis.start));
                next.push_back(std::move(p));
            }
        }
        points = std::move(next);
    }
    return ThetaGrid(std::move(points));
}

namespace {

void validate(const ParamIntegrand& z, const AlphaVector& alpha, const ThetaGrid& grid,
              const ParamOptions& o) {
    if (!z.evaluate) throw UsageError("integrand has no evaluation function");
    if (z.arity != alpha.size()) throw UsageError("integrand arity does not match alpha dimension");
    if (z.param_dim > grid.dim()) {
        std::ostringstream os;
        os << "integrand uses " << z.param_dim << " parameters but the grid has dimension " << grid.dim();
        throw UsageError(os.str());
    }
    if (o.samples < 2) throw UsageError("at least 2 samples are required");
    if (o.gaussian_draws < 1000) throw UsageError("at least 1000 Gaussian draws are required");
    if (!(o.confidence > 0.0 && o.confidence < 1.0)) throw UsageError("confidence must lie in (0, 1)");
    if (o.workers < 1) throw UsageError("at least one worker is required");
}

// Upper-triangle index of (j, k), j <= k.
inline std::size_t tri(std::size_t j, std::size_t k, std::size_t m) noexcept {
    return j * m - j * (j + 1) / 2 + k;
}

struct CrossMoments {
    std::vector<CompensatedSum> sum;
    std::vector<CompensatedSum> cross;

    explicit CrossMoments(std::size_t m) : sum(m), cross(m * (m + 1) / 2) {}

    void merge(const CrossMoments& o) {
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i].merge(o.sum[i]);
        for (std::size_t i = 0; i < cross.size(); ++i) cross[i].merge(o.cross[i]);
    }
};

// Type-7 sample quantile (linear interpolation between order statistics).
double interpolated_quantile(std::vector<double>& values, double level) {
    std::sort(values.begin(), values.end());
    const double h = level * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace

std::vector<double> draw_common_samples(const AlphaVector& alpha, const ParamOptions& o) {
    const std::size_t n = alpha.size();
    const Partition partition{o.samples, o.workers};
    std::vector<double> out(o.samples * n);
    for_each_worker(o.workers, o.execution, [&](std::size_t w) {
        RngStream rng(o.seed, w);
        const std::size_t first = partition.offset(w);
        for (std::size_t i = 0; i < partition.count(w); ++i)
            sample_polygonal_beta_into(alpha, rng, o.method,
                                       std::span<double>(out).subspan((first + i) * n, n));
    });
    return out;
}

double gaussian_sup_quantile(const Eigen::MatrixXd& covariance, double level, std::size_t draws,
                             std::uint64_t seed, std::size_t workers, Execution execution,
                             double* jitter_used) {
    const auto m = covariance.rows();
    const double trace = covariance.trace();
    if (jitter_used) *jitter_used = 0.0;
    if (!(trace > 0.0)) return 0.0;

    Eigen::MatrixXd factor;
    bool factored = false;
    for (double rel = kJitterStart; rel <= kJitterMax * (1.0 + 1e-9); rel *= 10.0) {
        Eigen::MatrixXd jittered = covariance;
        jittered.diagonal().array() += rel * trace / static_cast<double>(m);
        Eigen::LLT<Eigen::MatrixXd> llt(jittered);
        if (llt.info() == Eigen::Success) {
            factor = llt.matrixL();
            factored = true;
            if (jitter_used) *jitter_used = rel;
            break;
        }
    }
    if (!factored)
        throw NumericalError(
            "covariance factorization failed even with maximal jitter; increase the number of samples");

    std::vector<double> sups(draws);
    const std::size_t chunks = (draws + kGaussianChunk - 1) / kGaussianChunk;
    for_each_worker(workers, execution, [&](std::size_t w) {
        Eigen::VectorXd normal(m), field(m);
        for (std::size_t c = w; c < chunks; c += workers) {
            RngStream rng(seed, kGaussianStreamBase + c);
            const std::size_t end = std::min(draws, (c + 1) * kGaussianChunk);
            for (std::size_t i = c * kGaussianChunk; i < end; ++i) {
                for (Eigen::Index j = 0; j < m; ++j) normal[j] = rng.normal();
                field.noalias() = factor.triangularView<Eigen::Lower>() * normal;
                sups[i] = field.cwiseAbs().maxCoeff();
            }
        }
    });
    return interpolated_quantile(sups, level);
}

ParamBandReport estimate_parametric(const ParamIntegrand& z, const AlphaVector& alpha,
                                    const ThetaGrid& grid, const ParamOptions& o) {
    validate(z, alpha, grid, o);
    const std::size_t n = alpha.size();
    const std::size_t m = grid.size();
    const double constant = simplex_constant(alpha);
    const Partition partition{o.samples, o.workers};
    std::vector<CrossMoments> partial(o.workers, CrossMoments(m));

    for_each_worker(o.workers, o.execution, [&](std::size_t w) {
        RngStream rng(o.seed, w);
        std::vector<double> point(n), values(m);
        CrossMoments& acc = partial[w];
        for (std::size_t i = 0; i < partition.count(w); ++i) {
            sample_polygonal_beta_into(alpha, rng, o.method, point);
            for (std::size_t j = 0; j < m; ++j) {
                values[j] = z.evaluate(point, grid[j]);
                if (!std::isfinite(values[j])) throw NonFiniteIntegrand(point, values[j]);
            }
            for (std::size_t j = 0; j < m; ++j) {
                acc.sum[j].add(values[j]);
                for (std::size_t k = j; k < m; ++k) acc.cross[tri(j, k, m)].add(values[j] * values[k]);
            }
        }
    });

    CrossMoments total(m);
    for (const auto& p : partial) total.merge(p);

    ParamBandReport r;
    const double nd = static_cast<double>(o.samples);
    r.q_hat.resize(m);
    for (std::size_t j = 0; j < m; ++j) r.q_hat[j] = constant * (total.sum[j].value() / nd);
    r.covariance.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j; k < m; ++k) {
            double c = constant * constant * (total.cross[tri(j, k, m)].value() / nd) - r.q_hat[j] * r.q_hat[k];
            if (j == k) c = std::max(c, 0.0);
            r.covariance(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = c;
            r.covariance(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = c;
        }
    }
    r.sup_quantile = gaussian_sup_quantile(r.covariance, o.confidence, o.gaussian_draws, o.seed, o.workers,
                                           o.execution, &r.jitter);
    r.band_halfwidth = r.sup_quantile / std::sqrt(nd);
    r.n_samples = o.samples;
    r.n_gaussian_draws = o.gaussian_draws;
    r.seed = o.seed;
    return r;
}

RhoEstimate estimate_rho(const ParamIntegrand& z, const ThetaGrid& grid,
                         std::span<const SimplexPoint> probe) {
    if (probe.empty()) throw DomainError("rho estimation needs at least one probe point");
    if (!z.evaluate) throw UsageError("integrand has no evaluation function");
    const std::size_t m = grid.size();
    RhoEstimate out;
    out.rho = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    std::vector<double> values(m);
    for (const auto& p : probe) {
        double envelope = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            values[j] = z.evaluate(p.s, grid[j]);
            envelope = std::max(envelope, std::abs(values[j]));
        }
        if (!(envelope > 0.0) || !std::isfinite(envelope)) {
            ++out.skipped;
            continue;
        }
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                const double d = std::abs(values[j] - values[k]) / envelope;
                auto& cell = out.rho(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
                cell = std::max(cell, d);
                out.rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = cell;
            }
    }
    if (out.skipped == probe.size())
        throw DomainError("every probe point had a zero envelope Y(s); rho is undefined");
    return out;
}

}  // namespace singmc

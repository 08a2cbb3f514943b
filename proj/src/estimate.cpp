#include "singmc/estimate.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <sstream>
#include <vector>

#include "singmc/errors.hpp"

namespace singmc {

std::string_view to_string(Execution execution) noexcept {
    return execution == Execution::serial ? "serial" : "openmp";
}

bool openmp_enabled() noexcept {
#if defined(_OPENMP)
    return true;
#else
    return false;
#endif
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal quantile requires p in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double volterra_kernel(const AlphaVector& alpha, std::span<const double> s) {
    double r = std::pow(s[0], -alpha[0]);
    for (std::size_t k = 1; k < alpha.size(); ++k) r *= std::pow(s[k] - s[k - 1], -alpha[k]);
    return r;
}

namespace {

void validate(const Integrand& z, std::size_t dim, const EstimateOptions& o) {
    if (!z.evaluate) throw UsageError("integrand has no evaluation function");
    if (z.arity != dim) {
        std::ostringstream os;
        os << "integrand arity " << z.arity << " does not match domain dimension " << dim;
        throw UsageError(os.str());
    }
    if (o.samples < 2) throw UsageError("at least 2 samples are required");
    if (!(o.confidence > 0.0 && o.confidence < 1.0)) throw UsageError("confidence must lie in (0, 1)");
    if (o.workers < 1) throw UsageError("at least one worker is required");
}

// draw(rng, point) fills the point and returns the weight multiplying z.
template <class Draw>
EstimateReport run_estimator(const Integrand& z, std::size_t dim, double constant,
                             const EstimateOptions& o, Draw draw) {
    const Partition partition{o.samples, o.workers};
    std::vector<Moments> partial(o.workers);
    std::vector<std::size_t> skipped(o.workers, 0);

    for_each_worker(o.workers, o.execution, [&](std::size_t w) {
        RngStream rng(o.seed, w);
        std::vector<double> point(dim);
        Moments local;
        std::size_t local_skipped = 0;
        const std::size_t count = partition.count(w);
        for (std::size_t i = 0; i < count; ++i) {
            const double weight = draw(rng, std::span<double>(point));
            const double v = z.evaluate(point) * weight;
            if (!std::isfinite(v)) {
                if (!o.skip_nonfinite) throw NonFiniteIntegrand(point, v);
                ++local_skipped;
                continue;
            }
            local.add(v);
        }
        partial[w] = local;
        skipped[w] = local_skipped;
    });

    Moments total;
    std::size_t total_skipped = 0;
    for (std::size_t w = 0; w < o.workers; ++w) {
        total.merge(partial[w]);
        total_skipped += skipped[w];
    }
    if (total.count() == 0) throw NumericalError("every sampled point was skipped as non-finite");

    EstimateReport r;
    r.n_samples = total.count();
    r.n_skipped = total_skipped;
    r.constant = constant;
    r.estimate = constant * total.mean();
    r.std_error = constant * std::sqrt(total.variance() / static_cast<double>(total.count()));
    r.second_moment = constant * constant * total.mean_of_squares();
    const double q = normal_quantile(0.5 * (1.0 + o.confidence));
    r.ci_low = r.estimate - q * r.std_error;
    r.ci_high = r.estimate + q * r.std_error;
    r.seed = o.seed;
    r.n_workers = o.workers;
    return r;
}

}  // namespace

EstimateReport estimate_volterra(const Integrand& z, const AlphaVector& alpha,
                                 const EstimateOptions& options) {
    validate(z, alpha.size(), options);
    return run_estimator(z, alpha.size(), simplex_constant(alpha), options,
                         [&](RngStream& rng, std::span<double> p) {
                             sample_polygonal_beta_into(alpha, rng, options.method, p);
                             return 1.0;
                         });
}

EstimateReport estimate_ball(const Integrand& z, const BallExponents& exponents,
                             const EstimateOptions& options) {
    validate(z, exponents.size(), options);
    return run_estimator(z, exponents.size(), ball_constant(exponents), options,
                         [&](RngStream& rng, std::span<double> p) {
                             sample_ball_beta_into(exponents, rng, p);
                             return 1.0;
                         });
}

EstimateReport estimate_direct(const Integrand& z, const AlphaVector& alpha,
                               const EstimateOptions& options) {
    validate(z, alpha.size(), options);
    auto report = run_estimator(z, alpha.size(), simplex_volume(alpha.size()), options,
                                [&](RngStream& rng, std::span<double> p) {
                                    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
                                        sample_uniform_simplex_into(rng, p);
                                        const double r = volterra_kernel(alpha, p);
                                        if (std::isfinite(r)) return r;
                                    }
                                    throw NumericalError("direct estimator: kernel not finite after redraws");
                                });
    report.unreliable = alpha.any_at_least(0.5);
    return report;
}

}  // namespace singmc

#include "singmc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "singmc/errors.hpp"

namespace singmc {

bool SimplexPoint::in_support(std::span<const double> s) noexcept {
    if (s.empty() || !(s.front() > 0.0) || !(s.back() < 1.0)) return false;
    for (std::size_t k = 1; k < s.size(); ++k)
        if (!(s[k - 1] < s[k])) return false;
    return true;
}

bool BallPoint::in_support(std::span<const double> x) noexcept {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return !x.empty() && r2 <= 1.0;
}

SamplingMethod parse_sampling_method(std::string_view name) {
    if (name == "chain") return SamplingMethod::chain;
    if (name == "increments") return SamplingMethod::increments;
    throw UsageError("unknown sampling method '" + std::string(name) + "' (expected chain or increments)");
}

std::string_view to_string(SamplingMethod method) noexcept {
    return method == SamplingMethod::chain ? "chain" : "increments";
}

namespace {

[[noreturn]] void redraw_budget_exhausted(const char* what) {
    std::ostringstream os;
    os << what << ": no interior point after " << kMaxRedraws
       << " draws (exponents too close to the integrability limit)";
    throw NumericalError(os.str());
}

void require_positive_shape(double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        std::ostringstream os;
        os << name << " must be a finite positive shape, got " << v;
        throw DomainError(os.str());
    }
}

double gamma_at_least_one(double shape, RngStream& rng) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

double power_inverse_cdf(double alpha1, double u) {
    if (!std::isfinite(alpha1) || !(alpha1 < 1.0)) {
        std::ostringstream os;
        os << "power law requires alpha_1 < 1, got " << alpha1;
        throw DomainError(os.str());
    }
    return std::pow(u, 1.0 / (1.0 - alpha1));
}

double arcsine_inverse_cdf(double u) noexcept {
    return 0.5 + 0.5 * std::sin(std::numbers::pi * (u - 0.5));
}

double sample_power(double alpha1, RngStream& rng) {
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const double x = power_inverse_cdf(alpha1, rng.uniform());
        if (x > 0.0 && x < 1.0) return x;
    }
    redraw_budget_exhausted("power law sampler");
}

double sample_gamma(double shape, RngStream& rng) {
    require_positive_shape(shape, "gamma shape");
    if (shape == 1.0) return -std::log(rng.uniform());
    if (shape > 1.0) return gamma_at_least_one(shape, rng);
    const double boosted = gamma_at_least_one(shape + 1.0, rng);
    return boosted * std::pow(rng.uniform(), 1.0 / shape);
}

double sample_beta(double a, double b, RngStream& rng) {
    require_positive_shape(a, "beta parameter a");
    require_positive_shape(b, "beta parameter b");
    if (a == 0.5 && b == 0.5) {
        for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
            const double x = arcsine_inverse_cdf(rng.uniform());
            if (x > 0.0 && x < 1.0) return x;
        }
        redraw_budget_exhausted("beta sampler");
    }
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const double g1 = sample_gamma(a, rng);
        const double g2 = sample_gamma(b, rng);
        const double x = g1 / (g1 + g2);
        if (x > 0.0 && x < 1.0) return x;
    }
    redraw_budget_exhausted("beta sampler");
}

void sample_polygonal_beta_into(const AlphaVector& alpha, RngStream& rng, SamplingMethod method,
                                std::span<double> out) {
    const std::size_t n = alpha.size();
    if (out.size() != n) throw UsageError("output span size does not match alpha dimension");
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        if (method == SamplingMethod::chain) {
            out[n - 1] = std::pow(rng.uniform(), 1.0 / alpha.cumulative_shape(n - 1));
            for (std::size_t k = n - 1; k-- > 0;)
                out[k] = out[k + 1] * sample_beta(alpha.cumulative_shape(k), alpha.shape(k + 1), rng);
        } else {
            double total = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                total += sample_gamma(alpha.shape(k), rng);
                out[k] = total;
            }
            total += -std::log(rng.uniform());
            for (std::size_t k = 0; k < n; ++k) out[k] /= total;
        }
        if (SimplexPoint::in_support(out)) return;
    }
    redraw_budget_exhausted("polygonal beta sampler");
}

SimplexPoint sample_polygonal_beta(const AlphaVector& alpha, RngStream& rng, SamplingMethod method) {
    SimplexPoint p{std::vector<double>(alpha.size())};
    sample_polygonal_beta_into(alpha, rng, method, p.s);
    return p;
}

void sample_ball_beta_into(const BallExponents& exponents, RngStream& rng, std::span<double> out) {
    const std::size_t n = exponents.size();
    if (out.size() != n) throw UsageError("output span size does not match exponent dimension");
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        double total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = sample_gamma(exponents.half_shape(k), rng);
            total += out[k];
        }
        total += -std::log(rng.uniform());
        bool on_hyperplane = false;
        for (std::size_t k = 0; k < n; ++k) {
            const double y = out[k] / total;
            on_hyperplane = on_hyperplane || !(y > 0.0);
            out[k] = rng.bit() ? std::sqrt(y) : -std::sqrt(y);
        }
        if (!on_hyperplane && BallPoint::in_support(out)) return;
    }
    redraw_budget_exhausted("ball beta sampler");
}

BallPoint sample_ball_beta(const BallExponents& exponents, RngStream& rng) {
    BallPoint p{std::vector<double>(exponents.size())};
    sample_ball_beta_into(exponents, rng, p.x);
    return p;
}

void sample_uniform_simplex_into(RngStream& rng, std::span<double> out) {
    if (out.empty()) throw DomainError("uniform simplex sampler requires n >= 1");
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        for (double& v : out) v = rng.uniform();
        std::sort(out.begin(), out.end());
        if (SimplexPoint::in_support(out)) return;
    }
    redraw_budget_exhausted("uniform simplex sampler");
}

SimplexPoint sample_uniform_simplex(std::size_t n, RngStream& rng) {
    if (n < 1) throw DomainError("uniform simplex sampler requires n >= 1");
    SimplexPoint p{std::vector<double>(n)};
    sample_uniform_simplex_into(rng, p.s);
    return p;
}

}  // namespace singmc

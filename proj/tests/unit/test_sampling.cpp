#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "singmc/errors.hpp"
#include "singmc/sampling.hpp"
#include "support/stats.hpp"

using namespace singmc;
using namespace singmc::test;

namespace {

std::vector<double> random_alpha(RngStream& rng, std::size_t n) {
    std::vector<double> a(n);
    for (auto& v : a) v = -0.5 + 1.45 * rng.uniform();
    return a;
}

std::vector<double> coordinate(const AlphaVector& alpha, SamplingMethod m, std::uint64_t seed,
                               std::size_t k, std::size_t count) {
    RngStream rng(seed, 0);
    std::vector<double> out(count), p(alpha.size());
    for (auto& v : out) {
        sample_polygonal_beta_into(alpha, rng, m, p);
        v = p[k];
    }
    return out;
}

}  // namespace

TEST_CASE("power inverse cdf spot values") {
    CHECK(power_inverse_cdf(0.0, 0.37) == 0.37);
    CHECK(power_inverse_cdf(0.5, 0.25) == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK_THROWS_AS(power_inverse_cdf(1.0, 0.5), DomainError);
    CHECK(arcsine_inverse_cdf(0.5) == 0.5);
    CHECK(arcsine_inverse_cdf(0.25) == doctest::Approx(0.5 - 0.5 * std::sqrt(0.5)));
}

TEST_CASE("sample_power follows x^{1-alpha}") {
    RngStream rng(5, 0);
    const std::size_t n = 1000000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = sample_power(0.5, rng);
    CHECK(ks_statistic(xs, [](double x) { return std::sqrt(x); }) < ks_critical_01(n));
    CHECK_THROWS_AS(sample_power(1.0, rng), DomainError);
}

TEST_CASE("sample_gamma matches the gamma cdf") {
    for (double shape : {0.05, 0.3, 0.5, 1.0, 1.7, 4.0, 30.0}) {
        CAPTURE(shape);
        RngStream rng(6, static_cast<std::uint64_t>(shape * 100));
        const std::size_t n = 100000;
        std::vector<double> xs(n);
        for (auto& x : xs) {
            x = sample_gamma(shape, rng);
            REQUIRE(x >= 0.0);
        }
        CHECK(ks_statistic(xs, [&](double x) { return boost::math::gamma_p(shape, x); }) <
              ks_critical_01(n));
    }
}

TEST_CASE("sample_beta matches the beta cdf") {
    struct Shape {
        double a, b;
    };
    for (auto [a, b] : {Shape{1, 1}, Shape{0.5, 0.5}, Shape{0.5, 1.5}, Shape{0.1, 0.9}, Shape{3, 0.2}}) {
        CAPTURE(a);
        CAPTURE(b);
        RngStream rng(7, static_cast<std::uint64_t>(a * 10 + b * 1000));
        const std::size_t n = 100000;
        std::vector<double> xs(n);
        for (auto& x : xs) {
            x = sample_beta(a, b, rng);
            REQUIRE(x > 0.0);
            REQUIRE(x < 1.0);
        }
        CHECK(ks_statistic(xs, [&](double x) { return boost::math::ibeta(a, b, x); }) <
              ks_critical_01(n));
    }
    RngStream rng(0, 0);
    CHECK_THROWS_AS(sample_beta(0.0, 1.0, rng), DomainError);
    CHECK_THROWS_AS(sample_beta(1.0, -2.0, rng), DomainError);
}

TEST_CASE("beta means at 1e6 draws") {
    RngStream rng(8, 0);
    const int n = 1000000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += sample_beta(1.0, 1.0, rng);
    CHECK(std::abs(s / n - 0.5) < 3.0 / std::sqrt(12.0) / 1000.0);
    s = 0.0;
    for (int i = 0; i < n; ++i) s += sample_beta(0.5, 1.5, rng);
    // sd of Beta(1/2, 3/2) is sqrt(ab/((a+b)^2 (a+b+1))) = sqrt(0.0625).
    CHECK(std::abs(s / n - 0.25) < 3.0 * 0.25 / 1000.0);
}

TEST_CASE("n = 1 polygonal beta is the power law for both methods") {
    const AlphaVector alpha({0.5});
    for (auto m : {SamplingMethod::chain, SamplingMethod::increments}) {
        auto xs = coordinate(alpha, m, 9, 0, 100000);
        CHECK(ks_statistic(xs, [](double x) { return std::sqrt(x); }) < ks_critical_01(xs.size()));
    }
    // The chain path is exactly the inverse-cdf draw.
    RngStream a(10, 0), b(10, 0);
    for (int i = 0; i < 100; ++i)
        CHECK(sample_polygonal_beta(alpha, a).s[0] == sample_power(0.5, b));
}

TEST_CASE("n = 2, alpha = (1/2, 1/2): the last coordinate is uniform") {
    const AlphaVector alpha({0.5, 0.5});
    for (auto m : {SamplingMethod::chain, SamplingMethod::increments}) {
        auto xs = coordinate(alpha, m, 11, 1, 100000);
        CHECK(ks_statistic(xs, [](double x) { return x; }) < ks_critical_01(xs.size()));
    }
}

TEST_CASE("property: output is strictly inside the simplex") {
    RngStream pick(12, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const AlphaVector alpha(random_alpha(pick, 1 + trial % 6));
        RngStream rng(13, trial);
        for (auto m : {SamplingMethod::chain, SamplingMethod::increments})
            for (int i = 0; i < 2000; ++i) REQUIRE(SimplexPoint::in_support(sample_polygonal_beta(alpha, rng, m).s));
    }
    // Exponents near the integrability limit pile mass onto the boundary.
    const AlphaVector extreme({0.999, 0.999, 0.999});
    RngStream rng(14, 0);
    for (auto m : {SamplingMethod::chain, SamplingMethod::increments})
        for (int i = 0; i < 2000; ++i) REQUIRE(SimplexPoint::in_support(sample_polygonal_beta(extreme, rng, m).s));
}

TEST_CASE("property: last coordinate has cdf x^{b_n}") {
    RngStream pick(15, 0);
    for (int trial = 0; trial < 6; ++trial) {
        const AlphaVector alpha(random_alpha(pick, 2 + trial % 2));
        const double b = alpha.cumulative_shape(alpha.size() - 1);
        for (auto m : {SamplingMethod::chain, SamplingMethod::increments}) {
            auto xs = coordinate(alpha, m, 16 + trial, alpha.size() - 1, 100000);
            CHECK(ks_statistic(xs, [&](double x) { return std::pow(x, b); }) < ks_critical_01(xs.size()));
        }
    }
}

TEST_CASE("property: the first coordinate is Beta(1 - a_1, b_n - b_1 + 1)") {
    const AlphaVector alpha({0.3, -0.2, 0.7});
    const double a = alpha.shape(0), b = alpha.cumulative_shape(2) - alpha.cumulative_shape(0) + 1.0;
    for (auto m : {SamplingMethod::chain, SamplingMethod::increments}) {
        auto xs = coordinate(alpha, m, 17, 0, 100000);
        CHECK(ks_statistic(xs, [&](double x) { return boost::math::ibeta(a, b, x); }) <
              ks_critical_01(xs.size()));
    }
}

TEST_CASE("property: for n = 2 the ratio s1/s2 is Beta(1 - a1, 1 - a2) and independent of s2") {
    const AlphaVector alpha({0.4, 0.6});
    for (auto m : {SamplingMethod::chain, SamplingMethod::increments}) {
        RngStream rng(18, 0);
        const std::size_t n = 100000;
        std::vector<double> ratio(n), last(n), p(2);
        for (std::size_t i = 0; i < n; ++i) {
            sample_polygonal_beta_into(alpha, rng, m, p);
            ratio[i] = p[0] / p[1];
            last[i] = p[1];
        }
        double mr = 0, ml = 0;
        for (std::size_t i = 0; i < n; ++i) mr += ratio[i], ml += last[i];
        mr /= n;
        ml /= n;
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sxy += (ratio[i] - mr) * (last[i] - ml);
            sxx += (ratio[i] - mr) * (ratio[i] - mr);
            syy += (last[i] - ml) * (last[i] - ml);
        }
        CHECK(std::abs(sxy / std::sqrt(sxx * syy)) < 3.0 / std::sqrt(static_cast<double>(n)));
        CHECK(ks_statistic(ratio, [](double x) { return boost::math::ibeta(0.6, 0.4, x); }) <
              ks_critical_01(n));
    }
}

TEST_CASE("determinism per (seed, stream, method)") {
    const AlphaVector alpha({0.2, 0.5, 0.1});
    for (auto m : {SamplingMethod::chain, SamplingMethod::increments}) {
        RngStream a(19, 2), b(19, 2);
        for (int i = 0; i < 1000; ++i) REQUIRE(sample_polygonal_beta(alpha, a, m).s == sample_polygonal_beta(alpha, b, m).s);
    }
}

TEST_CASE("method names") {
    CHECK(parse_sampling_method("chain") == SamplingMethod::chain);
    CHECK(parse_sampling_method("increments") == SamplingMethod::increments);
    CHECK(to_string(SamplingMethod::increments) == "increments");
    CHECK_THROWS_AS(parse_sampling_method("gibbs"), UsageError);
}

TEST_CASE("ball beta: n = 1, A = 0 is uniform on (-1, 1)") {
    const BallExponents e({0.0});
    RngStream rng(20, 0);
    const std::size_t n = 100000;
    std::vector<double> xs(n);
    double s = 0;
    for (auto& x : xs) {
        x = sample_ball_beta(e, rng).x[0];
        s += x;
    }
    CHECK(std::abs(s / n) < 3.0 / std::sqrt(3.0) / std::sqrt(static_cast<double>(n)));
    CHECK(ks_statistic(xs, [](double x) { return 0.5 * (x + 1.0); }) < ks_critical_01(n));
}

TEST_CASE("ball beta: uniform disc radius has cdf r^2") {
    const BallExponents e({0.0, 0.0});
    RngStream rng(21, 0);
    const std::size_t n = 100000;
    std::vector<double> rs(n);
    for (auto& r : rs) {
        const auto p = sample_ball_beta(e, rng);
        r = std::hypot(p.x[0], p.x[1]);
    }
    CHECK(ks_statistic(rs, [](double r) { return r * r; }) < ks_critical_01(n));
}

TEST_CASE("property: ball beta with A = 0 puts 2^-n of the mass inside radius 1/2") {
    for (std::size_t dim = 1; dim <= 4; ++dim) {
        const BallExponents e(std::vector<double>(dim, 0.0));
        RngStream rng(22, dim);
        const int n = 100000;
        int inside = 0;
        for (int i = 0; i < n; ++i) {
            const auto p = sample_ball_beta(e, rng);
            double r2 = 0;
            for (double v : p.x) r2 += v * v;
            inside += r2 <= 0.25;
        }
        const double p = std::ldexp(1.0, -static_cast<int>(dim));
        CHECK(std::abs(inside / static_cast<double>(n) - p) < 3.0 * std::sqrt(p * (1 - p) / n));
    }
}

TEST_CASE("ball beta: squared coordinates follow their Beta marginals, support holds") {
    const BallExponents e({-0.5, 0.3, 1.2});
    RngStream rng(23, 0);
    const std::size_t n = 100000;
    std::vector<double> y0(n), p(3);
    double total = 0;
    for (std::size_t k = 0; k < 3; ++k) total += e.half_shape(k);
    for (auto& y : y0) {
        sample_ball_beta_into(e, rng, p);
        REQUIRE(BallPoint::in_support(p));
        y = p[0] * p[0];
    }
    const double a = e.half_shape(0), b = total - a + 1.0;
    CHECK(ks_statistic(y0, [&](double y) { return boost::math::ibeta(a, b, y); }) < ks_critical_01(n));
}

TEST_CASE("uniform simplex order statistics") {
    RngStream rng(24, 0);
    const int n = 1000000;
    double m1 = 0, m2 = 0;
    for (int i = 0; i < n; ++i) {
        const auto p = sample_uniform_simplex(2, rng);
        REQUIRE(p.s[0] < p.s[1]);
        m1 += p.s[0];
        m2 += p.s[1];
    }
    // sd of each order statistic of two uniforms is sqrt(1/18).
    const double tol = 3.0 * std::sqrt(1.0 / 18.0) / 1000.0;
    CHECK(std::abs(m1 / n - 1.0 / 3.0) < tol);
    CHECK(std::abs(m2 / n - 2.0 / 3.0) < tol);
    for (int i = 0; i < 1000; ++i) REQUIRE(SimplexPoint::in_support(sample_uniform_simplex(7, rng).s));
    CHECK_THROWS(sample_uniform_simplex(0, rng));
}

TEST_CASE("support predicates") {
    CHECK(SimplexPoint::in_support(std::vector<double>{0.1, 0.2}));
    CHECK_FALSE(SimplexPoint::in_support(std::vector<double>{0.2, 0.2}));
    CHECK_FALSE(SimplexPoint::in_support(std::vector<double>{0.0, 0.2}));
    CHECK_FALSE(SimplexPoint::in_support(std::vector<double>{0.5, 1.0}));
    CHECK(BallPoint::in_support(std::vector<double>{0.6, 0.8}));
    CHECK_FALSE(BallPoint::in_support(std::vector<double>{0.7, 0.8}));
}

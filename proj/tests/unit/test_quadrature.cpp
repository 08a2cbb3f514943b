#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "doctest.h"
#include "singmc/errors.hpp"
#include "singmc/quadrature.hpp"
#include "support/stats.hpp"

using namespace singmc;
using singmc::test::relative_error;

namespace {

double apply(const QuadratureRule& r, auto f) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
    return s;
}

}  // namespace

TEST_CASE("gauss legendre small rules") {
    const auto r = gauss_legendre(2);
    REQUIRE(r.size() == 2);
    CHECK(r.nodes[0] == doctest::Approx(0.5 - 0.5 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r.nodes[1] == doctest::Approx(0.5 + 0.5 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
    const auto one = gauss_legendre(1);
    CHECK(one.nodes[0] == doctest::Approx(0.5));
    CHECK(one.weights[0] == doctest::Approx(1.0));
}

TEST_CASE("gauss jacobi integrates polynomials of degree < 2m exactly") {
    const double params[][2] = {{0, 0}, {-0.5, -0.5}, {-0.9, 0.3}, {0.7, -0.95}, {2.5, 1.0}, {-0.3, 4.2}};
    for (auto [p, q] : params)
        for (std::size_t m : {1u, 2u, 5u, 16u, 40u}) {
            CAPTURE(p);
            CAPTURE(q);
            CAPTURE(m);
            const auto r = gauss_jacobi(m, p, q);
            REQUIRE(r.size() == m);
            for (std::size_t i = 0; i < m; ++i) {
                CHECK(r.nodes[i] > 0.0);
                CHECK(r.nodes[i] < 1.0);
                CHECK(r.weights[i] > 0.0);
                if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
            }
            for (unsigned k = 0; k < 2 * m && k < 30; ++k) {
                const double want = boost::math::beta(p + k + 1.0, q + 1.0);
                CHECK(relative_error(apply(r, [k](double t) { return std::pow(t, k); }), want) < 1e-12);
            }
        }
}

TEST_CASE("gauss jacobi nodes are symmetric when p = q") {
    for (double p : {-0.5, 0.0, 1.5}) {
        const auto r = gauss_jacobi(33, p, p);
        for (std::size_t i = 0; i < r.size(); ++i) {
            CHECK(std::abs(r.nodes[i] + r.nodes[r.size() - 1 - i] - 1.0) < 1e-13);
            CHECK(relative_error(r.weights[i], r.weights[r.size() - 1 - i]) < 1e-11);
        }
    }
}

TEST_CASE("power substitution absorbs both endpoint powers") {
    for (auto [p, q] : {std::pair{-0.5, -0.5}, std::pair{-0.9, 0.4}, std::pair{0.0, -0.7}}) {
        const auto r = weighted_rule(QuadScheme::power_substitution, 40, p, q);
        CHECK(r.size() == 80);
        const auto gj = weighted_rule(QuadScheme::gauss_jacobi, 40, p, q);
        CHECK(gj.size() == 40);
        for (auto f : {+[](double t) { return 1.0; }, +[](double t) { return std::exp(t); },
                       +[](double t) { return std::cos(3 * t); }}) {
            CHECK(relative_error(apply(r, f), apply(gj, f)) < 1e-9);
        }
        CHECK(relative_error(apply(r, [](double) { return 1.0; }), boost::math::beta(p + 1, q + 1)) < 1e-9);
    }
}

TEST_CASE("rule errors and names") {
    CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(gauss_jacobi(4, -1.0, 0.0), DomainError);
    CHECK_THROWS_AS(gauss_jacobi(4, 0.0, -1.5), DomainError);
    CHECK(parse_quad_scheme("gauss_jacobi") == QuadScheme::gauss_jacobi);
    CHECK(parse_quad_scheme("power_substitution") == QuadScheme::power_substitution);
    CHECK(to_string(QuadScheme::power_substitution) == "power_substitution");
    CHECK_THROWS_AS(parse_quad_scheme("simpson"), UsageError);
}

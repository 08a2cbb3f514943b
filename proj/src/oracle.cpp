#include "singmc/oracle.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "singmc/errors.hpp"

namespace singmc {

namespace {

void require(const Integrand& z, std::size_t dim, const QuadSpec& spec) {
    if (!z.evaluate) throw UsageError("integrand has no evaluation function");
    if (z.arity != dim) throw UsageError("integrand arity does not match domain dimension");
    if (spec.nodes_per_axis < 2) throw DomainError("quadrature needs at least 2 nodes per axis");
}

class VolterraTensor {
public:
    VolterraTensor(const Integrand& z, const AlphaVector& alpha, QuadScheme scheme, std::size_t m)
        : z_(z), s_(alpha.size()) {
        const std::size_t n = alpha.size();
        for (std::size_t k = 0; k < n; ++k) {
            double tail = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) tail += alpha.shape(j);
            rules_.push_back(weighted_rule(scheme, m, -alpha[k], tail));
        }
    }

    double integrate() { return level(0, 0.0, 1.0); }

private:
    double level(std::size_t k, double prefix, double length) {
        if (k == rules_.size()) return z_.evaluate(s_);
        const auto& rule = rules_[k];
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double v = rule.nodes[i];
            s_[k] = prefix + length * v;
            acc += rule.weights[i] * level(k + 1, s_[k], length * (1.0 - v));
        }
        return acc;
    }

    const Integrand& z_;
    std::vector<QuadratureRule> rules_;
    std::vector<double> s_;
};

double ball_tensor(const Integrand& z, const BallExponents& e, QuadScheme scheme, std::size_t m) {
    if (e.size() == 1) {
        const auto rule = weighted_rule(scheme, m, e[0], 0.0);
        double acc = 0.0;
        std::vector<double> x(1);
        for (std::size_t i = 0; i < rule.size(); ++i) {
            x[0] = rule.nodes[i];
            double f = z.evaluate(x);
            x[0] = -rule.nodes[i];
            f += z.evaluate(x);
            acc += rule.weights[i] * f;
        }
        return acc;
    }
    // x = r (+-sqrt(1 - t), +-sqrt(t)), t = sin^2 phi on each quadrant:
    // |x1|^A1 |x2|^A2 dx = r^{A1+A2+1} dr * (1/2) t^{(A2-1)/2} (1-t)^{(A1-1)/2} dt.
    const auto radial = weighted_rule(scheme, m, e[0] + e[1] + 1.0, 0.0);
    const auto angular = weighted_rule(scheme, m, 0.5 * (e[1] - 1.0), 0.5 * (e[0] - 1.0));
    std::vector<double> x(2);
    double acc = 0.0;
    for (std::size_t i = 0; i < radial.size(); ++i) {
        const double r = radial.nodes[i];
        double ring = 0.0;
        for (std::size_t j = 0; j < angular.size(); ++j) {
            const double c = r * std::sqrt(1.0 - angular.nodes[j]);
            const double s = r * std::sqrt(angular.nodes[j]);
            double f = 0.0;
            for (double sc : {c, -c})
                for (double ss : {s, -s}) {
                    x[0] = sc;
                    x[1] = ss;
                    f += z.evaluate(x);
                }
            ring += angular.weights[j] * f;
        }
        acc += radial.weights[i] * ring;
    }
    return 0.5 * acc;
}

double rising(double x, unsigned q) {
    double r = 1.0;
    for (unsigned i = 0; i < q; ++i) r *= x + static_cast<double>(i);
    return r;
}

}  // namespace

QuadResult quad_volterra(const Integrand& z, const AlphaVector& alpha, const QuadSpec& spec) {
    if (alpha.size() > kMaxOracleSimplexDim) {
        std::ostringstream os;
        os << "quadrature oracle supports n <= " << kMaxOracleSimplexDim << ", got n = " << alpha.size();
        throw DomainError(os.str());
    }
    require(z, alpha.size(), spec);
    QuadResult r;
    r.value = VolterraTensor(z, alpha, spec.scheme, spec.nodes_per_axis).integrate();
    r.refined = VolterraTensor(z, alpha, spec.scheme, 2 * spec.nodes_per_axis).integrate();
    r.convergence = std::abs(r.refined - r.value);
    return r;
}

QuadResult quad_ball(const Integrand& z, const BallExponents& exponents, const QuadSpec& spec) {
    if (exponents.size() > kMaxOracleBallDim) {
        std::ostringstream os;
        os << "ball quadrature oracle supports n <= " << kMaxOracleBallDim << ", got n = " << exponents.size();
        throw DomainError(os.str());
    }
    require(z, exponents.size(), spec);
    QuadResult r;
    r.value = ball_tensor(z, exponents, spec.scheme, spec.nodes_per_axis);
    r.refined = ball_tensor(z, exponents, spec.scheme, 2 * spec.nodes_per_axis);
    r.convergence = std::abs(r.refined - r.value);
    return r;
}

double dirichlet_moment(const AlphaVector& alpha, std::span<const unsigned> powers) {
    const std::size_t n = alpha.size();
    if (powers.size() != n) throw UsageError("one power per coordinate is required");

    // Expand prod_k (u_1 + ... + u_k)^{p_k} into monomials in u.
    std::map<std::vector<unsigned>, double> poly{{std::vector<unsigned>(n, 0), 1.0}};
    for (std::size_t k = 0; k < n; ++k) {
        for (unsigned rep = 0; rep < powers[k]; ++rep) {
            std::map<std::vector<unsigned>, double> next;
            for (const auto& [expo, coef] : poly)
                for (std::size_t j = 0; j <= k; ++j) {
                    auto e = expo;
                    ++e[j];
                    next[e] += coef;
                }
            poly = std::move(next);
        }
    }

    // E prod u_j^{q_j} = prod (beta_j)_{q_j} / (B)_{sum q}, B = sum beta + 1.
    const double total_shape = alpha.cumulative_shape(n - 1) + 1.0;
    double result = 0.0;
    for (const auto& [expo, coef] : poly) {
        double num = 1.0;
        unsigned degree = 0;
        for (std::size_t j = 0; j < n; ++j) {
            num *= rising(alpha.shape(j), expo[j]);
            degree += expo[j];
        }
        result += coef * num / rising(total_shape, degree);
    }
    return result;
}

double volterra_monomial_integral(const AlphaVector& alpha, std::span<const unsigned> powers) {
    return simplex_constant(alpha) * dirichlet_moment(alpha, powers);
}

}  // namespace singmc

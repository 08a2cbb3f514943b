#include "singmc/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <string>

#include "singmc/errors.hpp"

namespace singmc {

QuadratureRule gauss_jacobi(std::size_t m, double p, double q) {
    if (m < 1) throw DomainError("quadrature needs at least one node");
    if (!(p > -1.0) || !(q > -1.0)) {
        std::ostringstream os;
        os << "Gauss-Jacobi exponents must exceed -1, got p = " << p << ", q = " << q;
        throw DomainError(os.str());
    }
    // Classical weight (1 - x)^a (1 + x)^b on [-1, 1]; x = 2t - 1.
    const double a = q, b = p, ab = a + b;
    const auto n = static_cast<Eigen::Index>(m);
    Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 1);
    diag[0] = (b - a) / (ab + 2.0);
    for (Eigen::Index k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k), s = 2.0 * kk + ab;
        diag[k] = (b * b - a * a) / (s * (s + 2.0));
    }
    for (Eigen::Index k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k), s = 2.0 * kk + ab;
        const double beta = k == 1 ? 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
                                   : 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
        sub[k - 1] = std::sqrt(beta);
    }

    // Total mass of t^p (1-t)^q on (0, 1).
    int sign = 0;
    const double mass = std::exp(::lgamma_r(p + 1.0, &sign) + ::lgamma_r(q + 1.0, &sign) -
                                 ::lgamma_r(p + q + 2.0, &sign));

    QuadratureRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    if (m == 1) {
        rule.nodes[0] = 0.5 * (diag[0] + 1.0);
        rule.weights[0] = mass;
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw NumericalError("Jacobi matrix eigen-decomposition failed");
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const double v0 = solver.eigenvectors()(0, ii);
        rule.nodes[i] = 0.5 * (solver.eigenvalues()[ii] + 1.0);
        rule.weights[i] = v0 * v0;
        total += v0 * v0;
    }
    for (double& w : rule.weights) w = mass * (w / total);
    if (p == q) {
        for (std::size_t i = 0, j = m - 1; i < j; ++i, --j) {
            const double t = 0.5 * (rule.nodes[i] + (1.0 - rule.nodes[j]));
            const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
            rule.nodes[i] = t;
            rule.nodes[j] = 1.0 - t;
            rule.weights[i] = rule.weights[j] = w;
        }
        if (m % 2 == 1) rule.nodes[m / 2] = 0.5;
    }
    return rule;
}

QuadratureRule gauss_legendre(std::size_t m) { return gauss_jacobi(m, 0.0, 0.0); }

QuadScheme parse_quad_scheme(std::string_view name) {
    if (name == "gauss_jacobi") return QuadScheme::gauss_jacobi;
    if (name == "power_substitution") return QuadScheme::power_substitution;
    throw UsageError("unknown quadrature scheme '" + std::string(name) +
                     "' (expected gauss_jacobi or power_substitution)");
}

std::string_view to_string(QuadScheme scheme) noexcept {
    return scheme == QuadScheme::gauss_jacobi ? "gauss_jacobi" : "power_substitution";
}

QuadratureRule weighted_rule(QuadScheme scheme, std::size_t m, double p, double q) {
    if (scheme == QuadScheme::gauss_jacobi) return gauss_jacobi(m, p, q);
    if (!(p > -1.0) || !(q > -1.0)) throw DomainError("weight exponents must exceed -1");
    const QuadratureRule legendre = gauss_legendre(m);
    QuadratureRule rule;
    rule.nodes.reserve(2 * m);
    rule.weights.reserve(2 * m);
    // Left half: t = w^{r/(p+1)} / 2, so t^p dt = 2^{-(p+1)} r/(p+1) w^{r-1} dw.
    const double r = kPowerGrading;
    const double left_scale = std::pow(0.5, p + 1.0) * r / (p + 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double w = legendre.nodes[i];
        const double t = 0.5 * std::pow(w, r / (p + 1.0));
        rule.nodes.push_back(t);
        rule.weights.push_back(legendre.weights[i] * left_scale * std::pow(w, r - 1.0) * std::pow(1.0 - t, q));
    }
    // Right half: 1 - t = w^{r/(q+1)} / 2.
    const double right_scale = std::pow(0.5, q + 1.0) * r / (q + 1.0);
    for (std::size_t i = m; i-- > 0;) {
        const double w = legendre.nodes[i];
        const double t = 1.0 - 0.5 * std::pow(w, r / (q + 1.0));
        rule.nodes.push_back(t);
        rule.weights.push_back(legendre.weights[i] * right_scale * std::pow(w, r - 1.0) * std::pow(t, p));
    }
    return rule;
}

}  // namespace singmc

#include "singmc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "singmc/errors.hpp"

namespace singmc {

NonFiniteIntegrand::NonFiniteIntegrand(std::vector<double> point, double value)
    : NumericalError([&] {
          std::ostringstream os;
          os.precision(17);
          os << "integrand returned the non-finite value " << value << " at point (";
          for (std::size_t k = 0; k < point.size(); ++k) os << (k ? ", " : "") << point[k];
          os << "); pass --skip-nonfinite to drop such points";
          return os.str();
      }()),
      point_(std::move(point)),
      value_(value) {}

AlphaVector::AlphaVector(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.empty()) throw DomainError("alpha must have at least one exponent");
    cumulative_.reserve(alpha_.size());
    double b = 0.0;
    for (std::size_t k = 0; k < alpha_.size(); ++k) {
        const double a = alpha_[k];
        if (!std::isfinite(a) || !(a < 1.0 - kIntegrabilityMargin)) {
            std::ostringstream os;
            os.precision(17);
            os << "alpha[" << k + 1 << "] = " << a << " violates alpha_k < 1 (required alpha_k < 1 - "
               << kIntegrabilityMargin << ")";
            throw DomainError(os.str());
        }
        b += 1.0 - a;
        cumulative_.push_back(b);
    }
}

bool AlphaVector::all_zero() const noexcept {
    return std::all_of(alpha_.begin(), alpha_.end(), [](double a) { return a == 0.0; });
}

bool AlphaVector::any_at_least(double threshold) const noexcept {
    return std::any_of(alpha_.begin(), alpha_.end(), [=](double a) { return a >= threshold; });
}

BallExponents::BallExponents(std::vector<double> exponents) : a_(std::move(exponents)) {
    if (a_.empty()) throw DomainError("ball exponents must have at least one entry");
    double sum = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) {
        const double a = a_[k];
        if (!std::isfinite(a) || !(a > -1.0 + kIntegrabilityMargin)) {
            std::ostringstream os;
            os.precision(17);
            os << "A[" << k + 1 << "] = " << a << " violates A_k > -1 (required A_k > -1 + "
               << kIntegrabilityMargin << ")";
            throw DomainError(os.str());
        }
        sum += a;
    }
    degree_ = sum + static_cast<double>(a_.size());
    if (!(degree_ > 0.0)) throw DomainError("ball exponents must satisfy D = sum A_k + n > 0");
}

double log_gamma(double x) {
    if (!std::isfinite(x) || !(x > 0.0)) {
        std::ostringstream os;
        os << "log_gamma requires a finite positive argument, got " << x;
        throw DomainError(os.str());
    }
    // glibc's lgamma is accurate to a few ulp on the positive axis. The sign
    // output of lgamma_r is always +1 here and is discarded.
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

namespace {

double checked_exp(double log_value, const char* what) {
    const double v = std::exp(log_value);
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << what << " leaves the double range (log value " << log_value << ")";
        throw NumericalError(os.str());
    }
    return v;
}

}  // namespace

double log_simplex_constant(const AlphaVector& alpha) {
    double log_num = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) log_num += log_gamma(alpha.shape(k));
    return log_num - log_gamma(1.0 + alpha.cumulative_shape(alpha.size() - 1));
}

double simplex_constant(const AlphaVector& alpha) {
    return checked_exp(log_simplex_constant(alpha), "simplex constant");
}

double w_n(double beta, std::size_t n) {
    if (!(beta > 0.0 && beta <= 1.0)) {
        std::ostringstream os;
        os << "W_n requires beta in (0, 1], got " << beta;
        throw DomainError(os.str());
    }
    if (n == 0) throw DomainError("W_n requires n >= 1");
    const double nd = static_cast<double>(n);
    return checked_exp(nd * log_gamma(beta) - log_gamma(1.0 + nd * beta), "W_n");
}

double log_ball_constant(const BallExponents& exponents) {
    double log_num = 0.0;
    for (std::size_t k = 0; k < exponents.size(); ++k) log_num += log_gamma(exponents.half_shape(k));
    return log_num - log_gamma(0.5 * exponents.degree() + 1.0);
}

double ball_constant(const BallExponents& exponents) {
    return checked_exp(log_ball_constant(exponents), "ball constant");
}

double simplex_volume(std::size_t n) {
    if (n == 0) throw DomainError("simplex dimension must be at least 1");
    // n! is exact in double through 22!, so small volumes come out exact.
    if (n <= 170) {
        double factorial = 1.0;
        for (std::size_t k = 2; k <= n; ++k) factorial *= static_cast<double>(k);
        return 1.0 / factorial;
    }
    return checked_exp(-log_gamma(static_cast<double>(n) + 1.0), "simplex volume");
}

}  // namespace singmc

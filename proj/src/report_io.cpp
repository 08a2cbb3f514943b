#include "singmc/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include "json.hpp"

namespace singmc {

namespace {

using ordered_json = nlohmann::ordered_json;

// nlohmann writes non-finite numbers as null; keep them visible.
ordered_json number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

void write_json(std::ostream& out, const EstimateReport& r) {
    ordered_json j;
    j["estimate"] = number(r.estimate);
    j["std_error"] = number(r.std_error);
    j["ci_low"] = number(r.ci_low);
    j["ci_high"] = number(r.ci_high);
    j["n_samples"] = r.n_samples;
    j["constant"] = number(r.constant);
    j["second_moment"] = number(r.second_moment);
    j["seed"] = r.seed;
    j["n_workers"] = r.n_workers;
    j["unreliable"] = r.unreliable;
    j["n_skipped"] = r.n_skipped;
    out << j.dump(2) << '\n';
}

void write_csv(std::ostream& out, const EstimateReport& r) {
    out << "estimate,std_error,ci_low,ci_high,n_samples,constant,second_moment,seed,n_workers,"
           "unreliable,n_skipped\n";
    out << format_double(r.estimate) << ',' << format_double(r.std_error) << ','
        << format_double(r.ci_low) << ',' << format_double(r.ci_high) << ',' << r.n_samples << ','
        << format_double(r.constant) << ',' << format_double(r.second_moment) << ',' << r.seed
        << ',' << r.n_workers << ',' << (r.unreliable ? "true" : "false") << ',' << r.n_skipped
        << '\n';
}

void write_json(std::ostream& out, const ParamBandReport& r, const ThetaGrid& grid,
                bool with_covariance) {
    ordered_json j;
    ordered_json q = ordered_json::array();
    for (double v : r.q_hat) q.push_back(number(v));
    j["q_hat"] = std::move(q);
    j["band_halfwidth"] = number(r.band_halfwidth);
    j["sup_quantile"] = number(r.sup_quantile);
    j["n_samples"] = r.n_samples;
    j["n_gaussian_draws"] = r.n_gaussian_draws;
    j["seed"] = r.seed;
    j["jitter"] = number(r.jitter);
    ordered_json g = ordered_json::array();
    for (const auto& p : grid.points()) {
        ordered_json row = ordered_json::array();
        for (double v : p) row.push_back(number(v));
        g.push_back(std::move(row));
    }
    j["grid"] = std::move(g);
    if (with_covariance) {
        ordered_json c = ordered_json::array();
        for (Eigen::Index a = 0; a < r.covariance.rows(); ++a) {
            ordered_json row = ordered_json::array();
            for (Eigen::Index b = 0; b < r.covariance.cols(); ++b) row.push_back(number(r.covariance(a, b)));
            c.push_back(std::move(row));
        }
        j["covariance"] = std::move(c);
    }
    out << j.dump(2) << '\n';
}

void write_csv(std::ostream& out, const ParamBandReport& r, const ThetaGrid& grid) {
    for (std::size_t k = 0; k < grid.dim(); ++k) out << 't' << k + 1 << ',';
    out << "q_hat,lower,upper\n";
    for (std::size_t j = 0; j < grid.size(); ++j) {
        for (double v : grid[j]) out << format_double(v) << ',';
        out << format_double(r.q_hat[j]) << ',' << format_double(r.q_hat[j] - r.band_halfwidth) << ','
            << format_double(r.q_hat[j] + r.band_halfwidth) << '\n';
    }
}

void write_json(std::ostream& out, const QuadResult& r) {
    ordered_json j;
    j["value"] = number(r.value);
    j["refined"] = number(r.refined);
    j["convergence"] = number(r.convergence);
    out << j.dump(2) << '\n';
}

void write_csv(std::ostream& out, const QuadResult& r) {
    out << "value,refined,convergence\n"
        << format_double(r.value) << ',' << format_double(r.refined) << ','
        << format_double(r.convergence) << '\n';
}

}  // namespace singmc

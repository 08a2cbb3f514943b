#include "singmc/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "singmc/errors.hpp"
#include "singmc/estimate.hpp"
#include "singmc/expr.hpp"
#include "singmc/oracle.hpp"
#include "singmc/parametric.hpp"
#include "singmc/report_io.hpp"
#include "singmc/rng.hpp"
#include "singmc/sampling.hpp"
#include "singmc/specfun.hpp"

namespace singmc::cli {

namespace {

struct Config {
    std::string alpha;
    std::string exponents;
    std::string integrand;
    std::size_t samples = 100000;
    double confidence = 0.95;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::string format = "json";
    std::string method = "chain";
    std::string execution = "openmp";
    bool skip_nonfinite = false;
    std::vector<std::string> grid;
    std::size_t gaussian_draws = 10000;
    bool with_covariance = false;
    std::size_t nodes = 32;
    std::string scheme = "gauss_jacobi";
    std::optional<double> beta;
    std::optional<std::size_t> dim;
};

double parse_real(std::string_view tok, std::string_view what) {
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw UsageError("invalid number '" + std::string(tok) + "' in " + std::string(what));
    return v;
}

Execution parse_execution(const std::string& name) {
    if (name == "serial") return Execution::serial;
    if (name == "openmp") return Execution::openmp;
    throw UsageError("unknown execution '" + name + "' (expected serial or openmp)");
}

GridAxis parse_grid_axis(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos || text.find(':', b + 1) != std::string::npos)
        throw UsageError("grid axis '" + text + "' must be start:stop:count");
    GridAxis axis{parse_real(std::string_view(text).substr(0, a), "--grid"),
                  parse_real(std::string_view(text).substr(a + 1, b - a - 1), "--grid"), 0};
    const std::string_view cnt = std::string_view(text).substr(b + 1);
    auto [ptr, ec] = std::from_chars(cnt.data(), cnt.data() + cnt.size(), axis.count);
    if (cnt.empty() || ec != std::errc() || ptr != cnt.data() + cnt.size() || axis.count == 0)
        throw UsageError("grid count in '" + text + "' must be a positive integer");
    return axis;
}

void check_format(const Config& c) {
    if (c.format != "json" && c.format != "csv")
        throw UsageError("unknown format '" + c.format + "' (expected json or csv)");
}

EstimateOptions estimate_options(const Config& c) {
    EstimateOptions o;
    o.samples = c.samples;
    o.confidence = c.confidence;
    o.seed = c.seed;
    o.workers = c.workers;
    o.execution = parse_execution(c.execution);
    o.method = parse_sampling_method(c.method);
    o.skip_nonfinite = c.skip_nonfinite;
    return o;
}

Integrand bound_integrand(const Config& c, std::size_t arity) {
    const auto ast = expr::parse(c.integrand);
    ast.bind(arity, 0);
    return expr::to_integrand(ast, arity);
}

void emit(std::ostream& out, const Config& c, const EstimateReport& r) {
    if (c.format == "csv")
        write_csv(out, r);
    else
        write_json(out, r);
}

int cmd_simplex(const Config& c, std::ostream& out) {
    check_format(c);
    const AlphaVector alpha(parse_real_list(c.alpha));
    emit(out, c, estimate_volterra(bound_integrand(c, alpha.size()), alpha, estimate_options(c)));
    return kExitOk;
}

int cmd_direct(const Config& c, std::ostream& out) {
    check_format(c);
    const AlphaVector alpha(parse_real_list(c.alpha));
    emit(out, c, estimate_direct(bound_integrand(c, alpha.size()), alpha, estimate_options(c)));
    return kExitOk;
}

int cmd_ball(const Config& c, std::ostream& out) {
    check_format(c);
    const BallExponents e(parse_real_list(c.exponents));
    emit(out, c, estimate_ball(bound_integrand(c, e.size()), e, estimate_options(c)));
    return kExitOk;
}

int cmd_param(const Config& c, std::ostream& out) {
    check_format(c);
    const AlphaVector alpha(parse_real_list(c.alpha));
    std::vector<GridAxis> axes;
    for (const auto& g : c.grid) axes.push_back(parse_grid_axis(g));
    const auto grid = ThetaGrid::from_axes(axes);
    const auto ast = expr::parse(c.integrand);
    ast.bind(alpha.size(), grid.dim());
    ParamOptions o;
    o.samples = c.samples;
    o.confidence = c.confidence;
    o.gaussian_draws = c.gaussian_draws;
    o.seed = c.seed;
    o.workers = c.workers;
    o.execution = parse_execution(c.execution);
    o.method = parse_sampling_method(c.method);
    const auto r =
        estimate_parametric(expr::to_param_integrand(ast, alpha.size(), grid.dim()), alpha, grid, o);
    if (c.format == "csv")
        write_csv(out, r, grid);
    else
        write_json(out, r, grid, c.with_covariance);
    return kExitOk;
}

int cmd_sample(const Config& c, std::ostream& out) {
    check_format(c);
    const bool simplex = !c.alpha.empty();
    if (simplex == !c.exponents.empty())
        throw UsageError("sample needs exactly one of --alpha or --exponents");
    if (c.workers < 1) throw UsageError("workers must be >= 1");
    std::optional<AlphaVector> alpha;
    std::optional<BallExponents> expo;
    if (simplex)
        alpha.emplace(parse_real_list(c.alpha));
    else
        expo.emplace(parse_real_list(c.exponents));
    const std::size_t n = simplex ? alpha->size() : expo->size();
    const auto method = parse_sampling_method(c.method);
    const char prefix = simplex ? 's' : 'x';

    if (c.format == "csv") {
        for (std::size_t k = 0; k < n; ++k) out << (k ? "," : "") << prefix << k + 1;
        out << '\n';
    }
    std::vector<double> p(n);
    const Partition part{c.samples, c.workers};
    std::size_t emitted = 0;
    for (std::size_t w = 0; w < c.workers; ++w) {
        RngStream rng(c.seed, w);
        for (std::size_t i = 0; i < part.count(w); ++i, ++emitted) {
            if (simplex)
                sample_polygonal_beta_into(*alpha, rng, method, p);
            else
                sample_ball_beta_into(*expo, rng, p);
            if (c.format == "csv") {
                for (std::size_t k = 0; k < n; ++k) out << (k ? "," : "") << format_double(p[k]);
            } else {
                out << (emitted ? ",\n  [" : "[\n  [");
                for (std::size_t k = 0; k < n; ++k) out << (k ? ", " : "") << format_double(p[k]);
                out << ']';
            }
            if (c.format == "csv") out << '\n';
        }
    }
    if (c.format == "json") out << (emitted ? "\n]\n" : "[]\n");
    return kExitOk;
}

int cmd_constants(const Config& c, std::ostream& out) {
    check_format(c);
    if (c.alpha.empty() && c.exponents.empty() && !c.beta)
        throw UsageError("constants needs --alpha, --exponents, or --beta");
    nlohmann::ordered_json j;
    std::vector<std::pair<std::string, double>> rows;
    std::optional<double> beta = c.beta;
    std::optional<std::size_t> dim = c.dim;
    if (!c.alpha.empty()) {
        const AlphaVector alpha(parse_real_list(c.alpha));
        rows.emplace_back("simplex_constant", simplex_constant(alpha));
        rows.emplace_back("log_simplex_constant", log_simplex_constant(alpha));
        if (!dim) dim = alpha.size();
        bool equal = true;
        for (std::size_t k = 1; k < alpha.size(); ++k) equal = equal && alpha[k] == alpha[0];
        if (!beta && equal && alpha.shape(0) <= 1.0) beta = alpha.shape(0);
    }
    if (!c.exponents.empty()) {
        const BallExponents e(parse_real_list(c.exponents));
        rows.emplace_back("ball_constant", ball_constant(e));
        rows.emplace_back("log_ball_constant", log_ball_constant(e));
    }
    if (beta) {
        if (!dim) throw UsageError("--beta needs --dim when no --alpha is given");
        rows.emplace_back("beta", *beta);
        rows.emplace_back("n", static_cast<double>(*dim));
        rows.emplace_back("w_n", w_n(*beta, *dim));
    }
    if (c.format == "csv") {
        out << "name,value\n";
        for (const auto& [k, v] : rows) out << k << ',' << format_double(v) << '\n';
    } else {
        for (const auto& [k, v] : rows) {
            if (k == "n")
                j[k] = *dim;
            else
                j[k] = v;
        }
        out << j.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_oracle(const Config& c, std::ostream& out) {
    check_format(c);
    const bool simplex = !c.alpha.empty();
    if (simplex == !c.exponents.empty())
        throw UsageError("oracle needs exactly one of --alpha or --exponents");
    QuadSpec spec;
    spec.nodes_per_axis = c.nodes;
    spec.scheme = parse_quad_scheme(c.scheme);
    QuadResult r;
    if (simplex) {
        const AlphaVector alpha(parse_real_list(c.alpha));
        r = quad_volterra(bound_integrand(c, alpha.size()), alpha, spec);
    } else {
        const BallExponents e(parse_real_list(c.exponents));
        r = quad_ball(bound_integrand(c, e.size()), e, spec);
    }
    if (c.format == "csv")
        write_csv(out, r);
    else
        write_json(out, r);
    return kExitOk;
}

void add_common(CLI::App* sub, Config& c) {
    sub->add_option("--seed", c.seed, "RNG seed")->required();
    sub->add_option("--samples,-N", c.samples, "number of samples")->capture_default_str();
    sub->add_option("--workers,-w", c.workers, "worker count (fixes the sample partition)")
        ->capture_default_str();
    sub->add_option("--format", c.format, "json or csv")->capture_default_str();
    sub->add_option("--execution", c.execution, "serial or openmp")->capture_default_str();
}

void add_estimation(CLI::App* sub, Config& c) {
    add_common(sub, c);
    sub->add_option("--integrand,-z", c.integrand, "integrand expression")->required();
    sub->add_option("--confidence", c.confidence, "confidence level")->capture_default_str();
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::string_view rest(text);
    if (rest.empty()) throw UsageError("empty list of numbers");
    for (;;) {
        const auto comma = rest.find(',');
        out.push_back(parse_real(rest.substr(0, comma), "list"));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Monte Carlo for weakly singular Volterra-type and ball integrals", "singmc"};
    app.require_subcommand(1);

    auto* simplex = app.add_subcommand("simplex", "importance-sampled simplex integral");
    add_estimation(simplex, c);
    simplex->add_option("--alpha,-a", c.alpha, "comma-separated alpha_k < 1")->required();
    simplex->add_option("--method", c.method, "chain or increments")->capture_default_str();
    simplex->add_flag("--skip-nonfinite", c.skip_nonfinite, "drop non-finite integrand values");

    auto* ball = app.add_subcommand("ball", "importance-sampled ball integral");
    add_estimation(ball, c);
    ball->add_option("--exponents,-A", c.exponents, "comma-separated A_k > -1")->required();
    ball->add_flag("--skip-nonfinite", c.skip_nonfinite, "drop non-finite integrand values");

    auto* direct = app.add_subcommand("direct", "uniform-sampling simplex integral");
    add_estimation(direct, c);
    direct->add_option("--alpha,-a", c.alpha, "comma-separated alpha_k < 1")->required();
    direct->add_flag("--skip-nonfinite", c.skip_nonfinite, "drop non-finite integrand values");

    auto* param = app.add_subcommand("param", "parametric integral with a uniform band");
    add_estimation(param, c);
    param->add_option("--alpha,-a", c.alpha, "comma-separated alpha_k < 1")->required();
    param->add_option("--grid", c.grid, "start:stop:count, once per parameter")->required();
    param->add_option("--gaussian-draws", c.gaussian_draws, "draws for the sup quantile")
        ->capture_default_str();
    param->add_option("--method", c.method, "chain or increments")->capture_default_str();
    param->add_flag("--with-covariance", c.with_covariance, "include the covariance matrix");

    auto* sample = app.add_subcommand("sample", "emit raw samples");
    add_common(sample, c);
    sample->add_option("--alpha,-a", c.alpha, "polygonal beta exponents");
    sample->add_option("--exponents,-A", c.exponents, "ball beta exponents");
    sample->add_option("--method", c.method, "chain or increments")->capture_default_str();

    auto* constants = app.add_subcommand("constants", "normalizing constants");
    constants->add_option("--alpha,-a", c.alpha, "simplex exponents");
    constants->add_option("--exponents,-A", c.exponents, "ball exponents");
    constants->add_option("--beta", c.beta, "beta for W_n");
    constants->add_option("--dim", c.dim, "n for W_n");
    constants->add_option("--format", c.format, "json or csv")->capture_default_str();

    auto* oracle = app.add_subcommand("oracle", "deterministic quadrature (n <= 3 simplex, n <= 2 ball)");
    oracle->add_option("--alpha,-a", c.alpha, "simplex exponents");
    oracle->add_option("--exponents,-A", c.exponents, "ball exponents");
    oracle->add_option("--integrand,-z", c.integrand, "integrand expression")->required();
    oracle->add_option("--nodes", c.nodes, "nodes per axis")->capture_default_str();
    oracle->add_option("--scheme", c.scheme, "gauss_jacobi or power_substitution")->capture_default_str();
    oracle->add_option("--format", c.format, "json or csv")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "singmc: " << e.what() << "\nRun 'singmc --help' for usage.\n";
        return kExitUsage;
    }

    // Render fully before writing so a failure leaves stdout empty.
    std::ostringstream buf;
    try {
        int code = kExitOk;
        if (simplex->parsed()) code = cmd_simplex(c, buf);
        else if (ball->parsed()) code = cmd_ball(c, buf);
        else if (direct->parsed()) code = cmd_direct(c, buf);
        else if (param->parsed()) code = cmd_param(c, buf);
        else if (sample->parsed()) code = cmd_sample(c, buf);
        else if (constants->parsed()) code = cmd_constants(c, buf);
        else if (oracle->parsed()) code = cmd_oracle(c, buf);
        out << buf.str();
        return code;
    } catch (const expr::ParseError& e) {
        err << "singmc: integrand: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "singmc: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "singmc: domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const NumericalError& e) {
        err << "singmc: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "singmc: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace singmc::cli

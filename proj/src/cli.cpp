#include "optpredict/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "optpredict/stochastic.hpp"
#include "optpredict/version.hpp"

namespace optpredict::cli {

using kg::KgParams;
using kg::KgSpectralSystem;
using linalg::Vector;
using mc::csv_double;
using mc::ExperimentReport;
using mc::Verdict;

namespace {

const std::set<std::string> kCommands = {
    "bounds",     "compare", "theorem1",        "theorem2",
    "identities", "smooth",  "lowerbound-scan"};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ','))
        out.push_back(tok);
    return out;
}

int parse_int(const std::string& tok, const std::string& key) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for '" + key + "': '" + tok + "'");
    }
}

double parse_double(const std::string& tok, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for '" + key + "': '" + tok + "'");
    }
}

std::uint64_t parse_u64(const std::string& tok, const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid seed for '" + key + "': '" + tok + "'");
    }
}

std::vector<int> parse_int_list(const std::string& s, const std::string& key) {
    std::vector<int> out;
    for (const auto& tok : split_list(s))
        out.push_back(parse_int(tok, key));
    if (out.empty())
        throw ConfigError("empty list for '" + key + "'");
    return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& key) {
    std::vector<double> out;
    for (const auto& tok : split_list(s))
        out.push_back(parse_double(tok, key));
    if (out.empty())
        throw ConfigError("empty list for '" + key + "'");
    return out;
}

bool parse_bool(const std::string& tok, const std::string& key) {
    if (tok == "1" || tok == "true" || tok == "yes")
        return true;
    if (tok == "0" || tok == "false" || tok == "no")
        return false;
    throw ConfigError("invalid boolean for '" + key + "': '" + tok + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

/// key=value configuration file; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> load_config_file(
    const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              " is not key=value: '" + line + "'");
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return entries;
}

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value, const std::set<std::string>& cli_set) {
    if (cli_set.count(key))
        return; // explicit flag wins
    if (key == "n")
        cfg.n_list = parse_int_list(value, key);
    else if (key == "r")
        cfg.r_list = parse_int_list(value, key);
    else if (key == "sigma")
        cfg.sigma_list = parse_double_list(value, key);
    else if (key == "nu")
        cfg.nu = parse_double(value, key);
    else if (key == "t")
        cfg.t_list = parse_double_list(value, key);
    else if (key == "samples")
        cfg.samples = parse_int(value, key);
    else if (key == "seed")
        cfg.seed = parse_u64(value, key);
    else if (key == "out")
        cfg.out_path = value;
    else if (key == "format")
        cfg.format = value;
    else if (key == "force_hypothesis")
        cfg.force_hypothesis = parse_bool(value, key);
    else if (key == "v0_file")
        cfg.v0_file = value;
    else if (key == "s")
        cfg.smooth_order = parse_int(value, key);
    else if (key == "r_max")
        cfg.r_max = parse_int(value, key);
    else
        throw ConfigError("unknown config key '" + key + "'");
}

double default_sigma(const std::string& command, int n, double nu) {
    const double base = 2.0 * n + 1.0;
    if (command == "bounds")
        return std::sqrt(4.0 / base); // (2n+1) sigma^2 = 4
    // hypothesis boundary for the probabilistic statements
    return std::sqrt(6.0 * (nu + 1.0) * std::log(base) / base);
}

double default_nu(const std::string& command) {
    return command == "theorem2" ? 0.0 : 0.5;
}

void write_payload(const RunConfig& cfg, const std::string& payload,
                   std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f)
        throw ConfigError("cannot open output file '" + cfg.out_path + "'");
    f << payload;
}

int verdict_exit(Verdict v) {
    switch (v) {
    case Verdict::Pass:
        return 0;
    case Verdict::Fail:
        return 1;
    case Verdict::Inconclusive:
        return 3;
    }
    return 1;
}

int emit_reports(const RunConfig& cfg, const std::vector<ExperimentReport>& reports,
                 std::ostream& out) {
    const std::string format = cfg.format.empty() ? "json" : cfg.format;
    write_payload(cfg, format == "csv" ? mc::to_csv(reports) : mc::to_json(reports),
                  out);
    Verdict v = Verdict::Pass;
    for (const auto& r : reports)
        v = mc::combine(v, r.verdict);
    return verdict_exit(v);
}

void require_single(const std::vector<int>& xs, const std::string& key) {
    if (xs.size() != 1)
        throw ConfigError("command takes a single value for '" + key + "'");
}

/// u(x) from the coefficient vector (a_m..a_0, b_1..b_m).
double eval_u(const Vector& coeffs, int m, double x) {
    double u = coeffs(kg::idx_a(m, 0)) / std::sqrt(2.0 * std::numbers::pi);
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    for (int k = 1; k <= m; ++k)
        u += inv_sqrt_pi * (coeffs(kg::idx_a(m, k)) * std::cos(k * x) +
                            coeffs(kg::idx_b(m, k)) * std::sin(k * x));
    return u;
}

Vector load_v0_file(const std::string& path, int expected) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open v0 file '" + path + "'");
    std::vector<double> vals;
    double x;
    while (in >> x)
        vals.push_back(x);
    if (static_cast<int>(vals.size()) != expected)
        throw ConfigError("v0 file '" + path + "' holds " +
                          std::to_string(vals.size()) + " values, expected " +
                          std::to_string(expected));
    Vector v(expected);
    for (int i = 0; i < expected; ++i)
        v(i) = vals[i];
    return v;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
    struct Row {
        int n, r;
        double sigma, exact, bound;
        bool hypothesis_ok;
    };
    std::vector<Row> rows;
    bool violation = false;
    for (int n : cfg.n_list) {
        const std::vector<double> sigmas =
            cfg.sigma_list.empty()
                ? std::vector<double>{default_sigma("bounds", n, 0.0)}
                : cfg.sigma_list;
        for (int r : cfg.r_list) {
            for (double sigma : sigmas) {
                const KgParams params(n, r, sigma);
                const bool hyp = params.lemma2_hypothesis();
                if (!hyp && !cfg.force_hypothesis)
                    throw ConfigError(
                        "grid point n=" + std::to_string(n) + " sigma=" +
                        std::to_string(sigma) +
                        " violates (2n+1) sigma^2 >= 2; use --force-hypothesis");
                const double exact = kg::exact_defect_norm(kg::build(params));
                const double bound = kg::lemma2_bound(n, sigma, true);
                if (hyp && exact > bound)
                    violation = true;
                rows.push_back({n, r, sigma, exact, bound, hyp});
            }
        }
    }
    std::string payload;
    if (cfg.format == "json") {
        std::ostringstream os;
        os << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& w = rows[i];
            os << "  {\"n\": " << w.n << ", \"r\": " << w.r
               << ", \"sigma\": " << csv_double(w.sigma)
               << ", \"exact_defect_norm\": " << csv_double(w.exact)
               << ", \"lemma2_bound\": " << csv_double(w.bound)
               << ", \"hypothesis_ok\": " << (w.hypothesis_ok ? 1 : 0) << "}"
               << (i + 1 < rows.size() ? "," : "") << "\n";
        }
        os << "]\n";
        payload = os.str();
    } else {
        std::ostringstream os;
        os << "n,r,sigma,exact_defect_norm,lemma2_bound,hypothesis_ok\n";
        for (const Row& w : rows)
            os << w.n << ',' << w.r << ',' << csv_double(w.sigma) << ','
               << csv_double(w.exact) << ',' << csv_double(w.bound) << ','
               << (w.hypothesis_ok ? 1 : 0) << '\n';
        payload = os.str();
    }
    write_payload(cfg, payload, out);
    return violation ? 1 : 0;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
    require_single(cfg.n_list, "n");
    require_single(cfg.r_list, "r");
    const int n = cfg.n_list.front();
    const int r = cfg.r_list.front();
    const double nu = cfg.nu.value_or(default_nu(cfg.command));
    const double sigma = cfg.sigma_list.empty() ? default_sigma("compare", n, nu)
                                                : cfg.sigma_list.front();
    const KgParams params(n, r, sigma);
    const KgSpectralSystem sys = kg::build(params);

    Vector v0;
    if (!cfg.v0_file.empty()) {
        v0 = load_v0_file(cfg.v0_file, 2 * params.grid_points());
    } else {
        mc::RngStream rng(cfg.seed, 0);
        v0 = mc::constraint_values(sys, mc::sample_prior(sys, rng));
    }

    const auto [gsys, gc] = ham::assemble(kg::assembled_blocks(sys));

    struct Row {
        double t, direct, quadrature, bound, threshold;
    };
    std::vector<Row> rows;
    const double base = 2.0 * n + 1.0;
    bool disagree = false;
    std::ostringstream field;
    field << "t,x,u_exact,u_approx\n";
    for (double t : cfg.t_list) {
        const kg::KgState exact = kg::kg_exact_mean(sys, v0, t);
        const kg::KgState approx = kg::kg_approx_mean(sys, v0, t);
        const kg::KgState diff{approx.q - exact.q, approx.p - exact.p};
        const double direct = kg::a_norm(sys, diff);
        const Vector e_vec = core::error_integral(gsys, gc, v0, t, 1e-10);
        const double quadrature = gsys.a_norm(e_vec);
        const double bound = core::lemma1_bound(gsys, gc, v0, t);
        const double threshold = 2.3 * t / std::pow(base, nu);
        if (std::abs(direct - quadrature) > 1e-6)
            disagree = true;
        rows.push_back({t, direct, quadrature, bound, threshold});
        for (int i = 0; i < 256; ++i) {
            const double x = 2.0 * std::numbers::pi * i / 256.0;
            field << csv_double(t) << ',' << csv_double(x) << ','
                  << csv_double(eval_u(exact.q, params.m(), x)) << ','
                  << csv_double(eval_u(approx.q, params.m(), x)) << '\n';
        }
    }

    std::string payload;
    if (cfg.format == "json") {
        std::ostringstream os;
        os << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& w = rows[i];
            os << "  {\"t\": " << csv_double(w.t)
               << ", \"error_direct_a\": " << csv_double(w.direct)
               << ", \"error_quadrature_a\": " << csv_double(w.quadrature)
               << ", \"lemma1_bound\": " << csv_double(w.bound)
               << ", \"theorem1_threshold\": " << csv_double(w.threshold) << "}"
               << (i + 1 < rows.size() ? "," : "") << "\n";
        }
        os << "]\n";
        payload = os.str();
    } else {
        std::ostringstream os;
        os << "t,error_direct_a,error_quadrature_a,lemma1_bound,theorem1_threshold\n";
        for (const Row& w : rows)
            os << csv_double(w.t) << ',' << csv_double(w.direct) << ','
               << csv_double(w.quadrature) << ',' << csv_double(w.bound) << ','
               << csv_double(w.threshold) << '\n';
        payload = os.str();
    }
    if (cfg.out_path.empty()) {
        out << payload << '\n' << field.str();
    } else {
        write_payload(cfg, payload, out);
        std::ofstream f(cfg.out_path + ".field.csv", std::ios::binary);
        if (!f)
            throw ConfigError("cannot open output file '" + cfg.out_path +
                              ".field.csv'");
        f << field.str();
    }
    return disagree ? 1 : 0;
}

int cmd_theorem1(const RunConfig& cfg, std::ostream& out) {
    const double nu = cfg.nu.value_or(default_nu(cfg.command));
    std::vector<ExperimentReport> reports;
    for (int n : cfg.n_list) {
        const std::vector<double> sigmas =
            cfg.sigma_list.empty()
                ? std::vector<double>{default_sigma(cfg.command, n, nu)}
                : cfg.sigma_list;
        for (int r : cfg.r_list)
            for (double sigma : sigmas) {
                const KgParams params(n, r, sigma);
                if (!params.theorem1_hypothesis(nu) && !cfg.force_hypothesis)
                    throw ConfigError(
                        "n=" + std::to_string(n) + " sigma=" + std::to_string(sigma) +
                        " violates (2n+1) sigma^2 >= 6(nu+1) log(2n+1); "
                        "use --force-hypothesis");
                const KgSpectralSystem sys = kg::build(params);
                for (double t : cfg.t_list)
                    reports.push_back(
                        mc::verify_theorem1(sys, nu, t, cfg.samples, cfg.seed));
            }
    }
    return emit_reports(cfg, reports, out);
}

int cmd_theorem2(const RunConfig& cfg, std::ostream& out) {
    const double nu = cfg.nu.value_or(default_nu(cfg.command));
    std::vector<ExperimentReport> reports;
    for (int n : cfg.n_list) {
        const std::vector<double> sigmas =
            cfg.sigma_list.empty()
                ? std::vector<double>{default_sigma(cfg.command, n, nu)}
                : cfg.sigma_list;
        for (double sigma : sigmas) {
            int r_max;
            if (cfg.r_max.has_value()) {
                r_max = *cfg.r_max;
            } else {
                int r_hi = 1;
                for (int r : cfg.r_list)
                    r_hi = std::max(r_hi, r);
                r_max = r_hi + 2;
            }
            const KgParams probe(n, 0, sigma);
            if (!probe.theorem1_hypothesis(nu) && !cfg.force_hypothesis)
                throw ConfigError(
                    "n=" + std::to_string(n) + " sigma=" + std::to_string(sigma) +
                    " violates (2n+1) sigma^2 >= 6(nu+1) log(2n+1); "
                    "use --force-hypothesis");
            reports.push_back(mc::verify_theorem2(n, sigma, nu, r_max, cfg.samples,
                                                  cfg.seed));
        }
    }
    return emit_reports(cfg, reports, out);
}

int cmd_identities(const RunConfig& cfg, std::ostream& out) {
    require_single(cfg.n_list, "n");
    require_single(cfg.r_list, "r");
    const int n = cfg.n_list.front();
    const int r = cfg.r_list.front();
    const double sigma = cfg.sigma_list.empty()
                             ? default_sigma(cfg.command, n, 0.5)
                             : cfg.sigma_list.front();
    const KgSpectralSystem sys = kg::build(KgParams(n, r, sigma));
    const ExperimentReport energy =
        mc::verify_constraint_energy(sys, cfg.samples, cfg.seed);
    const ExperimentReport cov = mc::verify_covariance(
        sys, std::max(cfg.samples, 2), cfg.seed);

    ExperimentReport rep;
    rep.experiment = "identities";
    rep.params = energy.params;
    rep.seed = cfg.seed;
    rep.version = kVersion;
    for (const auto& e : energy.estimates)
        rep.estimates.push_back(e);
    for (const auto& e : cov.estimates)
        rep.estimates.push_back(e);
    for (const auto& th : energy.thresholds)
        rep.thresholds.push_back(th);
    for (const auto& th : cov.thresholds)
        rep.thresholds.push_back(th);
    rep.verdict = mc::combine(energy.verdict, cov.verdict);
    return emit_reports(cfg, {rep}, out);
}

int cmd_smooth(const RunConfig& cfg, std::ostream& out) {
    require_single(cfg.n_list, "n");
    require_single(cfg.r_list, "r");
    const int n = cfg.n_list.front();
    const int r = cfg.r_list.front();
    const double sigma = cfg.sigma_list.empty()
                             ? default_sigma(cfg.command, n, cfg.nu.value_or(0.0))
                             : cfg.sigma_list.front();
    const KgParams params(n, r, sigma);
    const KgSpectralSystem sys = kg::build(params);

    // default smooth profile: coefficients decay like (1 + k^2)^{-3}
    const int m = params.m();
    Vector q0 = Vector::Zero(params.coeff_count());
    Vector p0 = Vector::Zero(params.coeff_count());
    for (int k = 0; k <= m; ++k) {
        const double decay = std::pow(1.0 + static_cast<double>(k) * k, -3.0);
        q0(kg::idx_a(m, k)) = decay;
        p0(kg::idx_a(m, k)) = 0.3 * decay;
        if (k >= 1) {
            q0(kg::idx_b(m, k)) = 0.5 * decay;
            p0(kg::idx_b(m, k)) = -0.2 * decay;
        }
    }
    const ExperimentReport rep =
        mc::smooth_data_experiment(sys, q0, p0, cfg.smooth_order, cfg.nu);
    return emit_reports(cfg, {rep}, out);
}

int cmd_lowerbound_scan(const RunConfig& cfg, std::ostream& out) {
    require_single(cfg.n_list, "n");
    require_single(cfg.r_list, "r");
    const int n = cfg.n_list.front();
    const int r = cfg.r_list.front();
    const double nu = cfg.nu.value_or(default_nu(cfg.command));
    const double sigma = cfg.sigma_list.empty()
                             ? default_sigma(cfg.command, n, nu)
                             : cfg.sigma_list.front();
    const KgSpectralSystem sys = kg::build(KgParams(n, r, sigma));
    const ExperimentReport rep = mc::lowerbound_scan(sys, cfg.t_list, nu);
    emit_reports(cfg, {rep}, out);
    return 0; // exploratory: never asserts
}

} // namespace

std::optional<RunConfig> parse_args(const std::vector<std::string>& args,
                                    std::ostream& out) {
    CLI::App app{"optimal prediction experiments for the spectral Klein-Gordon "
                 "equation"};
    app.name("optpredict");

    std::string command, config_file, n_str, r_str, sigma_str, t_str, format,
        out_path;
    double nu = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
    bool force = false;

    app.add_option("command", command,
                   "one of: bounds compare theorem1 theorem2 identities smooth "
                   "lowerbound-scan")
        ->required();
    app.add_option("--config", config_file, "key=value config file");
    app.add_option("--n", n_str, "constraint resolution(s), comma separated");
    app.add_option("--r", r_str, "spectral excess value(s), comma separated");
    app.add_option("--sigma", sigma_str, "kernel width(s), comma separated");
    app.add_option("--nu", nu, "probability exponent nu");
    app.add_option("--t", t_str, "time value(s), comma separated");
    app.add_option("--samples", samples, "Monte Carlo sample count");
    app.add_option("--seed", seed, "base RNG seed");
    app.add_option("--out", out_path, "output path (default: stdout)");
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--force-hypothesis", force,
                 "run outside the hypothesis region, flagging every row");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    RunConfig cfg;
    cfg.command = command;
    if (!kCommands.count(command))
        throw ConfigError("unknown command '" + command + "'");

    std::set<std::string> cli_set;
    if (app.count("--n")) {
        cfg.n_list = parse_int_list(n_str, "n");
        cli_set.insert("n");
    }
    if (app.count("--r")) {
        cfg.r_list = parse_int_list(r_str, "r");
        cli_set.insert("r");
    }
    if (app.count("--sigma")) {
        cfg.sigma_list = parse_double_list(sigma_str, "sigma");
        cli_set.insert("sigma");
    }
    if (app.count("--nu")) {
        cfg.nu = nu;
        cli_set.insert("nu");
    }
    if (app.count("--t")) {
        cfg.t_list = parse_double_list(t_str, "t");
        cli_set.insert("t");
    }
    if (app.count("--samples")) {
        cfg.samples = samples;
        cli_set.insert("samples");
    }
    if (app.count("--seed")) {
        cfg.seed = seed;
        cli_set.insert("seed");
    }
    if (app.count("--out")) {
        cfg.out_path = out_path;
        cli_set.insert("out");
    }
    if (app.count("--format")) {
        cfg.format = format;
        cli_set.insert("format");
    }
    if (force) {
        cfg.force_hypothesis = true;
        cli_set.insert("force_hypothesis");
    }

    if (!config_file.empty())
        for (const auto& [key, value] : load_config_file(config_file))
            apply_config_entry(cfg, key, value, cli_set);

    if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("invalid value for 'format': '" + cfg.format + "'");
    if (cfg.samples < 1)
        throw ConfigError("'samples' must be >= 1");
    return cfg;
}

int run(const RunConfig& cfg_in, std::ostream& out, std::ostream& diag) {
    RunConfig cfg = cfg_in;
    // command-specific defaults
    if (cfg.n_list.empty()) {
        if (cfg.command == "bounds")
            cfg.n_list = {1, 2, 3, 4, 5, 6, 7, 8};
        else
            cfg.n_list = {2};
    }
    if (cfg.r_list.empty()) {
        if (cfg.command == "bounds")
            cfg.r_list = {1, 2, 3};
        else
            cfg.r_list = {1};
    }
    if (cfg.t_list.empty()) {
        if (cfg.command == "compare")
            for (int i = 0; i <= 10; ++i)
                cfg.t_list.push_back(0.5 * i);
        else if (cfg.command == "lowerbound-scan")
            for (int i = 0; i <= 20; ++i)
                cfg.t_list.push_back(0.5 * i);
        else
            cfg.t_list = {1.0};
    }

    try {
        if (cfg.command == "bounds")
            return cmd_bounds(cfg, out);
        if (cfg.command == "compare")
            return cmd_compare(cfg, out);
        if (cfg.command == "theorem1")
            return cmd_theorem1(cfg, out);
        if (cfg.command == "theorem2")
            return cmd_theorem2(cfg, out);
        if (cfg.command == "identities")
            return cmd_identities(cfg, out);
        if (cfg.command == "smooth")
            return cmd_smooth(cfg, out);
        if (cfg.command == "lowerbound-scan")
            return cmd_lowerbound_scan(cfg, out);
    } catch (const InvalidParams& e) {
        // bad numeric input is a usage problem
        throw ConfigError(e.what());
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
    throw ConfigError("unknown command '" + cfg.command + "'");
}

int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& diag) {
    try {
        const auto cfg = parse_args(args, out);
        if (!cfg)
            return 0; // help
        return run(*cfg, out, diag);
    } catch (const ConfigError& e) {
        diag << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return main_entry(args, std::cout, std::cerr);
}

} // namespace optpredict::cli

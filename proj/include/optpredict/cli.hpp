#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace optpredict::cli {

/// Flat run configuration: defaults < config file (key=value lines) <
/// explicit command-line flags. Numeric fields are validated against the
/// target command's preconditions before anything runs; hypothesis
/// violations are rejected unless force_hypothesis is set, in which case
/// every output row carries hypothesis_ok = 0.
struct RunConfig {
    std::string command;
    std::vector<int> n_list;
    std::vector<int> r_list;
    std::vector<double> sigma_list; // empty: per-n default (see README)
    std::optional<double> nu;
    std::vector<double> t_list;
    int samples = 10000;
    std::uint64_t seed = 12345;
    std::string out_path;  // empty: stdout
    std::string format;    // "", "csv" or "json"
    bool force_hypothesis = false;
    std::string v0_file;
    int smooth_order = 3;
    std::optional<int> r_max;
};

/// Parses command-line arguments (without argv[0]) plus an optional config
/// file. Returns nullopt when help was requested (help text goes to `out`).
/// Throws ConfigError on malformed usage or config.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args,
                                    std::ostream& out);

/// Executes the configured command, writing the report to cfg.out_path or
/// `out`. Returns 0 (pass), 1 (fail) or 3 (inconclusive).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

/// Full entry point with the exit-code contract: 0 pass, 1 fail,
/// 2 usage/config error, 3 inconclusive.
int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& diag);
int main_entry(int argc, char** argv);

} // namespace optpredict::cli

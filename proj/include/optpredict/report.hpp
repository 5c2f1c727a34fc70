#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace optpredict::mc {

struct Estimate {
    std::string name;
    double value = 0.0;
    double std_error = 0.0;
};

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict v);

/// Worst-case combiner: Fail dominates Inconclusive dominates Pass.
Verdict combine(Verdict a, Verdict b);

/// Structured outcome of one experiment. Every number needed to re-derive
/// the verdict is stored; serialization refuses NaN/Inf.
struct ExperimentReport {
    std::string experiment;
    std::vector<std::pair<std::string, double>> params; // insertion-ordered
    std::vector<Estimate> estimates;
    std::vector<std::pair<std::string, double>> thresholds;
    Verdict verdict = Verdict::Pass;
    std::uint64_t seed = 0;
    std::string version;

    void add_param(const std::string& name, double value) {
        params.emplace_back(name, value);
    }
    void add_estimate(const std::string& name, double value, double std_error = 0.0) {
        estimates.push_back({name, value, std_error});
    }
    void add_threshold(const std::string& name, double value) {
        thresholds.emplace_back(name, value);
    }
    /// The estimate with the given name; throws if absent.
    const Estimate& estimate(const std::string& name) const;
    double threshold(const std::string& name) const;
};

/// JSON per the report schema:
/// {experiment, params, estimates: [{name, value, stderr}], thresholds,
///  verdict, seed, version}.
std::string to_json(const ExperimentReport& report, int indent = 2);
std::string to_json(const std::vector<ExperimentReport>& reports, int indent = 2);

/// Long-format CSV, one row per estimate/threshold, 17 significant digits.
std::string to_csv(const ExperimentReport& report);
std::string to_csv(const std::vector<ExperimentReport>& reports);

/// "%.17g" rendering used by every CSV writer.
std::string csv_double(double x);

} // namespace optpredict::mc

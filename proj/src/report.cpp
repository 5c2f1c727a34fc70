#include "optpredict/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "optpredict/errors.hpp"

namespace optpredict::mc {

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass:
        return "PASS";
    case Verdict::Fail:
        return "FAIL";
    case Verdict::Inconclusive:
        return "INCONCLUSIVE";
    }
    return "UNKNOWN";
}

Verdict combine(Verdict a, Verdict b) {
    if (a == Verdict::Fail || b == Verdict::Fail)
        return Verdict::Fail;
    if (a == Verdict::Inconclusive || b == Verdict::Inconclusive)
        return Verdict::Inconclusive;
    return Verdict::Pass;
}

const Estimate& ExperimentReport::estimate(const std::string& name) const {
    for (const auto& e : estimates)
        if (e.name == name)
            return e;
    throw Error("ExperimentReport: no estimate named " + name);
}

double ExperimentReport::threshold(const std::string& name) const {
    for (const auto& [key, value] : thresholds)
        if (key == name)
            return value;
    throw Error("ExperimentReport: no threshold named " + name);
}

namespace {

double checked(double x, const std::string& name) {
    if (!std::isfinite(x))
        throw Error("report serialization: non-finite value for " + name);
    return x;
}

nlohmann::ordered_json report_json(const ExperimentReport& r) {
    nlohmann::ordered_json j;
    j["experiment"] = r.experiment;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [name, value] : r.params)
        params[name] = checked(value, name);
    j["params"] = std::move(params);
    nlohmann::ordered_json estimates = nlohmann::ordered_json::array();
    for (const auto& e : r.estimates) {
        nlohmann::ordered_json je;
        je["name"] = e.name;
        je["value"] = checked(e.value, e.name);
        je["stderr"] = checked(e.std_error, e.name + ".stderr");
        estimates.push_back(std::move(je));
    }
    j["estimates"] = std::move(estimates);
    nlohmann::ordered_json thresholds = nlohmann::ordered_json::object();
    for (const auto& [name, value] : r.thresholds)
        thresholds[name] = checked(value, name);
    j["thresholds"] = std::move(thresholds);
    j["verdict"] = to_string(r.verdict);
    j["seed"] = r.seed;
    j["version"] = r.version;
    return j;
}

} // namespace

std::string to_json(const ExperimentReport& report, int indent) {
    return report_json(report).dump(indent) + "\n";
}

std::string to_json(const std::vector<ExperimentReport>& reports, int indent) {
    if (reports.size() == 1)
        return to_json(reports.front(), indent);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports)
        arr.push_back(report_json(r));
    return arr.dump(indent) + "\n";
}

std::string csv_double(double x) {
    if (!std::isfinite(x))
        throw Error("csv_double: non-finite value");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

void csv_rows(std::ostringstream& out, const ExperimentReport& r) {
    for (const auto& [name, value] : r.params)
        out << r.experiment << ",param," << name << ',' << csv_double(value)
            << ",," << to_string(r.verdict) << ',' << r.seed << ',' << r.version
            << '\n';
    for (const auto& e : r.estimates)
        out << r.experiment << ",estimate," << e.name << ','
            << csv_double(e.value) << ',' << csv_double(e.std_error) << ','
            << to_string(r.verdict) << ',' << r.seed << ',' << r.version << '\n';
    for (const auto& [name, value] : r.thresholds)
        out << r.experiment << ",threshold," << name << ',' << csv_double(value)
            << ",," << to_string(r.verdict) << ',' << r.seed << ',' << r.version
            << '\n';
}

} // namespace

std::string to_csv(const ExperimentReport& report) {
    return to_csv(std::vector<ExperimentReport>{report});
}

std::string to_csv(const std::vector<ExperimentReport>& reports) {
    std::ostringstream out;
    out << "experiment,kind,name,value,stderr,verdict,seed,version\n";
    for (const auto& r : reports)
        csv_rows(out, r);
    return out.str();
}

} // namespace optpredict::mc

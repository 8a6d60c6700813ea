#include "netcon/report_json.hpp"

#include <cstdio>
#include <cstdlib>

namespace netcon {

double round_significant(double value, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
    return std::strtod(buffer, nullptr);
}

namespace {

nlohmann::ordered_json one_indexed(const std::vector<int>& agents) {
    nlohmann::ordered_json arr = nlohmann::json::array();
    for (int i : agents) arr.push_back(i + 1);
    return arr;
}

}  // namespace

nlohmann::ordered_json to_json(const Violation& violation) {
    nlohmann::ordered_json v;
    v["coalition"] = one_indexed(violation.deviation.coalition);
    v["permutation"] = one_indexed(violation.deviation.images);
    auto& gains = v["gains"] = nlohmann::json::array();
    for (double g : violation.gains) gains.push_back(round_significant(g));
    v["total"] = round_significant(violation.total);
    return v;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
    nlohmann::ordered_json doc;
    doc["verdict"] = report.pass ? "pass" : "fail";
    doc["mode"] = to_string(report.mode);
    doc["adjacency"] = report.adjacency_required;
    doc["max_size"] = report.max_size;
    doc["alpha"] = round_significant(report.alpha);
    auto& violations = doc["violations"] = nlohmann::json::array();
    for (const auto& v : report.violations) violations.push_back(to_json(v));
    doc["examined"]["coalitions"] = report.coalitions_examined;
    doc["examined"]["permutations"] = report.permutations_examined;
    return doc;
}

nlohmann::ordered_json to_json(const SearchRecord& record) {
    nlohmann::ordered_json doc;
    doc["instance"] = record.instance;
    doc["n"] = record.n;
    auto& edges = doc["edges"] = nlohmann::json::array();
    for (const auto& [i, j] : record.edges) edges.push_back({i + 1, j + 1});
    doc["alpha"] = round_significant(record.alpha);
    doc["feasible"] = record.feasible;
    doc["mode"] = to_string(record.mode);
    doc["adjacency"] = record.adjacency_required;
    doc["verdict"] = record.pass ? "pass" : "fail";
    auto& viol = doc["minimal_violations"] = nlohmann::json::array();
    for (const auto& v : record.minimal_violations) viol.push_back(to_json(v));
    return doc;
}

}  // namespace netcon

#include "dpt/report_io.hpp"

namespace dpt {

nlohmann::ordered_json report_to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["group"] = r.group;
  j["instance"] = r.instance;
  j["status"] = r.status;
  j["exact"] = r.exact;
  j["lhs_exact"] = r.lhs_exact;
  j["rhs_exact"] = r.rhs_exact;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["lhs_gap"] = r.lhs_gap;
  j["rhs_gap"] = r.rhs_gap;
  j["slack"] = r.slack;
  j["tolerance"] = r.tolerance;
  j["relation"] = r.relation;
  j["lhs_source"] = r.lhs_source;
  j["rhs_source"] = r.rhs_source;
  j["mapping"] = r.mapping;
  j["note"] = r.note;
  return j;
}

VerificationReport report_from_json(const nlohmann::ordered_json& j) {
  VerificationReport r;
  r.id = j.at("id");
  r.group = j.at("group");
  r.instance = j.at("instance");
  r.status = j.at("status");
  r.exact = j.at("exact");
  r.lhs_exact = j.at("lhs_exact");
  r.rhs_exact = j.at("rhs_exact");
  r.lhs = j.at("lhs");
  r.rhs = j.at("rhs");
  r.lhs_gap = j.at("lhs_gap");
  r.rhs_gap = j.at("rhs_gap");
  r.slack = j.at("slack");
  r.tolerance = j.at("tolerance");
  r.relation = j.at("relation");
  r.lhs_source = j.at("lhs_source");
  r.rhs_source = j.at("rhs_source");
  r.mapping = j.at("mapping");
  r.note = j.at("note");
  return r;
}

std::string suite_to_json(const SuiteReport& suite) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : suite.reports) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

SuiteReport suite_from_json(const std::string& text) {
  SuiteReport out;
  for (const auto& j : nlohmann::ordered_json::parse(text)) {
    out.reports.push_back(report_from_json(j));
    const auto& s = out.reports.back().status;
    if (s == "pass") ++out.passed;
    else if (s == "fail") ++out.failed;
    else if (s == "skipped") ++out.skipped;
    else ++out.recorded;
  }
  return out;
}

}  // namespace dpt

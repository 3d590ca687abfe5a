#include "yamabe/soliton/report_io.hpp"

#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace yamabe {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string identity_report_json(const IdentityReport& r) {
  nlohmann::ordered_json out;
  nlohmann::ordered_json ids = nlohmann::ordered_json::object();
  for (const auto& s : r.summaries) {
    nlohmann::ordered_json e;
    e["max_residual"] = s.max_residual;
    e["tolerance"] = s.tolerance;
    e["passed"] = s.passed();
    e["evaluated"] = s.evaluated;
    if (s.evaluated > 0) {
      e["worst_index"] = s.worst_index;
      e["worst_point"] = r.points[s.worst_index];
    }
    ids[to_string(s.key)] = std::move(e);
  }
  out["identities"] = std::move(ids);
  if (r.gate_passed) {
    out["gate"] = {{"tolerance", r.gate_tolerance}, {"passed", *r.gate_passed}};
  }
  out["points"] = r.points.size();
  out["skipped"] = r.skipped;
  out["notes"] = r.notes;
  return out.dump(2) + "\n";
}

std::string identity_report_csv(const IdentityReport& r, const std::vector<std::string>& coordinates) {
  std::ostringstream os;
  os << "identity,point";
  for (const auto& c : coordinates) os << ',' << c;
  os << ",residual,jet_residual,fd_residual\n";
  auto coords = [&](std::size_t idx) {
    std::string s;
    for (double x : r.points[idx]) s += ',' + num(x);
    return s;
  };
  for (const auto& row : r.rows) {
    os << to_string(row.key) << ',' << row.point_index << coords(row.point_index) << ',' << num(row.residual) << ','
       << num(row.jet_residual) << ',' << (row.fd_residual ? num(*row.fd_residual) : "") << '\n';
  }
  for (const auto& s : r.summaries) {
    if (s.evaluated == 0) continue;
    os << to_string(s.key) << ",summary" << coords(s.worst_index) << ',' << num(s.max_residual) << ",,\n";
  }
  return os.str();
}

}  // namespace yamabe

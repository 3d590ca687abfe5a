#include "yamabe/cli/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "yamabe/ode/trajectory_io.hpp"
#include "yamabe/soliton/report_io.hpp"

namespace yamabe {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const char* status_of(const JobResult& r) {
  switch (r.exit_code()) {
    case 0: return "ok";
    case 2: return "tolerance_violation";
    default: return "numerical_failure";
  }
}

ordered_json json_of(const JobResult& r) {
  ordered_json j;
  j["name"] = r.name;
  j["mode"] = to_string(r.mode);
  j["status"] = status_of(r);
  j["exit_code"] = r.exit_code();
  ordered_json checks = ordered_json::object();
  for (const auto& c : r.checks) {
    checks[c.name] = {{"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed()}};
  }
  j["checks"] = std::move(checks);
  if (r.soliton) j["identities"] = ordered_json::parse(identity_report_json(*r.soliton));
  if (r.cotton) j["cotton"] = ordered_json::parse(identity_report_json(*r.cotton));
  if (!r.battery.empty()) {
    ordered_json b = ordered_json::array();
    for (const auto& e : r.battery) {
      ordered_json item;
      item["seed"] = e.seed;
      item["report"] = ordered_json::parse(identity_report_json(e.report));
      b.push_back(std::move(item));
    }
    j["battery"] = std::move(b);
  }
  if (!r.curvature.empty()) {
    ordered_json rows = ordered_json::array();
    for (const auto& c : r.curvature) {
      rows.push_back({{"point", c.point},
                      {"R", c.scalar},
                      {"ricci_max", c.ricci_max},
                      {"riemann_max", c.riemann_max},
                      {"weyl_max", c.weyl_max},
                      {"cotton_max", c.cotton_max},
                      {"condition", c.condition}});
    }
    j["curvature"] = {{"coordinates", r.coordinates}, {"rows", std::move(rows)}};
  }
  if (r.trajectory) j["trajectory"] = ordered_json::parse(trajectory_json(*r.trajectory));
  if (r.invariants) {
    const InvariantReport& inv = *r.invariants;
    ordered_json i;
    i["c_drift"] = inv.c_drift ? ordered_json(*inv.c_drift) : ordered_json(nullptr);
    i["c_balance"] = inv.c_balance ? ordered_json(*inv.c_balance) : ordered_json(nullptr);
    i["key3"] = inv.key3 ? ordered_json(*inv.key3) : ordered_json(nullptr);
    i["rpp"] = inv.rpp;
    i["rpp_samples"] = inv.rpp_samples;
    i["scalar_drift"] = inv.scalar_drift;
    i["sign_lemma"] = inv.sign_lemma;
    j["invariants"] = std::move(i);
  }
  if (r.classification) {
    j["classification"] = {{"label", to_string(r.classification->label)},
                           {"evidence", r.classification->evidence},
                           {"tolerances", r.classification->tolerances}};
  }
  j["messages"] = r.messages;
  return j;
}

std::string prefix_lines(const std::string& csv, const std::string& header_prefix, const std::string& row_prefix) {
  std::string out;
  std::size_t start = 0;
  bool first = true;
  while (start < csv.size()) {
    const std::size_t end = csv.find('\n', start);
    const std::string line = csv.substr(start, end == std::string::npos ? std::string::npos : end - start);
    out += (first ? header_prefix : row_prefix) + line + '\n';
    first = false;
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

std::vector<RenderedFile> csv_of(const JobResult& r) {
  std::vector<RenderedFile> out;
  std::string checks = "name,value,tolerance,passed\n";
  for (const auto& c : r.checks) {
    checks += c.name + ',' + num(c.value) + ',' + num(c.tolerance) + ',' + (c.passed() ? "true" : "false") + '\n';
  }
  out.push_back({".checks.csv", checks});
  if (r.soliton) out.push_back({".identities.csv", identity_report_csv(*r.soliton, r.coordinates)});
  if (r.cotton) out.push_back({".cotton.csv", identity_report_csv(*r.cotton, r.coordinates)});
  if (!r.battery.empty()) {
    std::string b;
    for (std::size_t k = 0; k < r.battery.size(); ++k) {
      const std::string csv = identity_report_csv(r.battery[k].report, r.coordinates);
      const std::string seed = std::to_string(r.battery[k].seed) + ',';
      const std::string body = prefix_lines(csv, "seed,", seed);
      b += k == 0 ? body : body.substr(body.find('\n') + 1);
    }
    out.push_back({".battery.csv", b});
  }
  if (!r.curvature.empty()) {
    std::string c = "point";
    for (const auto& x : r.coordinates) c += ',' + x;
    c += ",R,ricci_max,riemann_max,weyl_max,cotton_max,condition\n";
    for (std::size_t i = 0; i < r.curvature.size(); ++i) {
      const CurvatureRow& row = r.curvature[i];
      c += std::to_string(i);
      for (double x : row.point) c += ',' + num(x);
      c += ',' + num(row.scalar) + ',' + num(row.ricci_max) + ',' + num(row.riemann_max) + ',' + num(row.weyl_max) +
           ',' + num(row.cotton_max) + ',' + num(row.condition) + '\n';
    }
    out.push_back({".curvature.csv", c});
  }
  if (r.trajectory) out.push_back({".trajectory.csv", trajectory_csv(*r.trajectory)});
  return out;
}

std::string markdown_of(const JobResult& r) {
  std::string md = "# " + r.name + "\n\n";
  md += "- mode: `" + std::string(to_string(r.mode)) + "`\n";
  md += "- status: `" + std::string(status_of(r)) + "` (exit " + std::to_string(r.exit_code()) + ")\n";
  if (r.classification) md += "- classification: `" + std::string(to_string(r.classification->label)) + "`\n";
  if (r.trajectory) {
    const auto& t = *r.trajectory;
    md += "- integration: `" + std::string(to_string(t.status)) + "`, " + std::to_string(t.steps) + " steps, " +
          std::to_string(t.rejected) + " rejected, rel_tol " + short_num(t.options.rel_tol) + ", abs_tol " +
          short_num(t.options.abs_tol) + "\n";
  }
  if (!r.curvature.empty()) md += "- curvature samples: " + std::to_string(r.curvature.size()) + "\n";
  if (!r.battery.empty()) md += "- battery metrics: " + std::to_string(r.battery.size()) + "\n";
  md += "\n## Checks\n\n| check | value | tolerance | result |\n|---|---|---|---|\n";
  for (const auto& c : r.checks) {
    md += "| " + c.name + " | " + short_num(c.value) + " | " + short_num(c.tolerance) + " | " +
          (c.passed() ? "pass" : "FAIL") + " |\n";
  }
  if (r.classification) {
    md += "\n## Classification evidence\n\n";
    for (const auto& e : r.classification->evidence) md += "- `" + e + "`\n";
  }
  auto notes = r.messages;
  for (const auto* rep : {r.soliton ? &*r.soliton : nullptr, r.cotton ? &*r.cotton : nullptr}) {
    if (rep) notes.insert(notes.end(), rep->notes.begin(), rep->notes.end());
  }
  if (!notes.empty()) {
    md += "\n## Notes\n\n";
    for (const auto& m : notes) md += "- " + m + "\n";
  }
  return md;
}

std::string svg_chart(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& xlabel,
                      const std::string& ylabel) {
  constexpr double W = 640, H = 360, L = 70, R = 20, T = 20, B = 50;
  double x0 = xs.front(), x1 = xs.back();
  double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
  for (double y : ys) {
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 - y0 < 1e-12 * std::max(1.0, std::abs(y0))) {
    const double pad = std::max(1e-12, 0.5 * std::abs(y0));
    y0 -= pad;
    y1 += pad;
  }
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  char buf[128];
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"360\" viewBox=\"0 0 640 360\">\n";
  s += "<rect width=\"640\" height=\"360\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<path d=\"M%.1f %.1f V%.1f H%.1f\" stroke=\"black\" fill=\"none\"/>\n", L, T, H - B,
                W - R);
  s += buf;
  s += "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(xs[i]), py(ys[i]));
    s += buf;
  }
  s += "\"/>\n";
  auto text = [&](double x, double y, const std::string& t, const char* anchor) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"%s\">", x, y, anchor);
    s += buf + t + "</text>\n";
  };
  text(L, H - B + 16, short_num(x0), "middle");
  text(W - R, H - B + 16, short_num(x1), "middle");
  text(L - 6, H - B, short_num(y0), "end");
  text(L - 6, T + 10, short_num(y1), "end");
  text((L + W - R) / 2, H - 12, xlabel, "middle");
  text(14, (T + H - B) / 2, ylabel, "start");
  s += "</svg>\n";
  return s;
}

std::vector<RenderedFile> svg_of(const JobResult& r) {
  std::vector<RenderedFile> out;
  if (!r.trajectory || r.trajectory->samples.empty()) return out;
  const auto& t = *r.trajectory;
  std::vector<double> xs, rs, cs;
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    xs.push_back(t.samples[i].r);
    rs.push_back(t.diagnostics[i].scalar);
    if (t.diagnostics[i].c) cs.push_back(*t.diagnostics[i].c);
  }
  out.push_back({".R.svg", svg_chart(xs, rs, "r", "R")});
  if (cs.size() == xs.size()) out.push_back({".c.svg", svg_chart(xs, cs, "r", "c")});
  return out;
}

}  // namespace

Format format_from(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "markdown" || name == "md") return Format::Markdown;
  if (name == "svg") return Format::Svg;
  throw PreconditionError("unknown format " + name);
}

std::vector<RenderedFile> render(const JobResult& r, Format f) {
  switch (f) {
    case Format::Json: return {{".json", json_of(r).dump(2) + "\n"}};
    case Format::Csv: return csv_of(r);
    case Format::Markdown: return {{".md", markdown_of(r)}};
    case Format::Svg: return svg_of(r);
  }
  return {};
}

std::vector<std::string> write_outputs(const JobResult& r, const std::string& dir, const std::string& stem,
                                       const std::vector<Format>& formats) {
  if (r.empty()) throw PreconditionError("empty result set, nothing to write");
  std::vector<RenderedFile> files;
  for (Format f : formats) {
    auto part = render(r, f);
    files.insert(files.end(), part.begin(), part.end());
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw OutputError("cannot create output directory " + dir);
  std::vector<std::string> written;
  for (const auto& f : files) {
    const fs::path p = fs::path(dir) / (stem + f.suffix);
    std::ofstream o(p, std::ios::binary | std::ios::trunc);
    if (!o) throw OutputError("cannot write " + p.string());
    o << f.content;
    if (!o) throw OutputError("write failed for " + p.string());
    written.push_back(p.string());
  }
  return written;
}

std::string summary_text(const JobResult& r) {
  std::string s = r.name + " [" + to_string(r.mode) + "]\n";
  std::size_t w = 5;
  for (const auto& c : r.checks) w = std::max(w, c.name.size());
  char buf[256];
  if (!r.checks.empty()) {
    std::snprintf(buf, sizeof buf, "  %-*s  %12s  %12s  %s\n", static_cast<int>(w), "check", "value", "tolerance",
                  "result");
    s += buf;
    for (const auto& c : r.checks) {
      std::snprintf(buf, sizeof buf, "  %-*s  %12.4g  %12.4g  %s\n", static_cast<int>(w), c.name.c_str(), c.value,
                    c.tolerance, c.passed() ? "pass" : "FAIL");
      s += buf;
    }
  }
  if (!r.curvature.empty()) s += "  curvature samples: " + std::to_string(r.curvature.size()) + "\n";
  if (r.trajectory) {
    const auto& t = *r.trajectory;
    std::snprintf(buf, sizeof buf, "  integration: %s, r in [%.6g, %.6g], %zu steps, %zu rejected\n", to_string(t.status),
                  t.samples.front().r, t.samples.back().r, t.steps, t.rejected);
    s += buf;
  }
  if (r.classification) s += std::string("  classification: ") + to_string(r.classification->label) + "\n";
  for (const auto& m : r.messages) s += "  note: " + m + "\n";
  s += "  exit " + std::to_string(r.exit_code()) + " (" + status_of(r) + ")\n";
  return s;
}

}  // namespace yamabe

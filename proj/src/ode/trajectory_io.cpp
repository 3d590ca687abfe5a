#include "yamabe/ode/trajectory_io.hpp"

#include <cstdio>
#include <optional>

#include <json.hpp>

namespace yamabe {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string trajectory_csv(const ProfileTrajectory& t) {
  std::string out = "r,Fp,Fpp,Fppp,R,c,res_R2,res_key3\n";
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    const ODEState& s = t.samples[i];
    const SampleDiagnostics& d = t.diagnostics[i];
    out += num(s.r) + ',' + num(s.phi) + ',' + num(s.dphi) + ',' + num(s.ddphi) + ',' + num(d.scalar) + ',' +
           opt(d.c) + ',' + opt(d.rpp_residual) + ',' + opt(d.key3_residual) + '\n';
  }
  return out;
}

std::string trajectory_json(const ProfileTrajectory& t) {
  nlohmann::ordered_json j;
  j["params"] = {{"n", t.params.n}, {"fiber_scalar", t.params.fiber_scalar}, {"rho", t.params.rho}};
  j["integrator"] = {{"method", "dormand_prince_5_4"},
                     {"rel_tol", t.options.rel_tol},
                     {"abs_tol", t.options.abs_tol},
                     {"status", to_string(t.status)},
                     {"message", t.message},
                     {"steps", t.steps},
                     {"rejected", t.rejected},
                     {"evaluations", t.evaluations},
                     {"from_origin", t.from_origin}};
  if (t.from_origin) j["integrator"]["origin_eps"] = t.origin_eps;
  nlohmann::ordered_json cols;
  for (const char* k : {"r", "F", "Fp", "Fpp", "Fppp", "R", "R_rho", "c", "key3_residual", "rpp_residual",
                        "ric_radial"}) {
    cols[k] = nlohmann::ordered_json::array();
  }
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    const ODEState& s = t.samples[i];
    const SampleDiagnostics& d = t.diagnostics[i];
    cols["r"].push_back(s.r);
    cols["F"].push_back(s.F);
    cols["Fp"].push_back(s.phi);
    cols["Fpp"].push_back(s.dphi);
    cols["Fppp"].push_back(s.ddphi);
    cols["R"].push_back(d.scalar);
    cols["R_rho"].push_back(d.scalar_from_rho);
    cols["c"].push_back(opt_json(d.c));
    cols["key3_residual"].push_back(opt_json(d.key3_residual));
    cols["rpp_residual"].push_back(opt_json(d.rpp_residual));
    cols["ric_radial"].push_back(d.ric_radial);
  }
  j["samples"] = std::move(cols);
  return j.dump(2) + "\n";
}

}  // namespace yamabe

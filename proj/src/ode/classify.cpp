#include "yamabe/ode/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "yamabe/warped/closed_form.hpp"

namespace yamabe {

const char* to_string(ClassLabel l) {
  switch (l) {
    case ClassLabel::Flat: return "flat";
    case ClassLabel::RotationallySymmetricCandidate: return "rotationally_symmetric_candidate";
    case ClassLabel::ShrinkingProduct: return "shrinking_product";
    case ClassLabel::ExpandingProduct: return "expanding_product";
    case ClassLabel::SteadyContradiction: return "steady_contradiction";
    case ClassLabel::Unclassified: return "unclassified";
  }
  return "unclassified";
}

namespace {

std::string check(const char* what, double value, double tol) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s = %.3g %s %.3g", what, value, value <= tol ? "<=" : ">", tol);
  return buf;
}

}  // namespace

Classification classify(const ProfileTrajectory& t, double rho, double tol) {
  Classification out;
  out.tolerances["tol"] = tol;
  if (t.samples.empty()) {
    out.evidence.emplace_back("empty trajectory");
    return out;
  }
  double max_r = 0, max_c = 0, max_ddphi = 0, max_block = 0, max_dphi = 0, max_r_rho = 0;
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    const ODEState& s = t.samples[i];
    const SampleDiagnostics& d = t.diagnostics[i];
    max_r = std::max(max_r, std::abs(d.scalar));
    if (d.c) max_c = std::max(max_c, std::abs(*d.c));
    max_ddphi = std::max(max_ddphi, std::abs(s.ddphi));
    max_dphi = std::max(max_dphi, std::abs(s.dphi));
    max_r_rho = std::max(max_r_rho, std::abs(d.scalar - rho));
    const WarpedCurvature w =
        closed_form_curvature({t.params.n, t.params.fiber_scalar, s.r, s.phi, s.dphi, s.ddphi, {}});
    max_block = std::max(max_block, std::abs(w.fiber_block) / (s.phi * s.phi));
  }

  out.evidence.push_back(check("max|R|", max_r, tol));
  bool flat = max_r <= tol;
  if (t.params.n == 3) {
    out.evidence.push_back(check("max|c|", max_c, tol));
    flat = flat && max_c <= tol;
  } else {
    out.evidence.push_back(check("max|F'''|", max_ddphi, tol));
    out.evidence.push_back(check("max|fiber sectional curvature|", max_block, tol));
    flat = flat && max_ddphi <= tol && max_block <= tol;
  }
  if (flat) {
    out.label = ClassLabel::Flat;
    return out;
  }

  out.evidence.push_back(check("max|F''|", max_dphi, tol));
  out.evidence.push_back(check("max|R - rho|", max_r_rho, tol));
  if (max_dphi <= tol && max_r_rho <= tol) {
    if (rho > tol) {
      out.label = ClassLabel::ShrinkingProduct;
      return out;
    }
    if (rho < -tol) {
      out.label = ClassLabel::ExpandingProduct;
      return out;
    }
  }

  const double start_dphi = std::abs(t.samples.front().dphi);
  if (std::abs(rho) <= tol) {
    out.evidence.push_back(check("|F''(r0)|", start_dphi, tol));
    if (start_dphi <= tol) {
      out.label = ClassLabel::SteadyContradiction;
      return out;
    }
  }
  if (t.from_origin) {
    out.evidence.emplace_back("started from the origin series");
    out.label = ClassLabel::RotationallySymmetricCandidate;
    return out;
  }
  out.label = ClassLabel::Unclassified;
  return out;
}

}  // namespace yamabe

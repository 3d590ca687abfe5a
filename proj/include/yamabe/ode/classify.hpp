#pragma once

#include <map>
#include <string>
#include <vector>

#include "yamabe/ode/integrator.hpp"

namespace yamabe {

enum class ClassLabel {
  Flat,
  RotationallySymmetricCandidate,
  ShrinkingProduct,
  ExpandingProduct,
  SteadyContradiction,
  Unclassified
};

const char* to_string(ClassLabel l);

struct Classification {
  ClassLabel label = ClassLabel::Unclassified;
  /// One line per threshold test, e.g. "max|R| = 3e-17 <= 1e-06".
  std::vector<std::string> evidence;
  std::map<std::string, double> tolerances;
};

/// Trichotomy with declared thresholds, tested in order:
///   flat         max|R| <= tol and (n = 3) max|c| <= tol, (n > 3) max|F'''| <= tol and
///                max|fiber block| <= tol
///   products     max|F''| <= tol and max|R - rho| <= tol, by the sign of rho
///   steady_contradiction  |rho| <= tol, |F''(r0)| <= tol, not flat
///   rotationally_symmetric_candidate  started from the origin series
///   unclassified otherwise
Classification classify(const ProfileTrajectory& t, double rho, double tol = 1e-6);

}  // namespace yamabe

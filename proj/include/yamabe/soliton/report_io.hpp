#pragma once

#include <string>

#include "yamabe/soliton/identities.hpp"

namespace yamabe {

/// JSON object keyed by identity name, plus gate, skipped points and notes.
std::string identity_report_json(const IdentityReport& r);

/// Header `identity,point,<coords...>,residual,jet_residual,fd_residual`, one row per
/// identity per point, followed by `summary` rows with the worst point.
std::string identity_report_csv(const IdentityReport& r, const std::vector<std::string>& coordinates);

}  // namespace yamabe

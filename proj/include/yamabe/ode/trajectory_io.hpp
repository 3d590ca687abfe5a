#pragma once

#include <string>

#include "yamabe/ode/integrator.hpp"

namespace yamabe {

/// Columns r,Fp,Fpp,Fppp,R,c,res_R2,res_key3 (res_R2 is the R'' identity residual). Missing
/// optional values are empty cells.
std::string trajectory_csv(const ProfileTrajectory& t);

/// Parameters, integrator metadata and the sample columns as arrays (null for missing values).
std::string trajectory_json(const ProfileTrajectory& t);

}  // namespace yamabe

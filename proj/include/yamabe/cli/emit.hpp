#pragma once

#include <string>
#include <vector>

#include "yamabe/cli/jobs.hpp"
#include "yamabe/errors.hpp"

namespace yamabe {

/// Output directory or file could not be written.
class OutputError : public Error {
 public:
  using Error::Error;
};

enum class Format { Json, Csv, Markdown, Svg };

/// Throws PreconditionError for an unknown name.
Format format_from(const std::string& name);

struct RenderedFile {
  /// Appended to the stem, e.g. ".json" or ".trajectory.csv".
  std::string suffix;
  std::string content;
};

/// Files for one format. CSV yields one file per table present:
///   .checks.csv      name,value,tolerance,passed
///   .identities.csv  soliton identities (identity,point,<coords>,residual,jet_residual,fd_residual)
///   .cotton.csv      Cotton identities, same columns
///   .battery.csv     seed followed by the same columns
///   .curvature.csv   point,<coords>,R,ricci_max,riemann_max,weyl_max,cotton_max,condition
///   .trajectory.csv  r,Fp,Fpp,Fppp,R,c,res_R2,res_key3
/// SVG yields .R.svg and (n = 3) .c.svg line charts over r when a trajectory exists.
std::vector<RenderedFile> render(const JobResult& r, Format f);

/// Renders every format, then writes `<dir>/<stem><suffix>` files. Returns the paths written.
/// Throws PreconditionError for an empty result and OutputError when a file cannot be written;
/// nothing is written in either case.
std::vector<std::string> write_outputs(const JobResult& r, const std::string& dir, const std::string& stem,
                                       const std::vector<Format>& formats);

/// Human-readable summary for the terminal.
std::string summary_text(const JobResult& r);

}  // namespace yamabe

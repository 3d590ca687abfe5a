#pragma once

#include <ostream>

namespace yamabe {

/// `<tool> <mode> --config <path> [--out <dir>] [--seed <u64>] [--tol-scale <f>]
/// [--jet-order <k>] [--slow] [--format <fmt>...] [--quiet]`.
/// Exit codes: 0 all checks within tolerance, 1 usage or config error, 2 tolerance
/// violations, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace yamabe

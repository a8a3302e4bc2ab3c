#pragma once

#include <string>

#include "plap/continuation.hpp"

namespace plap {

// %.17g: shortest text that round-trips an IEEE double exactly, so
// emitted files are bit-deterministic and reloadable.
std::string fmt17(double x);

std::string profile_to_csv(const RadialProfile& profile);
std::string scan_to_csv(const BracketScan& scan);
std::string sweep_to_csv(const LambdaSweepResult& sweep);
std::string mu_probe_to_csv(const MuProbeResult& probe);
std::string eps_path_to_csv(const EpsPath& path);
std::string eigen_to_csv(const EigenPair& eigen);

// Rebuilds a profile from profile_to_csv output. Grid data comes from the
// file; problem data must be supplied by the caller. The termination state
// is inferred from whether the grid reaches params.radius.
RadialProfile profile_from_csv(const std::string& text,
                               const ProblemParams& params);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace plap

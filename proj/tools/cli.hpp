#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "meltvisc/network.hpp"

namespace meltvisc::cli {

/// Runs one subcommand. args[0] is the program name. Returns the process
/// exit status; failures are reported on `err` with their location.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Grid-search space from "key = v1, v2, ..." lines. List-valued keys
/// (depth, width, activation, bias_init, epochs, batch_size, learning_rate,
/// patience, seed) expand as a cartesian product in that order. Lines
/// starting with '#' are comments. Throws Error{InvalidConfig}.
std::vector<TrainConfig> parse_grid_config(const std::string& text, const TrainConfig& base = {});

}  // namespace meltvisc::cli

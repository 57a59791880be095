#pragma once

#include "illusion/scenario.hpp"

#include <filesystem>
#include <optional>
#include <ostream>

namespace illusion {

// Command implementations behind the `illusion` executable. Each returns the
// process exit status: 0 success, 1 configuration or I/O error, 2 solver
// failure or implausible termination.

int cmd_run(const std::filesystem::path &scenario_path, const std::filesystem::path &output_dir,
            std::optional<ProducerMode> mode_override, std::ostream &out, std::ostream &err);

int cmd_gain(const std::filesystem::path &scenario_path, std::ostream &out, std::ostream &err);

int cmd_default(const std::filesystem::path &output_path, std::ostream &out, std::ostream &err);

} // namespace illusion

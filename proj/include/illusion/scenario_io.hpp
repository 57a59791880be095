#pragma once

#include "illusion/scenario.hpp"

#include <filesystem>
#include <string>

namespace illusion {

// JSON scenario files. See README.md for the schema.

Scenario parse_scenario(const std::string &json_text);
Scenario load_scenario(const std::filesystem::path &path);

std::string dump_scenario(const Scenario &s);
void save_scenario(const Scenario &s, const std::filesystem::path &path);

} // namespace illusion

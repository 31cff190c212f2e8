#pragma once
// Single include point for nlohmann::json so every TU agrees on configuration.
#include <json.hpp>

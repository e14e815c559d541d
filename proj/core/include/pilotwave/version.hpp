#pragma once

#include <nlohmann/json.hpp>

namespace pilotwave {

// Library and toolchain versions the core was built against.
nlohmann::ordered_json version_info();

}  // namespace pilotwave

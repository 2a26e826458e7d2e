#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace fuzcal {

using Json = nlohmann::ordered_json;

/// Pretty JSON with doubles written to 17 significant digits (locale
/// independent). Non-finite doubles become null.
std::string dump_json(const Json &j);

}  // namespace fuzcal

#pragma once

#include <string>

namespace fuzcal {

/// Shortest decimal text that reads back to the same double ("nan", "inf",
/// "-inf" for non-finite values).
std::string format_double(double v);

}  // namespace fuzcal

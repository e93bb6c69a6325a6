#pragma once

#include <string>

namespace staggered {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace staggered

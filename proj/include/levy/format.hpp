#pragma once

#include <string>

namespace levy {

/// Shortest decimal text that parses back to the same double; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_number(double value);

}  // namespace levy

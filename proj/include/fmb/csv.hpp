#pragma once

#include <string>

namespace fmb {

/// Shortest decimal string that parses back to exactly `value`.
/// Non-finite values print as nan / inf / -inf.
std::string format_double(double value);

}  // namespace fmb

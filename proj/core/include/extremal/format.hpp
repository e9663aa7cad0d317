#pragma once

#include <string>

namespace extremal {

/// "%.12g": the one float format used by every writer, so identical values
/// always print identically.
std::string format_double(double v);

/// v rounded to 12 significant digits. JSON writers store this value so the
/// serialized text is at most 12 digits.
double round_sig12(double v);

}  // namespace extremal

#pragma once

#include <string>

namespace cubenorm::io {

// Shortest decimal string that round-trips to the same double (std::to_chars).
// Infinities render as "inf" / "-inf"; these appear in CSV cells verbatim and
// as JSON strings. NaN is not an expected output and renders as "nan".
std::string format_double(double v);

// Value with `digits` significant decimal digits (printf %.*g), used where an
// interface pins a digit count.
std::string format_double_sig(double v, int digits);

}  // namespace cubenorm::io

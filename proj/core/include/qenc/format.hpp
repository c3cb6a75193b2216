#ifndef QENC_FORMAT_HPP_
#define QENC_FORMAT_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace qenc {

// Shortest decimal string that round-trips to the same double. Used for CSV
// cells, category labels and config ids so that output is byte-stable.
std::string format_double(double value);

// Strict full-field parse; rejects trailing junk, empty fields and
// leading/trailing whitespace. NaN/inf spellings are not accepted.
std::optional<double> parse_double(std::string_view text);

}  // namespace qenc

#endif  // QENC_FORMAT_HPP_

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wunits/bignum.hpp"
#include "wunits/modfunc.hpp"

namespace wunits {

// Settings readable from a key=value config file. Absent keys stay unset and
// fall through to environment variables and built-in defaults.
struct FileConfig {
    std::optional<long> prec;
    std::optional<long> guard;
    std::optional<long> jobs;
    std::optional<std::string> format;
};

// Parse `path` as lines of key=value with '#' comments. Known keys: prec,
// guard, jobs, format. Unknown keys and malformed lines throw domain_error;
// an unreadable file throws domain_error.
FileConfig parse_config_file(const std::string& path);

// Complex literal in the forms accepted on the command line: "1.5", "2i",
// "i", "-i", "0.3+1.25i", "1e-2-2.5i". Whitespace is ignored. Throws
// domain_error on anything else.
Complex parse_complex_literal(const std::string& text, long prec);

// Comma-separated longs with inclusive ranges: "4,6-9,12" -> {4,6,7,8,9,12}.
// Entries may be negative; a '-' directly after a digit starts a range.
// Duplicates are removed and the result is sorted.
std::vector<long> parse_long_list(const std::string& text);

// "a,b,N" -> CharacterVector(a, b, N). Throws domain_error on malformed
// input or an integral vector.
CharacterVector parse_char_vector(const std::string& text);

}  // namespace wunits

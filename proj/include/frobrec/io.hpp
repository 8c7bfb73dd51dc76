#pragma once

#include <optional>
#include <string>

#include "frobrec/series.hpp"

namespace frobrec {

enum class Format { Json, Csv, Text };

// Byte-deterministic encodings. Coefficients are sorted by (m, alpha),
// rationals are "p/q" in lowest terms with the sign on the numerator, zero
// coefficients are omitted.
std::string serialize(const Potential& P, Format format, bool unverified = false);

// Accepts the JSON encoding; CSV and text are export-only. Parse errors carry
// the byte position. The result is marked complete.
Potential deserialize(const std::string& bytes);

// cache file for (A, max_m, max_len, code version)
std::string cache_file_name(const Orbifold& A, int max_m, std::optional<int> max_len);

extern const char* const kVersion;

}  // namespace frobrec

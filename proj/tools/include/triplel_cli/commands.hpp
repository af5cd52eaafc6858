#pragma once

#include "triplel/central.hpp"

#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace triplel::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kPrecondition = 3, kPrecision = 4, kConsistency = 5 };

/// Runs one command line (without the program name). The cache directory
/// comes from --cache, else from TRIPLEL_CACHE.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `a`, `a+bi`, `a-bi`, `bi`.
std::complex<double> parse_complex(const std::string& text);

/// Canonical cache text for a list of newforms; exact coefficients stay exact.
std::string encode_forms(const std::vector<NewformData>& forms);
std::vector<NewformData> decode_forms(const std::string& text);

}  // namespace triplel::cli

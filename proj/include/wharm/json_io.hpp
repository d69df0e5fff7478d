#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wharm/angles.hpp"
#include "wharm/bivar_poly.hpp"
#include "wharm/rational.hpp"

namespace wharm::json_io {

using Json = nlohmann::json;

/// Compact, byte-stable serialization: object keys sorted, floating point
/// numbers printed with %.17g, non-finite numbers as null, trailing newline.
std::string canonical_dump(const Json& j);

Json complex_json(std::complex<double> z);
std::complex<double> complex_from_json(const Json& j);

/// "re,im" or "re".
std::complex<double> parse_complex(std::string_view text);
/// Complex values separated by ';'.
std::vector<std::complex<double>> parse_complex_list(std::string_view text);

/// [{"i", "j", "re": "num/den", "im": "num/den"}, ...] in graded lexicographic order.
Json poly_json(const BivarPoly& p);

Json family_json(const std::vector<angles::AngleEta>& pairs);
/// [{"angle": "1/2", "eta": 1}, ...]
std::vector<angles::AngleEta> family_from_json(const Json& j);

}  // namespace wharm::json_io

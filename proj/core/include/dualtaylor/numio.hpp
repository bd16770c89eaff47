#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace dualtaylor {

using ComplexScalar = std::complex<double>;

// Shortest decimal rendering that round-trips to the identical double.
std::string format_double(double v);

// "re im" with both parts round-trip exact.
std::string format_complex(const ComplexScalar& z);

// Strict parsers: the whole token must be consumed. `what` names the field
// for error messages.
double parse_double(std::string_view token, const std::string& what);
long long parse_integer(std::string_view token, const std::string& what);

bool is_finite(double v);
bool is_finite(const ComplexScalar& z);

}  // namespace dualtaylor

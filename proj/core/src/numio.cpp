#include "dualtaylor/numio.hpp"

#include <charconv>
#include <cmath>

#include "dualtaylor/errors.hpp"

namespace dualtaylor {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_complex(const ComplexScalar& z) {
  return format_double(z.real()) + " " + format_double(z.imag());
}

double parse_double(std::string_view token, const std::string& what) {
  double v = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw ParseError(what + ": not a number: '" + std::string(token) + "'");
  }
  return v;
}

long long parse_integer(std::string_view token, const std::string& what) {
  long long v = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw ParseError(what + ": not an integer: '" + std::string(token) + "'");
  }
  return v;
}

bool is_finite(double v) { return std::isfinite(v); }

bool is_finite(const ComplexScalar& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace dualtaylor

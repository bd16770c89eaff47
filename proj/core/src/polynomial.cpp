#include "dualtaylor/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "dualtaylor/errors.hpp"

namespace dualtaylor {

DegreeWindow::DegreeWindow(int low_, int high_) : low(low_), high(high_) {
  if (low < 0 || high < low) {
    throw ValidationError("DegreeWindow: need 0 <= low <= high, got [" +
                          std::to_string(low) + ", " + std::to_string(high) +
                          "]");
  }
}

CenteredPolynomial::CenteredPolynomial(ComplexScalar center,
                                       std::vector<ComplexScalar> coeffs)
    : center_(center), coeffs_(std::move(coeffs)) {
  if (!is_finite(center_)) {
    throw ValidationError("CenteredPolynomial: center is not finite");
  }
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!is_finite(coeffs_[k])) {
      throw ValidationError("CenteredPolynomial: coefficient " +
                            std::to_string(k) + " is not finite");
    }
  }
}

CenteredPolynomial CenteredPolynomial::zero(ComplexScalar center) {
  return CenteredPolynomial(center, {});
}

CenteredPolynomial CenteredPolynomial::constant(ComplexScalar value,
                                                ComplexScalar center) {
  return CenteredPolynomial(center, {value});
}

ComplexScalar CenteredPolynomial::coeff(int k) const {
  if (k < 0 || k >= storage_size()) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

ComplexScalar CenteredPolynomial::evaluate(ComplexScalar z) const {
  if (!is_finite(z)) throw ValidationError("evaluate: point is not finite");
  const ComplexScalar u = z - center_;
  ComplexScalar acc{};
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * u + coeffs_[i];
  }
  return acc;
}

std::vector<ComplexScalar> CenteredPolynomial::evaluate_on(
    const std::vector<ComplexScalar>& pts) const {
  std::vector<ComplexScalar> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = evaluate(pts[i]);
  return out;
}

CenteredPolynomial CenteredPolynomial::recentered(
    ComplexScalar new_center) const {
  if (!is_finite(new_center)) {
    throw ValidationError("recentered: center is not finite");
  }
  if (new_center == center_) return *this;
  const ComplexScalar delta = new_center - center_;
  std::vector<ComplexScalar> a = coeffs_;
  const std::size_t d = a.size();
  if (d >= 2) {
    // Taylor shift by repeated synthetic division: after pass i, a[i] is
    // the coefficient of (z - new_center)^i.
    for (std::size_t i = 0; i + 1 < d; ++i) {
      for (std::size_t k = d - 1; k-- > i;) {
        a[k] += delta * a[k + 1];
      }
    }
  }
  return CenteredPolynomial(new_center, std::move(a));
}

CenteredPolynomial CenteredPolynomial::partial_sum(int n) const {
  if (n < 0) return CenteredPolynomial(center_, {});
  if (n + 1 >= storage_size()) return *this;
  std::vector<ComplexScalar> head(coeffs_.begin(),
                                  coeffs_.begin() + (n + 1));
  return CenteredPolynomial(center_, std::move(head));
}

double CenteredPolynomial::max_coeff_modulus() const {
  double m = 0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double CenteredPolynomial::trim_threshold() const {
  return kTrimRel * max_coeff_modulus();
}

int CenteredPolynomial::degree(double trim) const {
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (std::abs(coeffs_[i]) > trim) return static_cast<int>(i);
  }
  return -1;
}

int CenteredPolynomial::low_degree(double trim) const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (std::abs(coeffs_[i]) > trim) return static_cast<int>(i);
  }
  return -1;
}

CenteredPolynomial add(const CenteredPolynomial& p,
                       const CenteredPolynomial& q) {
  const CenteredPolynomial qr = q.recentered(p.center());
  std::vector<ComplexScalar> out(
      static_cast<std::size_t>(std::max(p.storage_size(), qr.storage_size())));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = p.coeff(static_cast<int>(k)) + qr.coeff(static_cast<int>(k));
  }
  return CenteredPolynomial(p.center(), std::move(out));
}

CenteredPolynomial scale(const CenteredPolynomial& p, ComplexScalar factor) {
  if (!is_finite(factor)) throw ValidationError("scale: factor is not finite");
  std::vector<ComplexScalar> out = p.coeffs();
  for (auto& c : out) c *= factor;
  return CenteredPolynomial(p.center(), std::move(out));
}

void write_coefficients(std::ostream& os, const CenteredPolynomial& p) {
  os << "center " << format_complex(p.center()) << "\n";
  const auto& c = p.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == ComplexScalar{}) continue;
    os << k << " " << format_complex(c[k]) << "\n";
  }
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

CenteredPolynomial read_coefficients(std::istream& is, bool stop_at_end) {
  std::string line;
  if (!std::getline(is, line)) {
    throw ParseError("coefficient block: missing center header");
  }
  auto head = split_ws(line);
  if (head.size() != 3 || head[0] != "center") {
    throw ParseError("coefficient block: expected 'center re im', got '" +
                     line + "'");
  }
  const ComplexScalar center(parse_double(head[1], "center.re"),
                             parse_double(head[2], "center.im"));
  std::vector<ComplexScalar> coeffs;
  while (std::getline(is, line)) {
    if (stop_at_end && line == "end") break;
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 3) {
      throw ParseError("coefficient block: expected 'k re im', got '" + line +
                       "'");
    }
    const long long k = parse_integer(tok[0], "coefficient index");
    if (k < 0 || k > 1000000) {
      throw ParseError("coefficient block: index out of range: " + tok[0]);
    }
    const ComplexScalar v(parse_double(tok[1], "coeff.re"),
                          parse_double(tok[2], "coeff.im"));
    if (static_cast<std::size_t>(k) >= coeffs.size()) {
      coeffs.resize(static_cast<std::size_t>(k) + 1);
    }
    coeffs[static_cast<std::size_t>(k)] = v;
  }
  return CenteredPolynomial(center, std::move(coeffs));
}

}  // namespace dualtaylor

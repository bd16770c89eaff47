#include <doctest.h>

#include <cmath>
#include <iostream>
#include <sstream>

#include "dualtaylor/construct.hpp"
#include "dualtaylor/errors.hpp"
#include "testutil.hpp"

using namespace dualtaylor;

namespace {

ConstructionInputs flagship_inputs() {
  ConstructionInputs in;
  in.g = TargetFunction::zero();
  in.f1 = TargetFunction::constant({1, 0});
  in.f2 = TargetFunction(CenteredPolynomial({0, 0}, {0, 1}));  // f2(z) = z
  in.l_set = sample(SetSpec::disk({0, 0}, 0.5), 40.0);
  in.k1_set = sample(SetSpec::disk({3, 0}, 0.5), 40.0);
  in.k2_set = sample(SetSpec::segment({0, 2}, {0, 3}), 40.0);
  in.zeta0 = {0, 0};
  in.seq = SequenceSpec::formula("n^2");
  in.tolerances = Tolerances(1e-2, 100);
  in.omega = SetSpec::disk({0, 0}, 1.0);
  return in;
}

ConstructionInputs zero_inputs() {
  ConstructionInputs in = flagship_inputs();
  in.f1 = TargetFunction::zero();
  in.f2 = TargetFunction::zero();
  in.omega.reset();
  return in;
}

std::string serialize(const ConstructionCertificate& cert) {
  std::ostringstream os;
  write_certificate(os, cert);
  return os.str();
}

}  // namespace

TEST_CASE("construct: all-zero targets give the zero certificate") {
  const ConstructionCertificate cert = construct(zero_inputs());
  CHECK(cert.f.degree() == -1);
  CHECK(cert.p.degree() == -1);
  CHECK(cert.residual_l == 0.0);
  CHECK(cert.residual_k1 == 0.0);
  CHECK(cert.residual_k2 == 0.0);
  CHECK(cert.n0 == 1);  // first admissible index
  CHECK(cert.mu == 2);
  CHECK(cert.lambda_mu == 4);

  const VerificationReport report = verify(cert, 4.0);
  CHECK(report.pass);
  CHECK(report.residual_l == 0.0);
  CHECK(report.residual_k1 == 0.0);
  CHECK(report.residual_k2 == 0.0);
}

TEST_CASE("construct: f2 continuing p degenerates the window problem") {
  // With all three targets equal to one low-degree polynomial, the Runge
  // step hits it essentially exactly, the window target f2 - p is ~0, and
  // f collapses onto p.
  std::mt19937_64 rng(61040);
  const CenteredPolynomial q =
      testutil::random_decaying_polynomial(rng, 4, 4.0);
  ConstructionInputs in = flagship_inputs();
  in.g = TargetFunction(q);
  in.f1 = TargetFunction(q);
  in.f2 = TargetFunction(q);
  in.omega.reset();
  const ConstructionCertificate cert = construct(in);
  CHECK(cert.window_error <= 1e-8);
  // The window block of f (coefficients above mu) is negligible.
  double window_part = 0;
  for (int k = static_cast<int>(cert.mu) + 1; k < cert.f.storage_size(); ++k) {
    window_part = std::max(window_part, std::abs(cert.f.coeff(k)));
  }
  CHECK(window_part <= 1e-8);
  CHECK(cert.residual_k2 <= 1e-7);
}

TEST_CASE("construct: flagship doubly-targeted run") {
  const ConstructionCertificate cert = construct(flagship_inputs());

  // Contract bounds on the construction grids.
  CHECK(cert.residual_l < 1e-2);
  CHECK(cert.residual_k1 < 1e-2);
  CHECK(cert.residual_k2 < 1e-2);

  // Frozen after the first successful computation.
  CHECK(cert.n0 == 4);
  CHECK(cert.mu == 16);
  CHECK(cert.lambda_mu == 256);
  CHECK(cert.p.degree() == 16);
  std::cout << "[construct] n0=" << cert.n0 << " mu=" << cert.mu
            << " lambda=" << cert.lambda_mu << " deg_p=" << cert.p.degree()
            << " deg_f=" << cert.f.degree()
            << " window_error=" << cert.window_error
            << " residuals=" << cert.residual_l << "," << cert.residual_k1
            << "," << cert.residual_k2 << "\n";

  // Exact truncation identities, re-checked here independent of the
  // internal assertions.
  const CenteredPolynomial s_mu = cert.f.partial_sum(static_cast<int>(cert.mu));
  const double scale = cert.p.max_coeff_modulus();
  for (int k = 0; k <= cert.mu; ++k) {
    CHECK(std::abs(s_mu.coeff(k) - cert.p.coeff(k)) <= 1e-12 * scale);
  }
  CHECK(cert.f.partial_sum(static_cast<int>(cert.lambda_mu)).coeffs() ==
        cert.f.coeffs());

  // Residual triangle: |f - g| <= |P| + |p - g| pointwise on L, so the
  // certified residual cannot exceed window_error + the p-side error.
  double p_vs_g = 0;
  const auto g_values = cert.g.evaluate(
      sample(cert.l_spec, cert.l_density).points);
  const auto l_points = sample(cert.l_spec, cert.l_density).points;
  for (std::size_t i = 0; i < l_points.size(); ++i) {
    p_vs_g = std::max(p_vs_g,
                      std::abs(g_values[i] - cert.p.evaluate(l_points[i])));
  }
  CHECK(cert.residual_l <= cert.window_error + p_vs_g + 1e-9);

  // x4-density verification within the 2x slack policy.
  const VerificationReport report = verify(cert, 4.0);
  CHECK(report.pass);
  CHECK(report.identity_mu_ok);
  CHECK(report.identity_lambda_ok);

  // Deterministic: a second run yields a byte-identical certificate.
  const ConstructionCertificate again = construct(flagship_inputs());
  CHECK(serialize(again) == serialize(cert));
}

TEST_CASE("construct refuses bounded-ratio sequences up front") {
  for (const char* expr : {"2*n", "n+7", "3*n"}) {
    ConstructionInputs in = flagship_inputs();
    in.seq = SequenceSpec::formula(expr);
    CHECK_THROWS_AS(construct(in), RefusalError);
  }
}

TEST_CASE("construct validates geometry preconditions") {
  ConstructionInputs outside = flagship_inputs();
  outside.zeta0 = {2, 0};  // not inside L
  CHECK_THROWS_AS(construct(outside), ValidationError);

  ConstructionInputs touching = flagship_inputs();
  touching.k1_set = sample(SetSpec::disk({0.7, 0}, 0.5), 40.0);
  CHECK_THROWS_AS(construct(touching), ValidationError);

  ConstructionInputs table_target = flagship_inputs();
  table_target.f2 = TargetFunction(
      std::vector<ComplexScalar>(table_target.k2_set.points.size()));
  CHECK_THROWS_AS(construct(table_target), ValidationError);
}

TEST_CASE("certificate file round-trip is bit exact") {
  const ConstructionCertificate cert = construct(flagship_inputs());
  const std::string text = serialize(cert);
  std::istringstream is(text);
  const ConstructionCertificate parsed = read_certificate(is);
  CHECK(parsed.f.coeffs() == cert.f.coeffs());
  CHECK(parsed.p.coeffs() == cert.p.coeffs());
  CHECK(parsed.mu == cert.mu);
  CHECK(parsed.lambda_mu == cert.lambda_mu);
  CHECK(parsed.n0 == cert.n0);
  CHECK(parsed.zeta0 == cert.zeta0);
  CHECK(serialize(parsed) == text);
  CHECK(verify(parsed, 2.0).pass);
}

TEST_CASE("verify flags a tampered certificate via the identity check") {
  ConstructionCertificate cert = construct(flagship_inputs());
  std::vector<ComplexScalar> coeffs = cert.f.coeffs();
  coeffs[0] += 1.0;  // perturb a low coefficient by 1
  cert.f = CenteredPolynomial(cert.f.center(), std::move(coeffs));
  const VerificationReport report = verify(cert, 2.0);
  CHECK_FALSE(report.identity_mu_ok);
  CHECK_FALSE(report.pass);
}

TEST_CASE("certificate parser rejects malformed input") {
  std::istringstream bad_header("format: 2\n");
  CHECK_THROWS_AS(read_certificate(bad_header), ParseError);

  const ConstructionCertificate cert = construct(zero_inputs());
  std::string text = serialize(cert);
  text.replace(text.find("mu "), 3, "nu ");
  std::istringstream is(text);
  CHECK_THROWS_AS(read_certificate(is), ParseError);
}

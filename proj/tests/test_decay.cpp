#include <doctest.h>

#include <sstream>

#include "dualtaylor/decay.hpp"
#include "dualtaylor/errors.hpp"
#include "dualtaylor/parallel.hpp"
#include "testutil.hpp"

using namespace dualtaylor;

namespace {

SampledSet wide_gap_k() { return sample(SetSpec::disk({2, 0}, 0.25), 60.0); }
SampledSet wide_gap_l() { return sample(SetSpec::disk({0, 0}, 0.4), 60.0); }

TargetFunction pole_at_four() {
  return TargetFunction(CenteredPolynomial({0, 0}, {1}),
                        CenteredPolynomial({0, 0}, {-4, 1}));
}

SolverOptions probe_options() {
  SolverOptions opt;
  opt.max_iters = 300;
  opt.tol = 1e-8;
  return opt;
}

}  // namespace

TEST_CASE("schedule validation") {
  Schedule bad;
  bad.entries = {{4, 4}};
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad.entries = {{4, 2}, {4, 3}};
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad.entries = {{4, 0}};
  CHECK_THROWS_AS(validate(bad), ValidationError);
  Schedule good;
  good.entries = {{4, 2}, {9, 3}};
  CHECK_NOTHROW(validate(good));
}

TEST_CASE("probe requires 0 in the interior of L") {
  Schedule sched;
  sched.entries = {{8, 2}};
  const SampledSet l_off = sample(SetSpec::disk({5, 0}, 0.4), 60.0);
  CHECK_THROWS_AS(
      probe(pole_at_four(), wide_gap_k(), l_off, sched, probe_options()),
      ValidationError);
}

TEST_CASE("probe: zero target gives all-zero rows") {
  Schedule sched;
  sched.entries = {{6, 2}, {10, 3}};
  const ProbeResult res = probe(TargetFunction::zero(), wide_gap_k(),
                                wide_gap_l(), sched, probe_options());
  for (const auto& row : res.rows) {
    CHECK(row.d_value == 0.0);
    CHECK(row.d_root == 0.0);
  }
  CHECK(res.theta_hat == 0.0);
}

TEST_CASE("probe: geometric decay on a wide-gap instance") {
  Schedule sched;
  for (int n = 2; n <= 8; ++n) sched.entries.push_back({n * n, n});
  const ProbeResult res = probe(pole_at_four(), wide_gap_k(), wide_gap_l(),
                                sched, probe_options());
  REQUIRE(res.rows.size() == 7);
  // d decays by orders of magnitude along the diverging-ratio schedule and
  // the root estimate plateaus strictly below 1.
  for (std::size_t i = 1; i < res.rows.size(); ++i) {
    CHECK(res.rows[i].d_value < res.rows[i - 1].d_value);
  }
  CHECK(res.rows.front().d_value > 1e4 * res.rows.back().d_value);
  CHECK(res.theta_hat < 1.0);
  CHECK(res.theta_hat > 0.0);
  // theta_hat is the max root over the tail half.
  double tail = 0;
  for (std::size_t i = res.rows.size() / 2; i < res.rows.size(); ++i) {
    tail = std::max(tail, res.rows[i].d_root);
  }
  CHECK(res.theta_hat == tail);
}

TEST_CASE("rowwise dominance: larger sigma never helps at equal tau") {
  const SampledSet k_set = wide_gap_k();
  const SampledSet l_set = wide_gap_l();
  const TargetFunction f = pole_at_four();
  const std::vector<ComplexScalar> f_values = f.evaluate(k_set.points);
  SolverOptions opt = probe_options();
  opt.tol = 1e-10;
  double prev = 0;
  for (int sigma : {2, 5, 9, 13}) {
    const double d = d_estimate(f_values, k_set, l_set, 18, sigma, opt);
    CHECK(d >= prev - 1e-8);
    prev = d;
  }
}

TEST_CASE("probe rows are deterministic across worker counts") {
  Schedule sched;
  for (int n = 2; n <= 5; ++n) sched.entries.push_back({n * n, n});
  set_max_threads(1);
  const ProbeResult serial = probe(pole_at_four(), wide_gap_k(), wide_gap_l(),
                                   sched, probe_options());
  set_max_threads(4);
  const ProbeResult parallel = probe(pole_at_four(), wide_gap_k(),
                                     wide_gap_l(), sched, probe_options());
  set_max_threads(1);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].d_value == parallel.rows[i].d_value);
    CHECK(serial.rows[i].d_root == parallel.rows[i].d_root);
  }
}

TEST_CASE("csv output format") {
  ProbeResult res;
  res.rows = {{9, 3, 0.25, 0.85714285, true}, {16, 4, 0.0625, 0.84089641, false}};
  res.theta_hat = 0.84089641;
  std::ostringstream os;
  write_probe_csv(os, res);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "tau,sigma,d_value,d_root,converged");
  std::getline(is, line);
  CHECK(line == "9,3,0.25,0.85714285,1");
  std::getline(is, line);
  CHECK(line == "16,4,0.0625,0.84089641,0");
}

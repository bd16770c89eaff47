#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* kCliPath = DUALTAYLOR_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "out.log";
  const std::string cmd =
      std::string(kCliPath) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  result.output = ss.str();
  return result;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path("cli_scratch") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

const std::string kConstructConfig = R"(format: 1
center: {re: 0, im: 0}
sets:
  L: {set: {type: disk, center: {re: 0, im: 0}, radius: 0.5}, density: 40}
  K1: {set: {type: disk, center: {re: 3, im: 0}, radius: 0.5}, density: 40}
  K2: {set: {type: segment, a: {re: 0, im: 2}, b: {re: 0, im: 3}}, density: 40}
targets:
  g: {type: polynomial, coeffs: []}
  f1: {type: polynomial, coeffs: [{re: 1, im: 0}]}
  f2: {type: polynomial, coeffs: [{re: 0, im: 0}, {re: 1, im: 0}]}
sequence: {type: formula, expr: n^2}
tolerances: {epsilon: 1e-2, s: 100}
omega: {type: disk, center: {re: 0, im: 0}, radius: 1}
)";

}  // namespace

TEST_CASE("construct and verify round-trip through the CLI") {
  const fs::path dir = fresh_dir("roundtrip");
  write_file(dir / "construct.yaml", kConstructConfig);
  const RunResult built = run_cli(
      "construct --config " + (dir / "construct.yaml").string() + " --out " +
          dir.string(),
      dir);
  CHECK(built.exit_code == 0);
  REQUIRE(fs::exists(dir / "certificate.txt"));

  const RunResult verified = run_cli(
      "verify " + (dir / "certificate.txt").string() + " --density-mult 4",
      dir);
  CHECK(verified.exit_code == 0);
  CHECK(verified.output.find("PASS") != std::string::npos);
}

TEST_CASE("bounded-ratio sequence refuses with exit code 2") {
  const fs::path dir = fresh_dir("refusal");
  std::string config = kConstructConfig;
  const auto pos = config.find("expr: n^2");
  REQUIRE(pos != std::string::npos);
  config.replace(pos, 9, "expr: 2*n");
  write_file(dir / "construct.yaml", config);
  const RunResult result = run_cli(
      "construct --config " + (dir / "construct.yaml").string() + " --out " +
          dir.string(),
      dir);
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("bounded") != std::string::npos);
}

TEST_CASE("a tampered certificate fails verification with exit code 1") {
  const fs::path dir = fresh_dir("tamper");
  write_file(dir / "construct.yaml", kConstructConfig);
  REQUIRE(run_cli("construct --config " + (dir / "construct.yaml").string() +
                      " --out " + dir.string(),
                  dir)
              .exit_code == 0);

  // Perturb the constant coefficient of f by 1.
  std::ifstream in(dir / "certificate.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  const auto poly_f = text.find("poly f\n");
  REQUIRE(poly_f != std::string::npos);
  const auto line_start = text.find("\n0 ", poly_f);
  REQUIRE(line_start != std::string::npos);
  const auto line_end = text.find('\n', line_start + 1);
  text.replace(line_start, line_end - line_start, "\n0 1000 0");
  write_file(dir / "tampered.txt", text);

  const RunResult result = run_cli(
      "verify " + (dir / "tampered.txt").string() + " --density-mult 2", dir);
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("FAIL") != std::string::npos);
}

TEST_CASE("unknown config keys are rejected with their field path") {
  const fs::path dir = fresh_dir("strict");
  std::string config = kConstructConfig;
  config += "extra-knob: 1\n";
  write_file(dir / "construct.yaml", config);
  const RunResult result = run_cli(
      "construct --config " + (dir / "construct.yaml").string() + " --out " +
          dir.string(),
      dir);
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("extra-knob") != std::string::npos);
  CHECK(result.output.find("unknown key") != std::string::npos);
}

TEST_CASE("tolerances have no defaults") {
  const fs::path dir = fresh_dir("tolerances");
  std::string config = kConstructConfig;
  const auto pos = config.find("tolerances: {epsilon: 1e-2, s: 100}");
  REQUIRE(pos != std::string::npos);
  config.replace(pos, std::string("tolerances: {epsilon: 1e-2, s: 100}").size(),
                 "tolerances: {s: 100}");
  write_file(dir / "construct.yaml", config);
  const RunResult result = run_cli(
      "construct --config " + (dir / "construct.yaml").string() + " --out " +
          dir.string(),
      dir);
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("epsilon") != std::string::npos);
}

TEST_CASE("solve subcommand writes coefficients and a summary") {
  const fs::path dir = fresh_dir("solve");
  write_file(dir / "solve.yaml", R"(format: 1
center: {re: 0, im: 0}
window: {low: 0, high: 4}
grids:
  - set: {type: disk, center: {re: 0, im: 0}, radius: 1}
    density: 8
    target: {type: rational,
             numerator: {coeffs: [{re: 1, im: 0}]},
             denominator: {coeffs: [{re: -3, im: 0}, {re: 1, im: 0}]}}
solver: {tol: 1e-10, max-iters: 300}
)");
  const RunResult result = run_cli(
      "solve --config " + (dir / "solve.yaml").string() + " --out " +
          dir.string(),
      dir);
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir / "solution.coeffs"));
  CHECK(result.output.find("objective ") != std::string::npos);
  CHECK(result.output.find("converged 1") != std::string::npos);
}

TEST_CASE("probe subcommand writes the CSV") {
  const fs::path dir = fresh_dir("probe");
  write_file(dir / "probe.yaml", R"(format: 1
target: {type: rational,
         numerator: {coeffs: [{re: 1, im: 0}]},
         denominator: {coeffs: [{re: -4, im: 0}, {re: 1, im: 0}]}}
K: {set: {type: disk, center: {re: 1.5, im: 0}, radius: 0.25}, density: 48}
L: {set: {type: disk, center: {re: 0, im: 0}, radius: 1}, density: 48}
schedule:
  rows:
    - {tau: 8, sigma: 2}
    - {tau: 12, sigma: 3}
solver: {max-iters: 120}
)");
  const RunResult result = run_cli(
      "probe --config " + (dir / "probe.yaml").string() + " --out " +
          dir.string(),
      dir);
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("theta-hat") != std::string::npos);
  std::ifstream csv(dir / "probe.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "tau,sigma,d_value,d_root,converged");
  int rows = 0;
  std::string line;
  while (std::getline(csv, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 2);
}

TEST_CASE("missing config file is a plain failure") {
  const fs::path dir = fresh_dir("missing");
  const RunResult result =
      run_cli("solve --config does-not-exist.yaml --out " + dir.string(), dir);
  CHECK(result.exit_code == 1);
}

#pragma once

#include <memory>
#include <string>
#include <vector>

namespace dualtaylor {

// A strictly increasing sequence of positive integers, given either as an
// explicit table or as a small integer-expression formula in n. The
// grammar covers integer literals, n, + - * ^ with a literal exponent,
// parentheses and ilog2(expr) = floor(log2(expr)). Strict increase and
// positivity are verified on the ranges actually scanned.
class SequenceSpec {
 public:
  // The default-constructed spec is empty and throws on use.
  SequenceSpec() = default;

  static SequenceSpec formula(const std::string& expr);
  static SequenceSpec table(std::vector<long long> values);

  // lambda_n for n >= 1. Table queries past the last entry and formula
  // overflow both throw ValidationError.
  long long value(long long n) const;

  bool is_table() const { return !table_.empty(); }
  long long table_size() const { return static_cast<long long>(table_.size()); }
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::vector<long long> table_;
  std::string text_;
};

enum class RatioVerdict { kDiverging, kBoundedSoFar };

struct RatioReport {
  double sup_ratio = 0;
  long long attained_at = 0;
  RatioVerdict verdict = RatioVerdict::kBoundedSoFar;
};

// Max of lambda_n / n over n <= horizon, plus a heuristic divergence
// verdict: diverging iff the ratio max over [horizon/2, horizon] exceeds
// twice the max over [1, horizon/4]. A limsup is not decidable from
// finitely many terms, so the verdict is explicitly "so far" and callers
// surface that caveat. Validates positivity and strict increase along the
// scan, naming the first offending index.
RatioReport check_ratio(const SequenceSpec& seq, long long horizon);

// Greedy subsequence selection: index n is taken when lambda_n / n has at
// least doubled against the previous selection (base ratio 1), so the
// selected ratios grow at least geometrically. Refuses (RefusalError) when
// the verdict over the scan horizon is bounded-so-far; throws
// ApproximationFailure advising a larger horizon when fewer than `count`
// indices fit inside it. For tables the scan is clamped to the table.
std::vector<long long> choose_subsequence(const SequenceSpec& seq, int count,
                                          long long horizon);

}  // namespace dualtaylor

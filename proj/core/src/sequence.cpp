#include "dualtaylor/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <memory>

#include "dualtaylor/errors.hpp"
#include "dualtaylor/numio.hpp"

namespace dualtaylor {

namespace {

constexpr long long kValueCap = 1LL << 53;  // keep ratios exact in double

long long checked_add(long long a, long long b) {
  const long long r = a + b;
  if ((a > 0 && b > 0 && r < 0) || (a < 0 && b < 0 && r > 0) ||
      r > kValueCap || r < -kValueCap) {
    throw ValidationError("sequence formula: value overflow");
  }
  return r;
}

long long checked_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (std::abs(a) > kValueCap / std::abs(b)) {
    throw ValidationError("sequence formula: value overflow");
  }
  return a * b;
}

long long ilog2_floor(long long x) {
  if (x < 1) {
    throw ValidationError("sequence formula: ilog2 of a value < 1");
  }
  long long r = 0;
  while (x > 1) {
    x >>= 1;
    ++r;
  }
  return r;
}

}  // namespace

struct SequenceSpec::Node {
  enum class Kind { kLiteral, kVariable, kAdd, kSub, kMul, kPow, kIlog2 };
  Kind kind = Kind::kLiteral;
  long long literal = 0;
  int exponent = 0;
  std::shared_ptr<const Node> lhs, rhs;

  long long eval(long long n) const {
    switch (kind) {
      case Kind::kLiteral:
        return literal;
      case Kind::kVariable:
        return n;
      case Kind::kAdd:
        return checked_add(lhs->eval(n), rhs->eval(n));
      case Kind::kSub:
        return checked_add(lhs->eval(n), -rhs->eval(n));
      case Kind::kMul:
        return checked_mul(lhs->eval(n), rhs->eval(n));
      case Kind::kPow: {
        long long acc = 1;
        const long long base = lhs->eval(n);
        for (int i = 0; i < exponent; ++i) acc = checked_mul(acc, base);
        return acc;
      }
      case Kind::kIlog2:
        return ilog2_floor(lhs->eval(n));
    }
    throw InternalError("sequence formula: bad node");
  }
};

namespace {

using Node = SequenceSpec::Node;
using NodePtr = std::shared_ptr<const Node>;

class FormulaParser {
 public:
  explicit FormulaParser(const std::string& text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("sequence formula: trailing input at '" +
                       text_.substr(pos_) + "'");
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr make(Node&& n) { return std::make_shared<const Node>(std::move(n)); }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (consume('+')) {
        Node n;
        n.kind = Node::Kind::kAdd;
        n.lhs = lhs;
        n.rhs = term();
        lhs = make(std::move(n));
      } else if (consume('-')) {
        Node n;
        n.kind = Node::Kind::kSub;
        n.lhs = lhs;
        n.rhs = term();
        lhs = make(std::move(n));
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = power();
    while (consume('*')) {
      Node n;
      n.kind = Node::Kind::kMul;
      n.lhs = lhs;
      n.rhs = power();
      lhs = make(std::move(n));
    }
    return lhs;
  }

  NodePtr power() {
    NodePtr base = atom();
    if (consume('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (start == pos_) {
        throw ParseError("sequence formula: '^' needs a literal exponent");
      }
      const long long e =
          parse_integer(text_.substr(start, pos_ - start), "exponent");
      if (e < 0 || e > 62) {
        throw ParseError("sequence formula: exponent out of range");
      }
      Node n;
      n.kind = Node::Kind::kPow;
      n.lhs = base;
      n.exponent = static_cast<int>(e);
      return make(std::move(n));
    }
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) {
      throw ParseError("sequence formula: unexpected end of input");
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expression();
      if (!consume(')')) throw ParseError("sequence formula: missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      Node n;
      n.kind = Node::Kind::kLiteral;
      n.literal = parse_integer(text_.substr(start, pos_ - start), "literal");
      return make(std::move(n));
    }
    if (text_.compare(pos_, 6, "ilog2(") == 0) {
      pos_ += 6;
      NodePtr e = expression();
      if (!consume(')')) throw ParseError("sequence formula: missing ')'");
      Node n;
      n.kind = Node::Kind::kIlog2;
      n.lhs = e;
      return make(std::move(n));
    }
    if (c == 'n') {
      ++pos_;
      Node n;
      n.kind = Node::Kind::kVariable;
      return make(std::move(n));
    }
    throw ParseError(std::string("sequence formula: unexpected '") + c + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

SequenceSpec SequenceSpec::formula(const std::string& expr) {
  SequenceSpec s;
  s.root_ = FormulaParser(expr).parse();
  s.text_ = expr;
  return s;
}

SequenceSpec SequenceSpec::table(std::vector<long long> values) {
  if (values.empty()) {
    throw ValidationError("sequence table: must not be empty");
  }
  SequenceSpec s;
  s.table_ = std::move(values);
  s.text_ = "table[" + std::to_string(s.table_.size()) + "]";
  return s;
}

long long SequenceSpec::value(long long n) const {
  if (n < 1) throw ValidationError("sequence: index must be >= 1");
  if (!root_ && table_.empty()) {
    throw ValidationError("sequence: spec is empty");
  }
  if (!table_.empty()) {
    if (n > static_cast<long long>(table_.size())) {
      throw ValidationError("sequence table: index " + std::to_string(n) +
                            " past the last entry (" +
                            std::to_string(table_.size()) + ")");
    }
    return table_[static_cast<std::size_t>(n - 1)];
  }
  return root_->eval(n);
}

namespace {

struct RatioScan {
  std::vector<double> ratios;  // ratios[i] = lambda_{i+1} / (i+1)
  double sup = 0;
  long long attained_at = 0;
};

RatioScan scan_ratios(const SequenceSpec& seq, long long horizon) {
  RatioScan scan;
  scan.ratios.reserve(static_cast<std::size_t>(horizon));
  long long prev = 0;
  for (long long n = 1; n <= horizon; ++n) {
    const long long v = seq.value(n);
    if (v < 1) {
      throw ValidationError("sequence: lambda_" + std::to_string(n) +
                            " = " + std::to_string(v) + " is not positive");
    }
    if (v <= prev) {
      throw ValidationError("sequence: not strictly increasing at index " +
                            std::to_string(n) + " (" + std::to_string(prev) +
                            " -> " + std::to_string(v) + ")");
    }
    prev = v;
    const double r = static_cast<double>(v) / static_cast<double>(n);
    scan.ratios.push_back(r);
    if (r > scan.sup) {
      scan.sup = r;
      scan.attained_at = n;
    }
  }
  return scan;
}

RatioVerdict dyadic_verdict(const std::vector<double>& ratios) {
  const long long h = static_cast<long long>(ratios.size());
  const long long head_end = std::max<long long>(1, h / 4);   // [1, h/4]
  const long long tail_begin = std::max<long long>(1, h / 2); // [h/2, h]
  double head = 0, tail = 0;
  for (long long n = 1; n <= head_end; ++n) {
    head = std::max(head, ratios[static_cast<std::size_t>(n - 1)]);
  }
  for (long long n = tail_begin; n <= h; ++n) {
    tail = std::max(tail, ratios[static_cast<std::size_t>(n - 1)]);
  }
  return tail > 2 * head ? RatioVerdict::kDiverging
                         : RatioVerdict::kBoundedSoFar;
}

}  // namespace

RatioReport check_ratio(const SequenceSpec& seq, long long horizon) {
  if (horizon < 10) {
    throw ValidationError("check_ratio.horizon: must be >= 10");
  }
  const RatioScan scan = scan_ratios(seq, horizon);
  RatioReport report;
  report.sup_ratio = scan.sup;
  report.attained_at = scan.attained_at;
  report.verdict = dyadic_verdict(scan.ratios);
  return report;
}

std::vector<long long> choose_subsequence(const SequenceSpec& seq, int count,
                                          long long horizon) {
  if (count < 1) {
    throw ValidationError("choose_subsequence.count: must be >= 1");
  }
  if (seq.is_table()) horizon = std::min(horizon, seq.table_size());
  if (horizon < 2) {
    throw ValidationError("choose_subsequence.horizon: must be >= 2");
  }
  const RatioScan scan = scan_ratios(seq, horizon);
  if (dyadic_verdict(scan.ratios) != RatioVerdict::kDiverging) {
    throw RefusalError(
        "choose_subsequence: lambda_n / n looks bounded over the scanned "
        "range (sup " +
        format_double(scan.sup) +
        "); a bounded ratio admits no doubly universal construction");
  }
  std::vector<long long> selected;
  double base = 1.0;
  for (long long n = 1; n <= horizon; ++n) {
    const double r = scan.ratios[static_cast<std::size_t>(n - 1)];
    if (r >= 2 * base) {
      selected.push_back(n);
      base = r;
      if (static_cast<int>(selected.size()) == count) return selected;
    }
  }
  throw ApproximationFailure(
      "choose_subsequence: only " + std::to_string(selected.size()) + " of " +
      std::to_string(count) + " ratio-doubling indices fit inside horizon " +
      std::to_string(horizon) + "; raise the horizon");
}

}  // namespace dualtaylor

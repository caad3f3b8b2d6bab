#include <cctype>
#include <string>

#include "frob/error.hpp"
#include "frob/poly.hpp"

namespace frob {

std::string to_string(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  const FieldCtx& fc = *f.field();
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    std::string factors;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      if (!t.mono[i]) continue;
      if (!factors.empty()) factors += "*";
      factors += "x" + std::to_string(i);
      if (t.mono[i] > 1) factors += "^" + std::to_string(t.mono[i]);
    }
    if (factors.empty()) {
      out += fc.to_string(t.coeff);
    } else if (t.coeff == fc.one()) {
      out += factors;
    } else {
      out += fc.to_string(t.coeff) + "*" + factors;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, const Field& f) : s_(s), f_(f) {}

  std::vector<std::pair<std::vector<std::pair<std::size_t, std::uint32_t>>, Elem>> terms;
  std::size_t max_var = 0;
  bool any_var = false;

  void run() {
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    }
    term(negate);
    for (skip(); pos_ < s_.size(); skip()) {
      const char c = s_[pos_++];
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      term(c == '-');
    }
  }

 private:
  const std::string& s_;
  const Field& f_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw MalformedInput("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  std::uint64_t number() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0');
      if (v > (1ULL << 40)) fail("number too large");
    }
    return v;
  }
  Elem coefficient() {
    const FieldCtx& fc = *f_;
    if (peek() == '[') {
      ++pos_;
      std::vector<std::uint32_t> c;
      if (peek() != ']') {
        for (;;) {
          const auto v = number();
          if (v >= fc.p()) fail("field coefficient out of range");
          c.push_back(static_cast<std::uint32_t>(v));
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          break;
        }
      }
      if (peek() != ']') fail("expected ']'");
      ++pos_;
      if (c.size() > fc.k()) fail("too many coefficients for field element");
      return fc.from_coeffs(c);
    }
    return fc.from_int(static_cast<std::int64_t>(number() % fc.p()));
  }
  void term(bool negate) {
    const FieldCtx& fc = *f_;
    Elem c = fc.one();
    std::vector<std::pair<std::size_t, std::uint32_t>> vars;
    for (;;) {
      const char ch = peek();
      if (ch == 'x') {
        ++pos_;
        const auto idx = number();
        if (idx >= kMaxVars) fail("variable index beyond x15");
        std::uint64_t ex = 1;
        if (peek() == '^') {
          ++pos_;
          ex = number();
          if (ex > 65535) fail("exponent too large");
        }
        vars.emplace_back(static_cast<std::size_t>(idx), static_cast<std::uint32_t>(ex));
        max_var = std::max<std::size_t>(max_var, idx);
        any_var = true;
      } else if (ch == '[' || std::isdigit(static_cast<unsigned char>(ch))) {
        c = fc.mul(c, coefficient());
      } else {
        fail("expected a coefficient or variable");
      }
      if (peek() != '*') break;
      ++pos_;
    }
    if (negate) c = fc.neg(c);
    terms.emplace_back(std::move(vars), c);
  }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const Field& f, std::size_t nvars) {
  Parser ps(text, f);
  ps.run();
  const std::size_t needed = ps.any_var ? ps.max_var + 1 : 1;
  if (nvars == 0) nvars = needed;
  if (needed > nvars) throw MalformedInput("polynomial uses more variables than declared");
  std::vector<Term> ts;
  for (const auto& [vars, c] : ps.terms) {
    Monomial m{};
    for (const auto& [i, ex] : vars) {
      if (std::uint32_t{m[i]} + ex > 65535) throw MalformedInput("exponent too large");
      m[i] = static_cast<std::uint16_t>(m[i] + ex);
    }
    ts.push_back(Term{m, c});
  }
  return MultiPoly::from_terms(f, nvars, std::move(ts));
}

}  // namespace frob

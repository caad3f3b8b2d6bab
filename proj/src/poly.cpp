#include "frob/poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <unordered_map>

#include "frob/error.hpp"
#include "frob/univariate.hpp"

namespace frob {

namespace {

using TermMap = std::unordered_map<Monomial, Elem, MonomialHash>;

void check_compatible(const MultiPoly& a, const MultiPoly& b) {
  if (!same_field(a.field(), b.field())) throw DomainError("polynomials over different fields");
  if (a.nvars() != b.nvars()) throw DomainError("polynomials in different numbers of variables");
}

std::vector<Term> collect(const FieldCtx& f, const TermMap& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const auto& [m, c] : acc) {
    if (c.v != 0) out.push_back(Term{m, c});
  }
  (void)f;
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return grlex_before(x.mono, y.mono); });
  return out;
}

std::uint64_t saturating_pow(std::uint64_t p, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint32_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    r *= p;
  }
  return r;
}

// Product keeping only terms with every exponent below bound.
MultiPoly mul_truncated(const MultiPoly& a, const MultiPoly& b, std::uint64_t bound, WorkBudget* budget) {
  check_compatible(a, b);
  if (budget) budget->charge(static_cast<std::uint64_t>(a.terms().size()) * b.terms().size());
  const FieldCtx& f = *a.field();
  const std::size_t n = a.nvars();
  TermMap acc;
  acc.reserve(a.terms().size() * b.terms().size());
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      Monomial m{};
      bool keep = true;
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t x = std::uint32_t{s.mono[i]} + t.mono[i];
        if (x >= bound) {
          keep = false;
          break;
        }
        if (x > std::numeric_limits<std::uint16_t>::max()) throw CapacityError("exponent exceeds 65535");
        m[i] = static_cast<std::uint16_t>(x);
      }
      if (!keep) continue;
      auto [it, fresh] = acc.try_emplace(m, f.mul(s.coeff, t.coeff));
      if (!fresh) it->second = f.add(it->second, f.mul(s.coeff, t.coeff));
    }
  }
  return MultiPoly::from_terms(a.field(), n, collect(f, acc));
}

// a^p via the Frobenius endomorphism, dropping terms with an exponent >= bound.
MultiPoly frobenius_power_truncated(const MultiPoly& a, std::uint64_t bound) {
  const FieldCtx& f = *a.field();
  const std::uint32_t p = f.p();
  std::vector<Term> out;
  for (const auto& t : a.terms()) {
    Monomial m{};
    bool keep = true;
    for (std::size_t i = 0; i < a.nvars(); ++i) {
      const std::uint64_t x = std::uint64_t{t.mono[i]} * p;
      if (x >= bound) {
        keep = false;
        break;
      }
      if (x > std::numeric_limits<std::uint16_t>::max()) throw CapacityError("exponent exceeds 65535");
      m[i] = static_cast<std::uint16_t>(x);
    }
    if (keep) out.push_back(Term{m, f.frobenius(t.coeff, 1)});
  }
  return MultiPoly::from_terms(a.field(), a.nvars(), std::move(out));
}

}  // namespace

std::uint32_t total_degree(const Monomial& m) {
  std::uint32_t d = 0;
  for (auto x : m) d += x;
  return d;
}

bool grlex_before(const Monomial& a, const Monomial& b) {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto x : m) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t WorkBudget::default_limit() {
  if (const char* env = std::getenv("FROBFPT_BUDGET")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 500'000'000ULL;
}

void WorkBudget::charge(std::uint64_t units) {
  used_ += units;
  if (used_ > limit_) throw CapacityError("work budget exceeded");
}

MultiPoly::MultiPoly(Field f, std::size_t nvars) : field_(std::move(f)), nvars_(nvars) {
  if (nvars > kMaxVars) throw CapacityError("at most 16 variables are supported");
}

MultiPoly MultiPoly::constant(Field f, std::size_t nvars, Elem c) {
  return monomial(std::move(f), nvars, Monomial{}, c);
}

MultiPoly MultiPoly::variable(Field f, std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw DomainError("variable index out of range");
  Monomial m{};
  m[i] = 1;
  const Elem one = f->one();
  return monomial(std::move(f), nvars, m, one);
}

MultiPoly MultiPoly::monomial(Field f, std::size_t nvars, const Monomial& m, Elem c) {
  MultiPoly r(std::move(f), nvars);
  for (std::size_t i = nvars; i < kMaxVars; ++i) {
    if (m[i]) throw DomainError("monomial uses a variable beyond nvars");
  }
  if (c.v != 0) r.terms_.push_back(Term{m, c});
  return r;
}

MultiPoly MultiPoly::from_terms(Field f, std::size_t nvars, std::vector<Term> terms) {
  MultiPoly r(std::move(f), nvars);
  const FieldCtx& fc = *r.field_;
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return grlex_before(x.mono, y.mono); });
  for (auto& t : terms) {
    for (std::size_t i = nvars; i < kMaxVars; ++i) {
      if (t.mono[i]) throw DomainError("monomial uses a variable beyond nvars");
    }
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coeff = fc.add(r.terms_.back().coeff, t.coeff);
    } else {
      r.terms_.push_back(t);
    }
  }
  std::erase_if(r.terms_, [](const Term& t) { return t.coeff.v == 0; });
  return r;
}

std::uint32_t MultiPoly::degree() const { return terms_.empty() ? 0 : total_degree(terms_.front().mono); }

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const auto d = degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return total_degree(t.mono) == d; });
}

Elem MultiPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return grlex_before(t.mono, key); });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return Elem{0};
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  check_compatible(a, b);
  std::vector<Term> all = a.terms();
  all.insert(all.end(), b.terms().begin(), b.terms().end());
  return MultiPoly::from_terms(a.field(), a.nvars(), std::move(all));
}

MultiPoly operator-(const MultiPoly& a) { return scalar_mul(a.field()->neg(a.field()->one()), a); }

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  return mul_truncated(a, b, std::numeric_limits<std::uint64_t>::max(), nullptr);
}

MultiPoly scalar_mul(Elem c, const MultiPoly& a) {
  std::vector<Term> out = a.terms();
  for (auto& t : out) t.coeff = a.field()->mul(c, t.coeff);
  return MultiPoly::from_terms(a.field(), a.nvars(), std::move(out));
}

MultiPoly pow(const MultiPoly& a, std::uint64_t n) {
  MultiPoly result = MultiPoly::constant(a.field(), a.nvars(), a.field()->one());
  MultiPoly base = a;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

MultiPoly reduce_mod_frobenius_power(const MultiPoly& f, std::uint64_t e) {
  const std::uint64_t bound = saturating_pow(f.field()->p(), e);
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    bool keep = true;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      if (t.mono[i] >= bound) keep = false;
    }
    if (keep) out.push_back(t);
  }
  return MultiPoly::from_terms(f.field(), f.nvars(), std::move(out));
}

bool in_frobenius_power(const MultiPoly& f, std::uint64_t e) { return reduce_mod_frobenius_power(f, e).is_zero(); }

MultiPoly truncated_power(const MultiPoly& f, std::uint64_t n, std::uint64_t e, WorkBudget* budget) {
  const std::uint64_t bound = saturating_pow(f.field()->p(), e);
  const std::uint32_t p = f.field()->p();
  MultiPoly result = MultiPoly::constant(f.field(), f.nvars(), f.field()->one());
  if (n == 0) return result;
  const MultiPoly base = reduce_mod_frobenius_power(f, e);
  std::vector<MultiPoly> small{result};
  std::vector<std::uint32_t> digits;
  for (std::uint64_t m = n; m; m /= p) digits.push_back(static_cast<std::uint32_t>(m % p));
  const std::uint32_t top = *std::max_element(digits.begin(), digits.end());
  for (std::uint32_t d = 1; d <= top; ++d) small.push_back(mul_truncated(small.back(), base, bound, budget));
  // Horner in base p: f^(pm + d) = (f^m)^p * f^d.
  for (std::size_t i = digits.size(); i-- > 0;) {
    result = frobenius_power_truncated(result, bound);
    if (result.is_zero()) return result;
    if (digits[i]) result = mul_truncated(result, small[digits[i]], bound, budget);
    if (result.is_zero()) return result;
  }
  return result;
}

MultiPoly substitute(const MultiPoly& f, const Matrix& m) {
  if (m.rows() != f.nvars()) throw DomainError("substitution matrix has the wrong number of rows");
  if (!same_field(m.field(), f.field())) throw DomainError("substitution matrix over a different field");
  const std::size_t k = m.cols();
  const Field& fld = f.field();
  std::vector<MultiPoly> forms;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    std::vector<Term> ts;
    for (std::size_t j = 0; j < k; ++j) {
      Monomial mono{};
      mono[j] = 1;
      ts.push_back(Term{mono, m(i, j)});
    }
    forms.push_back(MultiPoly::from_terms(fld, k, std::move(ts)));
  }
  std::vector<std::vector<MultiPoly>> powers(f.nvars());
  auto power_of = [&](std::size_t i, std::size_t e) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly::constant(fld, k, fld->one()));
    while (cache.size() <= e) cache.push_back(cache.back() * forms[i]);
    return cache[e];
  };
  std::vector<Term> acc;
  for (const auto& t : f.terms()) {
    MultiPoly prod = MultiPoly::constant(fld, k, t.coeff);
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      if (t.mono[i]) prod = prod * power_of(i, t.mono[i]);
    }
    acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
  }
  return MultiPoly::from_terms(fld, k, std::move(acc));
}

MultiPoly apply_linear_change(const MultiPoly& f, const Matrix& g) {
  if (g.rows() != f.nvars() || g.cols() != f.nvars()) throw DomainError("coordinate change has the wrong size");
  if (!is_invertible(g)) throw DomainError("coordinate change is singular");
  return substitute(f, g);
}

MultiPoly quotient_by_linear_form(const MultiPoly& f, const std::vector<Elem>& l) {
  const std::size_t n = f.nvars();
  if (l.size() != n) throw DomainError("linear form has the wrong length");
  std::size_t pivot = n;
  for (std::size_t i = n; i-- > 0;) {
    if (l[i].v != 0) {
      pivot = i;
      break;
    }
  }
  if (pivot == n) throw DomainError("linear form is zero");
  const FieldCtx& fc = *f.field();
  Matrix m(f.field(), n, n - 1);
  const Elem s = fc.neg(fc.inv(l[pivot]));
  for (std::size_t i = 0, col = 0; i < n; ++i) {
    if (i == pivot) continue;
    m(i, col) = fc.one();
    m(pivot, col) = fc.mul(s, l[i]);
    ++col;
  }
  return substitute(f, m);
}

MultiPoly derivative(const MultiPoly& f, std::size_t i) {
  if (i >= f.nvars()) throw DomainError("variable index out of range");
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    if (t.mono[i] == 0) continue;
    Term d = t;
    d.coeff = f.field()->mul(f.field()->from_int(t.mono[i]), t.coeff);
    --d.mono[i];
    out.push_back(d);
  }
  return MultiPoly::from_terms(f.field(), f.nvars(), std::move(out));
}

MultiPoly embed(const MultiPoly& f, const Extension& ext) {
  std::vector<Term> out = f.terms();
  for (auto& t : out) t.coeff = ext(t.coeff);
  return MultiPoly::from_terms(ext.field, f.nvars(), std::move(out));
}

ReducednessReport check_reduced(const MultiPoly& f, std::size_t trials, std::mt19937_64& rng) {
  if (f.is_zero()) throw DomainError("reducedness of the zero polynomial");
  if (!f.is_homogeneous()) throw DomainError("reducedness test needs a homogeneous polynomial");
  ReducednessReport rep;
  rep.degree = f.degree();
  rep.field = f.field();
  const FieldCtx& base = *f.field();
  if (rep.degree <= 1) return rep;
  if (f.nvars() == 1) {
    rep.reduced = false;
    rep.kind = ReducednessReport::Witness::RepeatedFactor;
    rep.restriction.assign(rep.degree + 1, base.zero());
    rep.restriction.back() = f.terms().front().coeff;
    rep.witness = {base.zero(), base.one()};
    return rep;
  }
  trials = std::max<std::size_t>(trials, 1);
  // Enlarge the field so random lines behave generically.
  const std::uint64_t target = 4ULL * rep.degree * trials;
  std::uint32_t factor = 1;
  std::uint64_t order = base.order();
  while (order < target) {
    std::uint64_t next = order;
    for (std::uint32_t i = 0; i < base.k(); ++i) next *= base.p();
    if (next > kMaxFieldOrder) break;
    order = next;
    ++factor;
  }
  const Extension ext = extend_field(f.field(), factor);
  const MultiPoly g = embed(f, ext);
  const FieldCtx& fc = *ext.field;
  rep.field = ext.field;
  std::uniform_int_distribution<std::uint64_t> pick(0, fc.order() - 1);
  const std::size_t n = f.nvars();
  const std::size_t max_attempts = 8 * trials + 16;
  std::size_t done = 0;
  for (std::size_t attempt = 0; attempt < max_attempts && done < trials; ++attempt) {
    Matrix line(ext.field, n, 2);
    for (std::size_t i = 0; i < n; ++i) {
      line(i, 0) = fc.element(pick(rng));
      line(i, 1) = fc.element(pick(rng));
    }
    if (rank(line) < 2) continue;
    const MultiPoly binary = substitute(g, line);
    if (binary.is_zero()) continue;
    ++done;
    // u(t) is the coefficient of s^(d-j) t^j.
    uni::Poly u(rep.degree + 1, fc.zero());
    for (const auto& t : binary.terms()) u[t.mono[1]] = t.coeff;
    uni::trim(u);
    rep.restriction = u;
    if (uni::degree(u) < static_cast<int>(rep.degree) - 1) {
      rep.kind = ReducednessReport::Witness::RepeatedAtInfinity;
      rep.witness.clear();
      continue;
    }
    uni::Poly w = uni::gcd(fc, u, uni::derivative(fc, u));
    if (uni::degree(w) >= 1) {
      rep.kind = ReducednessReport::Witness::RepeatedFactor;
      rep.witness = std::move(w);
      continue;
    }
    // A squarefree restriction rules out any square factor of f.
    rep.kind = ReducednessReport::Witness::None;
    rep.witness.clear();
    return rep;
  }
  rep.reduced = false;
  return rep;
}

bool is_reduced(const MultiPoly& f, std::size_t trials, std::mt19937_64& rng) {
  return check_reduced(f, trials, rng).reduced;
}

}  // namespace frob

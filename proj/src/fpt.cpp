#include "frob/fpt.hpp"

#include <numeric>

namespace frob {

namespace {

constexpr std::uint64_t kMaxLevelPower = std::uint64_t{1} << 40;

std::uint64_t level_power(std::uint32_t p, std::uint64_t e) {
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxLevelPower) throw CapacityError("p^e exceeds the supported range");
  }
  return q;
}

void check_form(const MultiPoly& f) {
  if (f.is_zero()) throw DomainError("the zero polynomial has no F-pure threshold");
  if (!f.is_homogeneous()) throw DomainError("expected a homogeneous form");
  if (f.degree() == 0) throw DomainError("expected a form of positive degree");
}

bool survives(const MultiPoly& f, std::uint64_t n, std::uint64_t e, WorkBudget* budget) {
  return !truncated_power(f, n, e, budget).is_zero();
}

// Largest N in [lo, hi) with f^N outside m^[p^e], given f^lo outside and f^hi inside.
std::uint64_t search(const MultiPoly& f, std::uint64_t e, std::uint64_t lo, std::uint64_t hi, WorkBudget* budget) {
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (survives(f, mid, e, budget)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

std::string Rational::to_text() const { return den_ == 1 ? std::to_string(num_) : to_string(); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 l = static_cast<__int128>(a.num()) * b.den();
  const __int128 r = static_cast<__int128>(b.num()) * a.den();
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational operator/(const Rational& a, std::int64_t d) { return Rational(a.num(), a.den() * d); }

std::uint64_t nu(const MultiPoly& f, std::uint64_t e, WorkBudget* budget) {
  check_form(f);
  const std::uint64_t q = level_power(f.field()->p(), e);
  // f^(n q) has degree >= n(q-1)+1, so it lies in m^[q].
  return search(f, e, 0, f.nvars() * q, budget);
}

FptInterval fpt_interval(const MultiPoly& f, std::uint64_t e_max, const FptOptions& opts) {
  check_form(f);
  if (e_max < 1) throw DomainError("e_max must be at least 1");
  FptInterval out;
  out.degree = f.degree();
  const std::uint32_t p = f.field()->p();
  WorkBudget budget(opts.budget);
  std::uint64_t prev = 0;  // nu_0 = 0 since f lies in m
  try {
    for (std::uint64_t e = 1; e <= e_max; ++e) {
      const std::uint64_t q = level_power(p, e);
      // p*nu_{e-1} <= nu_e <= p*nu_{e-1} + p - 1; both ends are checked, not assumed.
      const std::uint64_t lo = p * prev;
      const std::uint64_t hi = p * prev + p;
      if (!survives(f, lo, e, &budget)) {
        throw InvariantViolation("monotonicity p*nu_e <= nu_(e+1) failed at level " + std::to_string(e));
      }
      if (survives(f, hi, e, &budget)) {
        throw InvariantViolation("upper bound nu_(e+1) < p*(nu_e+1) failed at level " + std::to_string(e));
      }
      const std::uint64_t v = search(f, e, lo, hi, &budget);
      if (v >= f.nvars() * q) throw InvariantViolation("nu exceeds n*p^e");
      out.levels.push_back(NuRecord{e, v});
      prev = v;
    }
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const CapacityError& err) {
    throw BudgetExceeded(err.what(), out.levels);
  }
  for (const auto& rec : out.levels) {
    const auto q = static_cast<std::int64_t>(level_power(p, rec.e));
    const Rational lo(static_cast<std::int64_t>(rec.nu), q);
    const Rational hi(static_cast<std::int64_t>(rec.nu) + 1, q);
    if (rec.e == 1 || lo > out.lo) out.lo = lo;
    if (rec.e == 1 || hi < out.hi) out.hi = hi;
  }
  out.exact = fpt_exact(f, opts);
  if (out.exact && (out.exact->value < out.lo || out.exact->value > out.hi)) {
    throw InvariantViolation("exact threshold " + out.exact->value.to_string() + " outside the computed bracket");
  }
  return out;
}

std::optional<std::vector<Elem>> linear_root(const MultiPoly& f) {
  if (f.is_zero() || !f.is_homogeneous() || f.degree() == 0) return std::nullopt;
  const FieldCtx& fc = *f.field();
  const std::uint32_t d = f.degree();
  const std::size_t n = f.nvars();
  // L = x_i + sum_{j>i} l_j x_j with i the smallest variable occurring in a pure power.
  std::size_t lead = n;
  for (std::size_t i = 0; i < n && lead == n; ++i) {
    Monomial m{};
    m[i] = static_cast<std::uint16_t>(d);
    if (f.coefficient(m).v != 0) lead = i;
  }
  if (lead == n) return std::nullopt;
  Monomial pure{};
  pure[lead] = static_cast<std::uint16_t>(d);
  const Elem c = f.coefficient(pure);
  // d = p^a * m with p not dividing m; the x_i^(d-p^a) x_j^(p^a) coefficient is c*m*l_j^(p^a).
  std::uint32_t pa = 1;
  std::uint64_t a = 0;
  std::uint32_t m = d;
  while (m % fc.p() == 0) {
    m /= fc.p();
    pa *= fc.p();
    ++a;
  }
  std::vector<Elem> l(n, fc.zero());
  l[lead] = fc.one();
  const Elem cm = fc.mul(c, fc.from_int(m));
  for (std::size_t j = lead + 1; j < n; ++j) {
    Monomial mono{};
    mono[lead] = static_cast<std::uint16_t>(d - pa);
    mono[j] = static_cast<std::uint16_t>(pa);
    l[j] = fc.frobenius_root(fc.div(f.coefficient(mono), cm), a);
  }
  std::vector<Term> ts;
  for (std::size_t j = 0; j < n; ++j) {
    Monomial mono{};
    mono[j] = 1;
    ts.push_back(Term{mono, l[j]});
  }
  const MultiPoly lin = MultiPoly::from_terms(f.field(), n, ts);
  if (scalar_mul(c, pow(lin, d)) != f) return std::nullopt;
  return l;
}

std::optional<ExactValue> fpt_exact(const MultiPoly& f, const FptOptions& opts) {
  check_form(f);
  const std::uint32_t d = f.degree();
  if (linear_root(f)) return ExactValue{Rational(1, d), "power-of-linear-form"};
  const std::uint32_t p = f.field()->p();
  std::uint64_t q = 1;
  std::uint64_t e = 0;
  while (q + 1 < d) {
    q *= p;
    ++e;
  }
  if (q + 1 != d || !in_frobenius_power(f, e)) return std::nullopt;
  std::mt19937_64 rng(opts.seed);
  if (!is_reduced(f, opts.reduced_trials, rng)) return std::nullopt;
  return ExactValue{Rational(1, static_cast<std::int64_t>(q)), "frobenius-form"};
}

MembershipRecord check_membership_criterion(const MultiPoly& f, std::uint64_t e, WorkBudget* budget) {
  check_form(f);
  MembershipRecord rec;
  rec.member = in_frobenius_power(f, e);
  if (!rec.member) {
    const std::uint64_t q = level_power(f.field()->p(), e);
    rec.nu_refinement_holds = survives(f, q + 1, 2 * e, budget);
  }
  return rec;
}

}  // namespace frob

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "frob/fpt.hpp"

using namespace frob;

namespace {

Field F(std::uint32_t p, std::uint32_t k = 1) { return FieldCtx::make(p, k); }

MultiPoly P(const std::string& s, const Field& f, std::size_t n = 0) { return parse_poly(s, f, n); }

// Linear scan with full powers, reduced at the end.
std::uint64_t nu_scan(const MultiPoly& f, std::uint64_t e) {
  MultiPoly power = MultiPoly::constant(f.field(), f.nvars(), f.field()->one());
  std::uint64_t n = 0;
  for (;;) {
    power = power * f;
    if (in_frobenius_power(power, e)) return n;
    ++n;
  }
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("rationals", "[fpt]") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK(Rational(4, 2).to_text() == "2");
  CHECK(Rational(4, 2).to_string() == "2/1");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(3, 4) / 3 == Rational(1, 4));
}

TEST_CASE("nu examples", "[fpt]") {
  auto f2 = F(2);
  CHECK(nu(P("x0*x1", f2), 2) == 3);
  CHECK(nu(P("x0^3 + x1^3", f2), 2) == 1);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t d = 1; d <= 6; ++d) {
      const auto f = MultiPoly::monomial(F(p), 1, Monomial{static_cast<std::uint16_t>(d)}, F(p)->one());
      for (std::uint64_t e = 0; e <= 3; ++e) {
        const std::uint64_t q = ipow(p, e);
        CHECK(nu(f, e) == (q + d - 1) / d - 1);
      }
    }
  }
  CHECK_THROWS_AS(nu(MultiPoly(f2, 2), 1), DomainError);
}

TEST_CASE("nu agrees with a linear scan", "[fpt]") {
  std::mt19937_64 rng(9);
  for (auto fld : {F(2), F(3), F(2, 2)}) {
    std::uniform_int_distribution<std::uint64_t> pick(1, fld->order() - 1);
    for (int it = 0; it < 25; ++it) {
      std::vector<Term> ts;
      for (int t = 0; t < 3; ++t) {
        Monomial m{};
        for (int i = 0; i < 3; ++i) ++m[rng() % 3];
        ts.push_back(Term{m, fld->element(pick(rng))});
      }
      const auto f = MultiPoly::from_terms(fld, 3, ts);
      if (f.is_zero()) continue;
      for (std::uint64_t e = 0; e <= 2; ++e) REQUIRE(nu(f, e) == nu_scan(f, e));
    }
  }
}

TEST_CASE("threshold intervals", "[fpt]") {
  auto f2 = F(2);
  const auto xy = fpt_interval(P("x0*x1", f2), 3);
  CHECK(xy.lo == Rational(7, 8));
  CHECK(xy.hi == Rational(1));
  // A reduced quadric is a Frobenius form with q = 1.
  REQUIRE(xy.exact.has_value());
  CHECK(xy.exact->value == Rational(1));
  for (const auto& rec : xy.levels) CHECK(rec.nu == ipow(2, rec.e) - 1);

  const auto cubic = fpt_interval(P("x0^3 + x1^3 + x2^3", f2), 2);
  CHECK(cubic.hi == Rational(1, 2));
  REQUIRE(cubic.exact.has_value());
  CHECK(cubic.exact->value == Rational(1, 2));
  CHECK(cubic.exact->reason == "frobenius-form");

  const auto sq = fpt_interval(P("x0^2", f2), 2);
  REQUIRE(sq.levels.size() == 2);
  CHECK(sq.levels[0].nu == 0);
  CHECK(sq.levels[1].nu == 1);
  CHECK(sq.lo == Rational(1, 4));
  CHECK(sq.hi == Rational(1, 2));
  REQUIRE(sq.exact.has_value());
  CHECK(sq.exact->value == Rational(1, 2));

  const auto lin = fpt_interval(P("x0", F(3), 2), 4);
  CHECK(lin.hi == Rational(1));
  CHECK(lin.lo == Rational(80, 81));
}

TEST_CASE("budget overrun reports partial levels", "[fpt]") {
  FptOptions opts;
  opts.budget = 2000;
  try {
    fpt_interval(P("x0*x1 + x1*x2 + x2*x3 + x0*x3 + x0*x2", F(2)), 8, opts);
    FAIL("expected a budget error");
  } catch (const BudgetExceeded& err) {
    CHECK(err.partial().size() < 8);
    for (std::size_t i = 0; i < err.partial().size(); ++i) CHECK(err.partial()[i].e == i + 1);
  }
}

TEST_CASE("exact values", "[fpt]") {
  auto f2 = F(2);
  auto e1 = fpt_exact(P("x0^3 + x1^3 + x2^3", f2));
  REQUIRE(e1);
  CHECK(e1->value == Rational(1, 2));
  CHECK(e1->reason == "frobenius-form");
  auto e2 = fpt_exact(P("x0^3 + x1^2*x2", f2));
  REQUIRE(e2);
  CHECK(e2->value == Rational(1, 2));
  CHECK(e2->reason == "frobenius-form");
  auto f3 = F(3);
  auto e3 = fpt_exact(pow(P("x0 + x1", f3), 3));
  REQUIRE(e3);
  CHECK(e3->value == Rational(1, 3));
  CHECK(e3->reason == "power-of-linear-form");
  CHECK_FALSE(fpt_exact(P("x0^3 + x1^3", F(5))).has_value());
  // In m^[2] but not reduced.
  CHECK_FALSE(fpt_exact(P("x0^2*x1", f2)).has_value());
}

TEST_CASE("linear roots", "[fpt]") {
  std::mt19937_64 rng(4);
  for (auto fld : {F(2), F(3), F(2, 2), F(5)}) {
    std::uniform_int_distribution<std::uint64_t> pick(0, fld->order() - 1);
    for (int it = 0; it < 40; ++it) {
      std::vector<Term> ts;
      for (std::size_t j = 0; j < 3; ++j) {
        Monomial m{};
        m[j] = 1;
        ts.push_back(Term{m, fld->element(pick(rng))});
      }
      const auto lin = MultiPoly::from_terms(fld, 3, ts);
      if (lin.is_zero()) continue;
      const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng() % 6);
      const auto f = scalar_mul(fld->element(1 + pick(rng) % (fld->order() - 1)), pow(lin, d));
      REQUIRE(linear_root(f).has_value());
    }
  }
  CHECK_FALSE(linear_root(P("x0*x1", F(3))).has_value());
}

TEST_CASE("membership criterion", "[fpt]") {
  auto f2 = F(2);
  CHECK(check_membership_criterion(P("x0^3 + x1^3 + x2^3", f2), 1).member);
  const auto r = check_membership_criterion(P("x0^3 + x1^3", f2), 2);
  CHECK_FALSE(r.member);
  REQUIRE(r.nu_refinement_holds.has_value());
  CHECK(*r.nu_refinement_holds);
  CHECK(!truncated_power(P("x0^3 + x1^3", f2), 5, 4).is_zero());
  CHECK(check_membership_criterion(P("x0", F(7)), 0).member);
}

TEST_CASE("scaling law as interval containment", "[fpt]") {
  for (const char* s : {"x0*x1", "x0^2 + x1*x2", "x0^3 + x1^2*x2"}) {
    for (auto fld : {F(2), F(3)}) {
      const auto f = P(s, fld);
      const auto base = fpt_interval(f, 3);
      for (std::int64_t r = 2; r <= 3; ++r) {
        const auto pr = fpt_interval(pow(f, static_cast<std::uint64_t>(r)), 3);
        CHECK(pr.lo <= base.hi / r);
        CHECK(pr.hi >= base.lo / r);
      }
    }
  }
}

TEST_CASE("lower bound for reduced forms", "[fpt]") {
  std::mt19937_64 rng(21);
  for (auto fld : {F(2), F(3)}) {
    std::uniform_int_distribution<std::uint64_t> pick(0, fld->order() - 1);
    for (int it = 0; it < 30; ++it) {
      const std::uint32_t d = 2 + static_cast<std::uint32_t>(rng() % 3);
      std::vector<Term> ts;
      for (std::uint16_t a = 0; a <= d; ++a) {
        for (std::uint16_t b = 0; a + b <= d; ++b) {
          Monomial m{};
          m[0] = a;
          m[1] = b;
          m[2] = static_cast<std::uint16_t>(d - a - b);
          ts.push_back(Term{m, fld->element(pick(rng))});
        }
      }
      const auto f = MultiPoly::from_terms(fld, 3, ts);
      if (f.is_zero()) continue;
      std::mt19937_64 r2(1);
      if (!is_reduced(f, 20, r2)) continue;
      const auto iv = fpt_interval(f, 3);
      CHECK(iv.hi >= Rational(1, d - 1));
    }
  }
}

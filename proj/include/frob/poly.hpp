#pragma once

// Sparse multivariate polynomials over F_{p^k}.

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "frob/ff.hpp"
#include "frob/matrix.hpp"

namespace frob {

inline constexpr std::size_t kMaxVars = 16;

using Monomial = std::array<std::uint16_t, kMaxVars>;

std::uint32_t total_degree(const Monomial& m);
/// Graded lexicographic order: true when a comes strictly before b (higher degree first).
bool grlex_before(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

struct Term {
  Monomial mono{};
  Elem coeff;
  bool operator==(const Term& o) const { return mono == o.mono && coeff == o.coeff; }
};

/// Counts coefficient multiplications and aborts with CapacityError past the limit.
class WorkBudget {
 public:
  explicit WorkBudget(std::uint64_t limit) : limit_(limit) {}
  /// Default limit, overridable through the FROBFPT_BUDGET environment variable.
  static std::uint64_t default_limit();
  void charge(std::uint64_t units);
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(Field f, std::size_t nvars);

  static MultiPoly constant(Field f, std::size_t nvars, Elem c);
  static MultiPoly variable(Field f, std::size_t nvars, std::size_t i);
  static MultiPoly monomial(Field f, std::size_t nvars, const Monomial& m, Elem c);
  /// Combines like terms and drops zeros.
  static MultiPoly from_terms(Field f, std::size_t nvars, std::vector<Term> terms);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Largest total degree of a term; 0 for the zero polynomial.
  std::uint32_t degree() const;
  bool is_homogeneous() const;
  Elem coefficient(const Monomial& m) const;

  bool operator==(const MultiPoly& o) const {
    return nvars_ == o.nvars_ && same_field(field_, o.field_) && terms_ == o.terms_;
  }

 private:
  Field field_;
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator-(const MultiPoly& a);
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
MultiPoly scalar_mul(Elem c, const MultiPoly& a);
MultiPoly pow(const MultiPoly& a, std::uint64_t n);

/// Normal form modulo m^[p^e]: drops every term with an exponent >= p^e.
MultiPoly reduce_mod_frobenius_power(const MultiPoly& f, std::uint64_t e);
bool in_frobenius_power(const MultiPoly& f, std::uint64_t e);
/// f^N reduced modulo m^[p^e]. By convention f^0 = 1 for every e, and 1 is not in m.
MultiPoly truncated_power(const MultiPoly& f, std::uint64_t n, std::uint64_t e,
                          WorkBudget* budget = nullptr);

/// x_i <- sum_j m(i, j) y_j for an nvars x k matrix m; the result has k variables.
MultiPoly substitute(const MultiPoly& f, const Matrix& m);
/// x_i <- sum_j g(i, j) x_j for an invertible g.
MultiPoly apply_linear_change(const MultiPoly& f, const Matrix& g);
/// Image of f in k[x]/(L): the variable with the largest-index nonzero coefficient
/// is solved for and the remaining variables are renumbered in order.
MultiPoly quotient_by_linear_form(const MultiPoly& f, const std::vector<Elem>& l);
MultiPoly derivative(const MultiPoly& f, std::size_t i);
MultiPoly embed(const MultiPoly& f, const Extension& ext);

struct ReducednessReport {
  enum class Witness { None, RepeatedFactor, RepeatedAtInfinity };
  bool reduced = true;
  Witness kind = Witness::None;
  Field field;                    // field the restriction lives in
  std::vector<Elem> restriction;  // u(t) = f(a + t b) on the last line tried, low to high
  std::vector<Elem> witness;      // nonconstant g with g | u and g | u'
  std::uint32_t degree = 0;       // homogeneous degree of f
};

/// Reducedness test on random lines. A true answer is certified by a line on which f
/// restricts to a squarefree binary form; false means every sampled line was tangent
/// or met a multiple component.
ReducednessReport check_reduced(const MultiPoly& f, std::size_t trials, std::mt19937_64& rng);
bool is_reduced(const MultiPoly& f, std::size_t trials, std::mt19937_64& rng);

/// Text grammar: "c*x0^3*x1 + x2^4", coefficients as integers or [c0,c1,...].
std::string to_string(const MultiPoly& f);
/// Parses the text grammar; nvars = 0 infers the count from the largest index used.
MultiPoly parse_poly(const std::string& text, const Field& f, std::size_t nvars = 0);

}  // namespace frob

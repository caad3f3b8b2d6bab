#pragma once

// F-pure threshold data: the nu sequence, threshold brackets and exact characterizations.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frob/error.hpp"
#include "frob/poly.hpp"

namespace frob {

/// Exact rational in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Always "a/b".
  std::string to_string() const;
  /// "a" when the denominator is 1, else "a/b".
  std::string to_text() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational operator/(const Rational& a, std::int64_t d);

struct NuRecord {
  std::uint64_t e = 0;
  std::uint64_t nu = 0;
  bool operator==(const NuRecord&) const = default;
};

struct ExactValue {
  Rational value;
  std::string reason;  // "frobenius-form" or "power-of-linear-form"
};

struct FptInterval {
  std::uint32_t degree = 0;
  std::vector<NuRecord> levels;
  Rational lo;
  Rational hi;
  std::optional<ExactValue> exact;
};

/// Work budget exhausted; carries the levels completed so far.
class BudgetExceeded : public CapacityError {
 public:
  BudgetExceeded(const std::string& what, std::vector<NuRecord> partial)
      : CapacityError(what), partial_(std::move(partial)) {}
  const std::vector<NuRecord>& partial() const { return partial_; }

 private:
  std::vector<NuRecord> partial_;
};

struct FptOptions {
  std::uint64_t budget = WorkBudget::default_limit();
  std::size_t reduced_trials = 20;
  std::uint64_t seed = 0x5eed;
};

/// Largest N with f^N not in m^[p^e].
std::uint64_t nu(const MultiPoly& f, std::uint64_t e, WorkBudget* budget = nullptr);

FptInterval fpt_interval(const MultiPoly& f, std::uint64_t e_max, const FptOptions& opts = {});

/// L with f = c * L^deg f, normalized so its lowest-index nonzero coefficient is 1.
std::optional<std::vector<Elem>> linear_root(const MultiPoly& f);

std::optional<ExactValue> fpt_exact(const MultiPoly& f, const FptOptions& opts = {});

struct MembershipRecord {
  bool member = false;
  /// Set only when member is false: whether f^(p^e+1) is not in m^[p^(2e)].
  std::optional<bool> nu_refinement_holds;
};

MembershipRecord check_membership_criterion(const MultiPoly& f, std::uint64_t e, WorkBudget* budget = nullptr);

}  // namespace frob

#pragma once

// Exact arithmetic in finite fields F_{p^k}.
//
// An element is stored as the integer encoding c0 + c1*p + ... + c_{k-1}*p^{k-1}
// of its coefficient vector in the basis 1, t, ..., t^{k-1}, where t is a root of
// the field's monic modulus. Multiplication goes through discrete log tables, so
// field order is bounded by kMaxFieldOrder.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace frob {

struct Elem {
  std::uint32_t v = 0;
  friend auto operator<=>(const Elem&, const Elem&) = default;
};

class FieldCtx;
using Field = std::shared_ptr<const FieldCtx>;

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 24;

class FieldCtx {
 public:
  /// Builds (or fetches from the process-wide cache) F_{p^k}. Without a modulus the
  /// built-in table is used, falling back to the first irreducible found by search.
  static Field make(std::uint32_t p, std::uint32_t k,
                    std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  /// Parses "p^k" or "p^k/modulus=c0,c1,...,ck".
  static Field parse(const std::string& spec);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint64_t order() const { return order_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::string spec() const;

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  Elem from_int(std::int64_t n) const;
  Elem from_coeffs(const std::vector<std::uint32_t>& c) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;
  /// Generator of the multiplicative group chosen at construction.
  Elem generator() const { return Elem{exp_[1]}; }
  Elem element(std::uint64_t index) const { return Elem{static_cast<std::uint32_t>(index)}; }
  bool in_prime_field(Elem a) const { return a.v < p_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a.v == 0 || b.v == 0) return Elem{0};
    return Elem{exp_[log_[a.v] + log_[b.v]]};
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const;

  /// a^(p^e).
  Elem frobenius(Elem a, std::uint64_t e) const;
  /// The unique b with b^(p^e) = a.
  Elem frobenius_root(Elem a, std::uint64_t e) const;
  /// Smallest b (in encoding order) with b^m = a, if one exists in this field.
  std::optional<Elem> nth_root(Elem a, std::uint64_t m) const;
  /// Discrete log with respect to generator(); a must be nonzero.
  std::uint32_t log(Elem a) const;

  std::string to_string(Elem a) const;

  bool operator==(const FieldCtx& o) const {
    return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
  }

  FieldCtx(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);

 private:
  std::uint32_t p_;
  std::uint32_t k_;
  std::uint64_t order_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;  // length 2(Q-1)
  std::vector<std::uint32_t> log_;  // length Q
  std::vector<std::uint32_t> neg_;  // length Q
  std::vector<std::uint32_t> add_table_;  // Q*Q when small, else empty
  std::vector<std::uint32_t> digit_pow_;  // p^i
};

inline bool same_field(const Field& a, const Field& b) { return a == b || *a == *b; }

/// F_{p^(k*factor)} together with the embedding of the smaller field.
struct Extension {
  Field base;
  Field field;
  std::vector<Elem> table;  // table[a.v] = image of a
  Elem operator()(Elem a) const { return table[a.v]; }
};

Extension extend_field(const Field& base, std::uint32_t factor);

bool is_prime(std::uint64_t n);
/// Monic irreducibility over F_p, coefficients low to high.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic);
/// Modulus from the built-in table for p in {2,3,5,7}, k <= 4; otherwise searched.
std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t k);

}  // namespace frob

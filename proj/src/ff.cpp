#include "frob/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "frob/error.hpp"

namespace frob {

namespace {

using Coeffs = std::vector<std::uint32_t>;

// Remainder of a modulo b over F_p; b monic.
Coeffs poly_rem(Coeffs a, const Coeffs& b, std::uint32_t p) {
  auto trim = [](Coeffs& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
  };
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - (c * b[i]) % p)) % p);
    }
    trim(a);
  }
  return a;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  unsigned __int128 r = 1;
  unsigned __int128 x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

const std::map<std::pair<std::uint32_t, std::uint32_t>, Coeffs>& builtin_moduli() {
  static const std::map<std::pair<std::uint32_t, std::uint32_t>, Coeffs> table = {
      {{2, 1}, {0, 1}},       {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}}, {{3, 1}, {0, 1}},       {{3, 2}, {1, 0, 1}},
      {{3, 3}, {1, 2, 0, 1}}, {{3, 4}, {2, 1, 0, 0, 1}}, {{5, 1}, {0, 1}},
      {{5, 2}, {2, 0, 1}},    {{5, 3}, {1, 1, 0, 1}},    {{5, 4}, {2, 0, 0, 0, 1}},
      {{7, 1}, {0, 1}},       {{7, 2}, {1, 0, 1}},       {{7, 3}, {2, 0, 0, 1}},
      {{7, 4}, {1, 1, 0, 0, 1}},
  };
  return table;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic) {
  if (monic.size() < 2 || monic.back() != 1) return false;
  const std::size_t k = monic.size() - 1;
  if (k == 1) return true;
  // Trial division by every monic polynomial of degree <= k/2.
  for (std::size_t d = 1; d <= k / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t n = 0; n < count; ++n) {
      Coeffs g(d + 1);
      std::uint64_t t = n;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (poly_rem(monic, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t k) {
  if (auto it = builtin_moduli().find({p, k}); it != builtin_moduli().end()) return it->second;
  const std::uint64_t count = ipow(p, k);
  for (std::uint64_t n = 0; n < count; ++n) {
    Coeffs f(k + 1);
    std::uint64_t t = n;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    f[k] = 1;
    if (is_irreducible(p, f)) return f;
  }
  throw InvariantViolation("no irreducible polynomial found");
}

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  order_ = ipow(p, k);
  digit_pow_.resize(k + 1);
  for (std::uint32_t i = 0; i <= k; ++i) digit_pow_[i] = static_cast<std::uint32_t>(ipow(p, i));

  const std::uint32_t q = static_cast<std::uint32_t>(order_);
  neg_.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint32_t r = 0;
    std::uint32_t t = a;
    for (std::uint32_t i = 0; i < k; ++i) {
      const std::uint32_t c = t % p;
      t /= p;
      r += ((p - c) % p) * digit_pow_[i];
    }
    neg_[a] = r;
  }

  // Multiplication by an element on coefficient vectors, reducing by the modulus.
  auto mulvec = [&](const Coeffs& a, const Coeffs& b) {
    Coeffs prod(2 * k, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
      if (!a[i]) continue;
      for (std::uint32_t j = 0; j < k; ++j) {
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
      }
    }
    Coeffs r = poly_rem(prod, modulus_, p);
    r.resize(k, 0);
    return r;
  };
  auto encode = [&](const Coeffs& c) {
    std::uint32_t v = 0;
    for (std::uint32_t i = 0; i < k; ++i) v += c[i] * digit_pow_[i];
    return v;
  };
  auto decode = [&](std::uint32_t v) {
    Coeffs c(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      c[i] = v % p;
      v /= p;
    }
    return c;
  };

  // Search the smallest generator of the multiplicative group.
  const std::uint32_t group = q - 1;
  exp_.assign(2 * static_cast<std::size_t>(group) + 1, 0);
  log_.assign(q, 0);
  for (std::uint32_t cand = 1; cand < q; ++cand) {
    const Coeffs g = decode(cand);
    Coeffs cur = decode(1);
    bool ok = true;
    for (std::uint32_t i = 0; i < group; ++i) {
      const std::uint32_t v = encode(cur);
      if (i > 0 && v == 1) {
        ok = false;
        break;
      }
      exp_[i] = v;
      cur = mulvec(cur, g);
    }
    if (ok && encode(cur) == 1) break;
    if (cand + 1 == q) throw InvariantViolation("modulus is not irreducible");
  }
  for (std::uint32_t i = 0; i < group; ++i) {
    exp_[group + i] = exp_[i];
    log_[exp_[i]] = i;
  }

  if (p != 2 && q <= 512) {
    add_table_.resize(std::size_t{q} * q);
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        std::uint32_t r = 0;
        std::uint32_t x = a, y = b;
        for (std::uint32_t i = 0; i < k; ++i) {
          r += ((x % p + y % p) % p) * digit_pow_[i];
          x /= p;
          y /= p;
        }
        add_table_[std::size_t{a} * q + b] = r;
      }
    }
  }
}

Field FieldCtx::make(std::uint32_t p, std::uint32_t k,
                     std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw DomainError("extension degree must be at least 1");
  long double qd = 1;
  for (std::uint32_t i = 0; i < k; ++i) qd *= p;
  if (qd > static_cast<long double>(kMaxFieldOrder)) {
    throw CapacityError("field order " + std::to_string(p) + "^" + std::to_string(k) +
                        " exceeds the desk-scale bound");
  }
  Coeffs mod = modulus ? *modulus : default_modulus(p, k);
  if (mod.size() != k + 1) throw DomainError("modulus must have degree k");
  for (auto c : mod) {
    if (c >= p) throw DomainError("modulus coefficient out of range");
  }
  if (mod.back() != 1) throw DomainError("modulus must be monic");
  if (!is_irreducible(p, mod)) throw DomainError("modulus is not irreducible over F_p");

  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, Coeffs>, Field> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, k, mod);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto f = std::make_shared<const FieldCtx>(p, k, mod);
  cache.emplace(std::move(key), f);
  return f;
}

Field FieldCtx::parse(const std::string& spec) {
  const auto caret = spec.find('^');
  if (caret == std::string::npos) throw MalformedInput("field spec must look like p^k: " + spec);
  const auto slash = spec.find('/');
  try {
    const auto p = static_cast<std::uint32_t>(std::stoul(spec.substr(0, caret)));
    const auto k = static_cast<std::uint32_t>(
        std::stoul(spec.substr(caret + 1, slash == std::string::npos ? std::string::npos : slash - caret - 1)));
    if (slash == std::string::npos) return make(p, k);
    const std::string rest = spec.substr(slash + 1);
    const std::string prefix = "modulus=";
    if (rest.rfind(prefix, 0) != 0) throw MalformedInput("unknown field option: " + rest);
    Coeffs mod;
    std::stringstream ss(rest.substr(prefix.size()));
    std::string tok;
    while (std::getline(ss, tok, ',')) mod.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    return make(p, k, mod);
  } catch (const std::invalid_argument&) {
    throw MalformedInput("bad field spec: " + spec);
  } catch (const std::out_of_range&) {
    throw MalformedInput("bad field spec: " + spec);
  }
}

std::string FieldCtx::spec() const {
  std::string s = std::to_string(p_) + "^" + std::to_string(k_);
  if (modulus_ != default_modulus(p_, k_)) {
    s += "/modulus=";
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(modulus_[i]);
    }
  }
  return s;
}

Elem FieldCtx::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem FieldCtx::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() > k_) throw MalformedInput("too many coefficients for field element");
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= p_) throw MalformedInput("field coefficient out of range");
    v += c[i] * digit_pow_[i];
  }
  return Elem{v};
}

std::vector<std::uint32_t> FieldCtx::coeffs(Elem a) const {
  Coeffs c(k_);
  std::uint32_t v = a.v;
  for (std::uint32_t i = 0; i < k_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

Elem FieldCtx::add(Elem a, Elem b) const {
  if (p_ == 2) return Elem{a.v ^ b.v};
  if (!add_table_.empty()) return Elem{add_table_[std::size_t{a.v} * order_ + b.v]};
  std::uint32_t r = 0;
  std::uint32_t x = a.v, y = b.v;
  for (std::uint32_t i = 0; i < k_ && (x | y); ++i) {
    r += ((x % p_ + y % p_) % p_) * digit_pow_[i];
    x /= p_;
    y /= p_;
  }
  return Elem{r};
}

Elem FieldCtx::neg(Elem a) const { return Elem{neg_[a.v]}; }

Elem FieldCtx::inv(Elem a) const {
  if (a.v == 0) throw DomainError("division by zero in finite field");
  const std::uint32_t group = static_cast<std::uint32_t>(order_ - 1);
  return Elem{exp_[(group - log_[a.v]) % group]};
}

std::uint32_t FieldCtx::log(Elem a) const {
  if (a.v == 0) throw DomainError("logarithm of zero");
  return log_[a.v];
}

Elem FieldCtx::pow(Elem a, std::uint64_t n) const {
  if (n == 0) return one();
  if (a.v == 0) return zero();
  const std::uint64_t group = order_ - 1;
  return Elem{exp_[(static_cast<unsigned __int128>(log_[a.v]) * (n % group)) % group]};
}

Elem FieldCtx::frobenius(Elem a, std::uint64_t e) const {
  if (a.v == 0) return a;
  const std::uint64_t group = order_ - 1;
  return Elem{exp_[(static_cast<unsigned __int128>(log_[a.v]) * powmod(p_, e, group)) % group]};
}

Elem FieldCtx::frobenius_root(Elem a, std::uint64_t e) const {
  // sigma^k is the identity, so sigma^{-e} = sigma^{k - (e mod k)}.
  return frobenius(a, (k_ - e % k_) % k_);
}

std::optional<Elem> FieldCtx::nth_root(Elem a, std::uint64_t m) const {
  if (m == 0) return a.v == 1 ? std::optional<Elem>{zero()} : std::nullopt;
  if (a.v == 0) return zero();
  // b = g^j solves b^m = a iff j*m = log a (mod Q-1).
  const std::uint64_t group = order_ - 1;
  const std::uint64_t la = log_[a.v];
  const std::uint64_t g = std::gcd(m % group == 0 ? group : m % group, group);
  if (la % g != 0) return std::nullopt;
  const std::uint64_t mod = group / g;
  const std::uint64_t mm = (m / g) % mod;
  // Inverse of mm modulo mod via extended Euclid.
  auto inverse = [](std::int64_t x, std::int64_t n) {
    std::int64_t t = 0, nt = 1, r = n, nr = x % n;
    while (nr) {
      const std::int64_t qq = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
      std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
    }
    return t < 0 ? t + n : t;
  };
  std::uint64_t j0 = 0;
  if (mod > 1) {
    j0 = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>((la / g) % mod) *
         static_cast<std::uint64_t>(inverse(static_cast<std::int64_t>(mm), static_cast<std::int64_t>(mod)))) %
        mod);
  }
  // All solutions are g^(j0 + t*mod); choose the smallest encoding.
  std::uint32_t best = UINT32_MAX;
  for (std::uint64_t t = 0; t < g; ++t) best = std::min(best, exp_[j0 + t * mod]);
  return Elem{best};
}

std::string FieldCtx::to_string(Elem a) const {
  if (k_ == 1) return std::to_string(a.v);
  std::string s = "[";
  const auto c = coeffs(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

Extension extend_field(const Field& base, std::uint32_t factor) {
  if (factor < 1) throw DomainError("extension factor must be positive");
  long double qd = 1;
  for (std::uint32_t i = 0; i < base->k() * factor; ++i) qd *= base->p();
  if (qd > static_cast<long double>(kMaxFieldOrder)) {
    throw CapacityError("field extension to degree " + std::to_string(base->k() * factor) +
                        " exceeds the desk-scale bound");
  }
  Extension ext;
  ext.base = base;
  ext.field = factor == 1 ? base : FieldCtx::make(base->p(), base->k() * factor);
  const FieldCtx& big = *ext.field;
  ext.table.assign(base->order(), Elem{0});
  if (factor == 1) {
    for (std::uint32_t a = 0; a < base->order(); ++a) ext.table[a] = Elem{a};
    return ext;
  }
  // Find a root of the base modulus inside the subfield of order |base|.
  const auto& mod = base->modulus();
  auto eval_mod = [&](Elem x) {
    Elem acc = big.zero();
    for (std::size_t i = mod.size(); i-- > 0;) acc = big.add(big.mul(acc, x), big.from_int(mod[i]));
    return acc;
  };
  const std::uint64_t step = (big.order() - 1) / (base->order() - 1);
  std::optional<Elem> root;
  if (base->k() == 1) {
    root = big.zero();  // modulus t, root 0
  } else {
    for (std::uint64_t j = 0; j < base->order() - 1 && !root; ++j) {
      const Elem x = big.pow(big.generator(), j * step);
      if (eval_mod(x) == big.zero()) root = x;
    }
  }
  if (!root) throw InvariantViolation("base modulus has no root in extension");
  for (std::uint32_t a = 0; a < base->order(); ++a) {
    const auto c = base->coeffs(Elem{a});
    Elem acc = big.zero();
    for (std::size_t i = c.size(); i-- > 0;) acc = big.add(big.mul(acc, *root), big.from_int(c[i]));
    ext.table[a] = acc;
  }
  return ext;
}

}  // namespace frob

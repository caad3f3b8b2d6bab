#include "frob/univariate.hpp"

#include <algorithm>

#include "frob/error.hpp"

namespace frob::uni {

void trim(Poly& a) {
  while (!a.empty() && a.back().v == 0) a.pop_back();
}

int degree(const Poly& a) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i].v != 0) return static_cast<int>(i);
  }
  return -1;
}

Poly add(const FieldCtx& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  trim(r);
  return r;
}

Poly sub(const FieldCtx& f, const Poly& a, const Poly& b) {
  Poly nb = b;
  for (auto& c : nb) c = f.neg(c);
  return add(f, a, nb);
}

Poly mul(const FieldCtx& f, const Poly& a, const Poly& b) {
  if (degree(a) < 0 || degree(b) < 0) return {};
  Poly r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].v == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const FieldCtx& f, const Poly& a, const Poly& b) {
  const int db = degree(b);
  if (db < 0) throw DomainError("polynomial division by zero");
  Poly rem = a;
  trim(rem);
  const int da = degree(rem);
  if (da < db) return {{}, rem};
  Poly quo(da - db + 1, f.zero());
  const Elem lead_inv = f.inv(b[db]);
  for (int i = da; i >= db; --i) {
    const Elem c = f.mul(rem[i], lead_inv);
    quo[i - db] = c;
    if (c.v == 0) continue;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = f.sub(rem[i - db + j], f.mul(c, b[j]));
  }
  trim(rem);
  trim(quo);
  return {quo, rem};
}

Poly derivative(const FieldCtx& f, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = f.mul(f.from_int(static_cast<std::int64_t>(i)), a[i]);
  trim(r);
  return r;
}

Poly monic(const FieldCtx& f, const Poly& a) {
  Poly r = a;
  trim(r);
  if (r.empty()) return r;
  const Elem s = f.inv(r.back());
  for (auto& c : r) c = f.mul(c, s);
  return r;
}

Poly gcd(const FieldCtx& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(f, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

Elem eval(const FieldCtx& f, const Poly& a, Elem x) {
  Elem acc = f.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a[i]);
  return acc;
}

std::vector<Elem> roots(const FieldCtx& f, const Poly& a) {
  Poly cur = a;
  trim(cur);
  if (cur.empty()) throw DomainError("roots of the zero polynomial");
  std::vector<Elem> out;
  for (std::uint64_t i = 0; i < f.order() && degree(cur) > 0; ++i) {
    const Elem x = f.element(i);
    while (degree(cur) > 0 && eval(f, cur, x).v == 0) {
      out.push_back(x);
      cur = divmod(f, cur, Poly{f.neg(x), f.one()}).first;
    }
  }
  return out;
}

}  // namespace frob::uni

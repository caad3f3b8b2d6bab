#include "frob/geom.hpp"

#include <algorithm>

#include "frob/error.hpp"
#include "frob/univariate.hpp"

namespace frob {

namespace {

void require_nonzero(const std::vector<Elem>& l) {
  if (std::all_of(l.begin(), l.end(), [](Elem x) { return x.v == 0; })) {
    throw DomainError("hyperplane needs a nonzero linear form");
  }
}

}  // namespace

Section hyperplane_section(const FrobeniusForm& form, const std::vector<Elem>& l) {
  require_nonzero(l);
  Section s{quotient_by_linear_form(to_polynomial(form), l), std::nullopt};
  s.form = from_polynomial(s.polynomial, form.e);
  if (!s.form) throw InvariantViolation("hyperplane section of a Frobenius form is not Frobenius");
  return s;
}

Section hyperplane_section(const MultiPoly& f, const std::vector<Elem>& l) {
  require_nonzero(l);
  Section s{quotient_by_linear_form(f, l), std::nullopt};
  s.form = detect_frobenius(s.polynomial);
  return s;
}

std::vector<std::vector<Elem>> projective_linear_forms(const Field& f, std::size_t n) {
  std::vector<std::vector<Elem>> out;
  const std::uint64_t order = f->order();
  for (std::size_t last = 0; last < n; ++last) {
    std::uint64_t count = 1;
    for (std::size_t t = 0; t < last; ++t) count *= order;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<Elem> l(n, f->zero());
      std::uint64_t c = code;
      for (std::size_t t = 0; t < last; ++t) {
        l[t] = f->element(c % order);
        c /= order;
      }
      l[last] = f->one();
      out.push_back(std::move(l));
    }
  }
  return out;
}

SectionSweep sweep_sections(const MultiPoly& f, std::uint64_t e) {
  SectionSweep sweep;
  for (const auto& l : projective_linear_forms(f.field(), f.nvars())) {
    ++sweep.sections;
    if (from_polynomial(quotient_by_linear_form(f, l), e)) ++sweep.frobenius;
  }
  return sweep;
}

FrobeniusForm restrict_form(const FrobeniusForm& form, const Matrix& g) {
  if (g.rows() != form.n()) throw DomainError("restriction matrix has the wrong number of rows");
  if (rank(g) != g.cols()) throw DomainError("restriction matrix must have full column rank");
  return FrobeniusForm{form.e, transpose(frobenius(g, form.e)) * form.a * g};
}

GaussData gauss_data(const FrobeniusForm& form) {
  GaussData out;
  out.dual_matrix = frobenius(form.a, form.e);
  if (rank(form) == form.n()) {
    const std::uint64_t q = form.q();
    std::uint64_t deg = 1;
    for (std::size_t i = 1; i < form.n(); ++i) {
      if (deg > UINT64_MAX / q) throw CapacityError("inseparable degree exceeds 64 bits");
      deg *= q;
    }
    out.insep_degree = deg;
  } else {
    out.note = "singular hypersurface: the Gauss image has dimension dim X - dim Sing(X) - 1, not computed here";
  }
  return out;
}

std::string to_string(StarVerdict v) {
  switch (v) {
    case StarVerdict::PerfectStar:
      return "PerfectStar";
    case StarVerdict::QFoldLinePlusLine:
      return "QFoldLinePlusLine";
    case StarVerdict::PlaneContained:
      return "PlaneContained";
  }
  return "";
}

namespace {

Monomial mono2(std::uint16_t i, std::uint16_t j) {
  Monomial m{};
  m[0] = i;
  m[1] = j;
  return m;
}

// Smallest allowed field containing base where roots of g split completely
// (and, when d > 0, the d-th roots of unity live).
std::optional<Extension> splitting_extension(const Field& base, const uni::Poly& g, std::uint64_t d,
                                             std::uint32_t ext_cap) {
  for (std::uint32_t m = 1; base->k() * m <= std::max(ext_cap, base->k()); ++m) {
    Extension ext;
    if (m == 1) {
      ext.base = ext.field = base;
      ext.table.resize(base->order());
      for (std::uint64_t v = 0; v < base->order(); ++v) ext.table[v] = base->element(v);
    } else {
      ext = extend_field(base, m);
    }
    if (d > 0 && (ext.field->order() - 1) % d != 0) continue;
    uni::Poly h;
    for (Elem c : g) h.push_back(ext(c));
    if (static_cast<int>(uni::roots(*ext.field, h).size()) == uni::degree(h)) return ext;
  }
  return std::nullopt;
}

struct P1 {
  Elem x;
  Elem y;
  auto operator<=>(const P1&) const = default;
};

P1 normalized(const FieldCtx& f, Elem x, Elem y) {
  if (y.v != 0) return P1{f.div(x, y), f.one()};
  return P1{f.one(), f.zero()};
}

Elem bracket(const FieldCtx& f, const P1& u, const P1& v) { return f.sub(f.mul(u.x, v.y), f.mul(u.y, v.x)); }

// Images under the Moebius map sending a, b, c to 0, 1, infinity.
std::vector<P1> normalize_points(const FieldCtx& f, const std::vector<P1>& pts, const P1& a, const P1& b,
                                 const P1& c) {
  std::vector<P1> out;
  for (const auto& z : pts) {
    out.push_back(normalized(f, f.mul(bracket(f, z, a), bracket(f, b, c)), f.mul(bracket(f, z, c), bracket(f, b, a))));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

StarReport star_classify(const FrobeniusForm& form, std::uint32_t ext_cap) {
  if (form.n() != 3) throw DomainError("star classification needs a form in 3 variables");
  if (form.e == 0) throw DomainError("star classification needs e >= 1");
  const MultiPoly h = to_polynomial(form);
  const FieldCtx& f = *form.field();
  StarReport rep{StarVerdict::PlaneContained, f.zero(), f.zero(), form.field(), {}};
  if (h.is_zero()) return rep;
  for (const auto& t : h.terms()) {
    if (t.mono[0] == 0 || t.mono[1] == 0) throw MalformedInput("section is not divisible by x0 x1");
  }
  const auto q = static_cast<std::uint16_t>(form.q());
  rep.a = h.coefficient(mono2(q, 1));
  rep.b = h.coefficient(mono2(1, q));
  const MultiPoly expected = MultiPoly::from_terms(form.field(), 3, {Term{mono2(q, 1), rep.a}, Term{mono2(1, q), rep.b}});
  if (!(expected == h)) throw InvariantViolation("section has terms beyond a x^q y + b x y^q");
  auto line = [](const FieldCtx& fld, std::size_t var, std::size_t mult) {
    std::vector<Elem> c(3, fld.zero());
    c[var] = fld.one();
    return LinearFactor{c, mult};
  };
  if (rep.a.v == 0 || rep.b.v == 0) {
    rep.verdict = StarVerdict::QFoldLinePlusLine;
    const std::size_t heavy = rep.a.v != 0 ? 0 : 1;
    rep.factors = {line(f, heavy, q), line(f, 1 - heavy, 1)};
    return rep;
  }
  // a t^(q-1) + b with t = x0 / x1.
  uni::Poly g(q, f.zero());
  g[0] = rep.b;
  g[q - 1] = rep.a;
  const auto ext = splitting_extension(form.field(), g, 0, ext_cap);
  if (!ext) throw CapacityError("star factors do not split within the extension cap");
  const FieldCtx& ef = *ext->field;
  rep.verdict = StarVerdict::PerfectStar;
  rep.field = ext->field;
  rep.a = (*ext)(rep.a);
  rep.b = (*ext)(rep.b);
  rep.factors = {line(ef, 0, 1), line(ef, 1, 1)};
  uni::Poly ge;
  for (Elem c : g) ge.push_back((*ext)(c));
  for (Elem t : uni::roots(ef, ge)) rep.factors.push_back(LinearFactor{{ef.one(), ef.neg(t), ef.zero()}, 1});
  return rep;
}

bool verify_perfect_star(const MultiPoly& binary, std::uint32_t ext_cap) {
  if (binary.nvars() != 2) throw DomainError("perfect-star check needs a binary form");
  if (binary.is_zero() || !binary.is_homogeneous()) throw DomainError("perfect-star check needs a nonzero form");
  const FieldCtx& f = *binary.field();
  const std::uint64_t d = binary.degree();
  if (d < 3 || d % f.p() == 0) throw DomainError("perfect stars need d >= 3 and p not dividing d");
  uni::Poly g(d + 1, f.zero());
  for (const auto& t : binary.terms()) g[t.mono[0]] = t.coeff;
  uni::trim(g);
  const std::uint64_t at_infinity = d - static_cast<std::uint64_t>(uni::degree(g));
  if (at_infinity > 1) return false;
  const auto ext = splitting_extension(binary.field(), g, d, ext_cap);
  if (!ext) throw CapacityError("roots do not split within the extension cap");
  const FieldCtx& ef = *ext->field;
  uni::Poly ge;
  for (Elem c : g) ge.push_back((*ext)(c));
  std::vector<P1> roots;
  for (Elem t : uni::roots(ef, ge)) roots.push_back(P1{t, ef.one()});
  if (at_infinity == 1) roots.push_back(P1{ef.one(), ef.zero()});
  std::sort(roots.begin(), roots.end());
  if (std::adjacent_find(roots.begin(), roots.end()) != roots.end()) return false;

  const Elem zeta = ef.pow(ef.generator(), (ef.order() - 1) / d);
  std::vector<P1> mu;
  for (std::uint64_t i = 0; i < d; ++i) mu.push_back(P1{ef.pow(zeta, i), ef.one()});
  const auto target = normalize_points(ef, roots, roots[0], roots[1], roots[2]);
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t v = 0; v < d; ++v) {
      for (std::size_t w = 0; w < d; ++w) {
        if (u == v || v == w || u == w) continue;
        if (normalize_points(ef, mu, mu[u], mu[v], mu[w]) == target) return true;
      }
    }
  }
  return false;
}

}  // namespace frob

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "frob/error.hpp"
#include "reducer.hpp"

namespace frob {

namespace detail {

Reducer::Reducer(const Matrix& a, std::uint64_t e, const NormalizeOptions& opts)
    : a_(a), e_(e), opts_(opts), g_(Matrix::identity(a.field(), a.rows())), from_base_(a.field()->order()) {
  for (std::uint64_t v = 0; v < from_base_.size(); ++v) from_base_[v] = a.field()->element(v);
}

void Reducer::apply(const ElementaryOp& op) {
  apply_op(a_, e_, op);
  const std::size_t n = g_.rows();
  switch (op.kind) {
    case ElementaryOp::Kind::Swap:
      for (std::size_t k = 0; k < n; ++k) std::swap(g_(k, op.i), g_(k, op.j));
      break;
    case ElementaryOp::Kind::Scale:
      for (std::size_t k = 0; k < n; ++k) g_(k, op.i) = f().mul(op.lambda, g_(k, op.i));
      break;
    case ElementaryOp::Kind::Shear:
      for (std::size_t k = 0; k < n; ++k) g_(k, op.j) = f().add(g_(k, op.j), f().mul(op.lambda, g_(k, op.i)));
      break;
  }
  ops_.push_back(op);
}

void Reducer::clear_with_row(std::size_t src, std::size_t dst, std::size_t col) {
  const Elem ratio = f().neg(f().div(a_(dst, col), a_(src, col)));
  apply(shear_op(src, dst, f().frobenius_root(ratio, e_)));
}

void Reducer::move_to_last(const std::vector<std::size_t>& vars, const std::vector<Elem>& v) {
  const std::size_t last = vars.size() - 1;
  std::size_t piv = vars.size();
  for (std::size_t t = 0; t < vars.size(); ++t) {
    if (v[t].v != 0) piv = t;
  }
  if (piv == vars.size()) throw InvariantViolation("zero vector cannot start a basis");
  if (piv != last) apply(swap_op(vars[piv], vars[last]));
  if (v[piv] != f().one()) apply(scale_op(vars[last], v[piv]));
  for (std::size_t t = 0; t < last; ++t) {
    if (t != piv && v[t].v != 0) apply(shear_op(vars[t], vars[last], v[t]));
  }
}

std::vector<std::uint32_t> Reducer::extension_factors() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 2; f().k() * m <= opts_.ext_cap; ++m) out.push_back(m);
  return out;
}

bool Reducer::extend(std::uint32_t factor) {
  if (factor == 1) return true;
  if (f().k() * factor > opts_.ext_cap) return false;
  const Extension ext = extend_field(field(), factor);
  a_ = embed(a_, ext);
  g_ = embed(g_, ext);
  for (auto& op : ops_) op = embed(op, ext);
  for (auto& x : from_base_) x = ext(x);
  return true;
}

Elem Reducer::root_with_extension(Elem a, std::uint64_t m) {
  if (auto r = f().nth_root(a, m)) return *r;
  for (std::uint32_t factor : extension_factors()) {
    const Extension ext = extend_field(field(), factor);
    if (ext.field->nth_root(ext(a), m)) {
      extend(factor);
      return *f().nth_root(ext(a), m);
    }
  }
  throw CapacityError("root of order " + std::to_string(m) + " needs a field beyond the extension cap");
}

Matrix Reducer::block(const std::vector<std::size_t>& vars) const {
  Matrix b(field(), vars.size(), vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = 0; j < vars.size(); ++j) b(i, j) = a_(vars[i], vars[j]);
  }
  return b;
}

SparseCertificate Reducer::certificate(const Matrix& input, const Field& base) const {
  return SparseCertificate{base, field(), e_, input, a_, g_, ops_, from_base_};
}

namespace {

// s = (Y^[q])^T A Y.
Elem twisted_value(const Matrix& a, std::uint64_t e, const std::vector<Elem>& y) {
  const FieldCtx& f = *a.field();
  Elem s = f.zero();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i].v == 0) continue;
    const Elem yq = f.frobenius(y[i], e);
    for (std::size_t j = 0; j < y.size(); ++j) s = f.add(s, f.mul(yq, f.mul(a(i, j), y[j])));
  }
  return s;
}

// F_j(Y) = s^(q-1) (A Y)_j - ((A^[q])^T Y^[q^2])_j.
std::vector<Elem> residual(const Matrix& a, std::uint64_t e, const std::vector<Elem>& y) {
  const FieldCtx& f = *a.field();
  const std::uint64_t q = FrobeniusForm{e, a}.q();
  const Elem lambda = f.pow(twisted_value(a, e, y), q - 1);
  std::vector<Elem> out(y.size(), f.zero());
  for (std::size_t j = 0; j < y.size(); ++j) {
    Elem acc = f.zero();
    for (std::size_t k = 0; k < y.size(); ++k) acc = f.add(acc, f.mul(a(j, k), y[k]));
    acc = f.mul(lambda, acc);
    for (std::size_t l = 0; l < y.size(); ++l) {
      acc = f.sub(acc, f.mul(f.frobenius(a(l, j), e), f.frobenius(y[l], 2 * e)));
    }
    out[j] = acc;
  }
  return out;
}

// The residuals satisfy sum_j Y_j^q F_j = 0 for every Y.
void check_residual_relation(const Matrix& a, std::uint64_t e, const std::vector<Elem>& y) {
  const FieldCtx& f = *a.field();
  const auto r = residual(a, e, y);
  Elem acc = f.zero();
  for (std::size_t j = 0; j < y.size(); ++j) acc = f.add(acc, f.mul(f.frobenius(y[j], e), r[j]));
  if (acc.v != 0) throw InvariantViolation("residual relation fails");
}

bool satisfies_final_column(const Matrix& a, std::uint64_t e, const std::vector<Elem>& y) {
  if (twisted_value(a, e, y).v == 0) return false;
  const auto r = residual(a, e, y);
  return std::all_of(r.begin(), r.end(), [](Elem x) { return x.v == 0; });
}

}  // namespace

std::optional<std::vector<Elem>> search_final_column(const Matrix& a, std::uint64_t e, std::uint64_t cap,
                                                    bool unit_value) {
  const FieldCtx& f = *a.field();
  const Field fp = FieldCtx::make(f.p(), 1);
  const std::size_t n = a.rows();
  const std::size_t k = f.k();
  const std::uint64_t q = FrobeniusForm{e, a}.q();
  std::vector<Elem> unit(k);
  for (std::size_t b = 0; b < k; ++b) {
    std::vector<std::uint32_t> c(k, 0);
    c[b] = 1;
    unit[b] = f.from_coeffs(c);
  }
  std::unordered_set<std::uint32_t> powers;
  for (std::uint64_t v = 1; v < f.order(); ++v) powers.insert(f.pow(f.element(v), q - 1).v);

  std::uint64_t examined = 0;
  for (std::uint64_t lv = 1; lv < f.order(); ++lv) {
    if (!powers.count(static_cast<std::uint32_t>(lv))) continue;
    const Elem lambda = f.element(lv);
    // Matrix over F_p of Y -> lambda A Y - (A^[q])^T Y^[q^2] in the basis t^b e_i.
    Matrix t(fp, n * k, n * k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t b = 0; b < k; ++b) {
        const Elem y = unit[b];
        const Elem y2 = f.frobenius(y, 2 * e);
        for (std::size_t r = 0; r < n; ++r) {
          const Elem w = f.sub(f.mul(lambda, f.mul(a(r, i), y)), f.mul(f.frobenius(a(i, r), e), y2));
          const auto c = f.coeffs(w);
          for (std::size_t cc = 0; cc < k; ++cc) t(r * k + cc, i * k + b) = fp->element(c[cc]);
        }
      }
    }
    const auto basis = kernel(t);
    if (basis.empty()) continue;
    std::vector<std::uint32_t> digits(basis.size(), 0);
    for (;;) {
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == f.p()) digits[pos++] = 0;
      if (pos == digits.size()) break;
      if (++examined > cap) throw CapacityError("final-column search exceeded its cap");
      std::vector<std::uint32_t> flat(n * k, 0);
      for (std::size_t d = 0; d < basis.size(); ++d) {
        if (digits[d] == 0) continue;
        for (std::size_t x = 0; x < flat.size(); ++x) flat[x] = (flat[x] + digits[d] * basis[d][x].v) % f.p();
      }
      std::vector<Elem> y(n);
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = f.from_coeffs(std::vector<std::uint32_t>(flat.begin() + i * k, flat.begin() + (i + 1) * k));
      }
      const Elem s = twisted_value(a, e, y);
      if (s.v == 0) continue;
      check_residual_relation(a, e, y);
      if (f.pow(s, q - 1) != lambda) continue;
      if (unit_value && !f.nth_root(f.inv(s), q + 1)) continue;
      if (!satisfies_final_column(a, e, y)) throw InvariantViolation("final-column candidate fails F(Y) = 0");
      return y;
    }
  }
  return std::nullopt;
}

namespace {

struct NoSolutionInField {};

// Brings the block to the identity without leaving the current field.
void diagonalize_in_field(Reducer& r, const std::vector<std::size_t>& all) {
  std::vector<std::size_t> vars = all;
  const std::uint64_t q = FrobeniusForm{r.e(), r.a()}.q();
  while (!vars.empty()) {
    const std::size_t last = vars.back();
    std::vector<Elem> unit(vars.size(), r.f().zero());
    unit.back() = r.f().one();
    const Matrix blk = r.block(vars);
    const Elem d = blk(vars.size() - 1, vars.size() - 1);
    if (!satisfies_final_column(blk, r.e(), unit) || !r.f().nth_root(r.f().inv(d), q + 1)) {
      const auto y = search_final_column(blk, r.e(), r.options().search_cap, true);
      if (!y) throw NoSolutionInField{};
      r.move_to_last(vars, *y);
    }
    const auto c = r.f().nth_root(r.f().inv(r.at(last, last)), q + 1);
    if (!c) throw NoSolutionInField{};
    if (*c != r.f().one()) r.apply(scale_op(last, *c));
    for (std::size_t t = 0; t + 1 < vars.size(); ++t) {
      const Elem x = r.at(last, vars[t]);
      if (x.v != 0) r.apply(shear_op(last, vars[t], r.f().neg(x)));
    }
    for (std::size_t t = 0; t + 1 < vars.size(); ++t) {
      if (r.at(last, vars[t]).v != 0 || r.at(vars[t], last).v != 0) {
        throw InvariantViolation("final variable did not split off");
      }
    }
    if (r.at(last, last) != r.f().one()) throw InvariantViolation("final diagonal entry is not 1");
    vars.pop_back();
  }
}

// Identity block to the reverse permutation, through the inverse of a diagonalization of J.
void identity_to_reverse(Reducer& r, const std::vector<std::size_t>& vars) {
  const std::size_t n = vars.size();
  if (n <= 1) return;
  Reducer rj(Matrix::reverse_identity(r.field(), n), r.e(), r.options());
  std::vector<std::size_t> local(n);
  std::iota(local.begin(), local.end(), std::size_t{0});
  diagonalize_in_field(rj, local);
  const auto cert = rj.certificate(Matrix(), r.field());
  for (auto it = cert.ops.rbegin(); it != cert.ops.rend(); ++it) {
    ElementaryOp op = *it;
    op.i = vars[op.i];
    op.j = vars[op.j];
    if (op.kind == ElementaryOp::Kind::Scale) op.lambda = r.f().inv(op.lambda);
    if (op.kind == ElementaryOp::Kind::Shear) op.lambda = r.f().neg(op.lambda);
    r.apply(op);
  }
  if (r.block(vars) != Matrix::reverse_identity(r.field(), n)) throw InvariantViolation("block did not reach J");
}

// Runs step in the current field, then in each allowed extension, keeping the first success.
template <class Step>
void in_smallest_field(Reducer& r, Step step) {
  std::vector<std::uint32_t> factors{1};
  for (auto m : r.extension_factors()) factors.push_back(m);
  for (auto m : factors) {
    Reducer trial = r;
    if (!trial.extend(m)) continue;
    try {
      step(trial);
    } catch (const NoSolutionInField&) {
      continue;
    }
    r = std::move(trial);
    return;
  }
  throw CapacityError("full-rank block needs a field beyond the extension cap");
}

}  // namespace

void diagonalize_block(Reducer& r, const std::vector<std::size_t>& vars) {
  in_smallest_field(r, [&](Reducer& t) { diagonalize_in_field(t, vars); });
}

void reverse_block(Reducer& r, const std::vector<std::size_t>& vars) {
  in_smallest_field(r, [&](Reducer& t) {
    diagonalize_in_field(t, vars);
    identity_to_reverse(t, vars);
  });
}

}  // namespace detail

FinalColumn fullrank_final_column(const FrobeniusForm& form, const NormalizeOptions& opts) {
  if (form.e == 0) throw DomainError("final-column search needs e >= 1");
  if (rank(form.a) != form.n()) throw DomainError("final-column search needs a full-rank form");
  if (form.n() == 0) throw DomainError("empty form");
  if (auto y = detail::search_final_column(form.a, form.e, opts.search_cap, false)) return {form.field(), *y};
  for (std::uint32_t m = 2; form.field()->k() * m <= opts.ext_cap; ++m) {
    const Extension ext = extend_field(form.field(), m);
    if (auto y = detail::search_final_column(embed(form.a, ext), form.e, opts.search_cap, false)) return {ext.field, *y};
  }
  throw CapacityError("no final column within the extension cap");
}

SparseCertificate diagonalize_full_rank(const FrobeniusForm& form, const NormalizeOptions& opts) {
  if (form.e == 0) throw DomainError("diagonalization needs e >= 1");
  if (rank(form.a) != form.n()) throw DomainError("diagonalization needs a full-rank form");
  detail::Reducer r(form.a, form.e, opts);
  std::vector<std::size_t> vars(form.n());
  std::iota(vars.begin(), vars.end(), std::size_t{0});
  detail::reverse_block(r, vars);
  return r.certificate(form.a, form.field());
}

}  // namespace frob

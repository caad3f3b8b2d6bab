#include "frob/frobform.hpp"

#include "frob/error.hpp"

namespace frob {

namespace {

std::uint64_t power_of_p(std::uint32_t p, std::uint64_t e) {
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    q *= p;
    if (q > 65535) throw CapacityError("q = p^e exceeds the exponent range");
  }
  return q;
}

void check_index(std::size_t i, std::size_t n) {
  if (i >= n) throw DomainError("variable index out of range");
}

}  // namespace

std::uint64_t FrobeniusForm::q() const { return power_of_p(field()->p(), e); }

FrobeniusForm make_form(const Matrix& a, std::uint64_t e) {
  if (a.rows() != a.cols()) throw DomainError("Frobenius form matrix must be square");
  FrobeniusForm form{e, a};
  (void)form.q();
  return form;
}

std::optional<FrobeniusForm> from_polynomial(const MultiPoly& f, std::uint64_t e) {
  const std::uint64_t q = power_of_p(f.field()->p(), e);
  const std::size_t n = f.nvars();
  Matrix a(f.field(), n, n);
  if (f.is_zero()) return make_form(a, e);
  if (!f.is_homogeneous() || f.degree() != q + 1) return std::nullopt;
  if (!in_frobenius_power(f, e)) return std::nullopt;
  for (const auto& t : f.terms()) {
    std::size_t i = n;
    std::size_t j = n;
    if (e == 0) {
      for (std::size_t v = 0; v < n; ++v) {
        for (std::uint16_t c = 0; c < t.mono[v]; ++c) (i == n ? i : j) = v;
      }
    } else {
      for (std::size_t v = 0; v < n; ++v) {
        if (t.mono[v] >= q) i = v;
      }
      Monomial rest = t.mono;
      rest[i] = static_cast<std::uint16_t>(rest[i] - q);
      for (std::size_t v = 0; v < n; ++v) {
        if (rest[v]) j = v;
      }
    }
    a(i, j) = t.coeff;
  }
  return make_form(a, e);
}

std::optional<FrobeniusForm> detect_frobenius(const MultiPoly& f) {
  if (f.is_zero() || !f.is_homogeneous()) return std::nullopt;
  std::uint64_t q = 1;
  std::uint64_t e = 0;
  while (q + 1 < f.degree()) {
    q *= f.field()->p();
    ++e;
  }
  if (q + 1 != f.degree()) return std::nullopt;
  return from_polynomial(f, e);
}

MultiPoly to_polynomial(const FrobeniusForm& form) {
  const std::size_t n = form.n();
  const auto q = static_cast<std::uint16_t>(form.q());
  std::vector<Term> ts;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (form.a(i, j).v == 0) continue;
      Monomial m{};
      m[i] = static_cast<std::uint16_t>(m[i] + q);
      m[j] = static_cast<std::uint16_t>(m[j] + 1);
      ts.push_back(Term{m, form.a(i, j)});
    }
  }
  return MultiPoly::from_terms(form.field(), n, std::move(ts));
}

FrobeniusForm act(const Matrix& g, const FrobeniusForm& form) {
  if (g.rows() != form.n() || g.cols() != form.n()) throw DomainError("coordinate change has the wrong size");
  if (!is_invertible(g)) throw DomainError("coordinate change is singular");
  return FrobeniusForm{form.e, transpose(frobenius(g, form.e)) * form.a * g};
}

ElementaryOp swap_op(std::size_t i, std::size_t j) { return ElementaryOp{ElementaryOp::Kind::Swap, i, j, Elem{0}}; }

ElementaryOp scale_op(std::size_t i, Elem lambda) { return ElementaryOp{ElementaryOp::Kind::Scale, i, i, lambda}; }

ElementaryOp shear_op(std::size_t i, std::size_t j, Elem lambda) {
  return ElementaryOp{ElementaryOp::Kind::Shear, i, j, lambda};
}

Matrix op_matrix(const ElementaryOp& op, const Field& f, std::size_t n) {
  check_index(op.i, n);
  check_index(op.j, n);
  Matrix g = Matrix::identity(f, n);
  switch (op.kind) {
    case ElementaryOp::Kind::Swap:
      g(op.i, op.i) = g(op.j, op.j) = f->zero();
      g(op.i, op.j) = g(op.j, op.i) = f->one();
      if (op.i == op.j) g(op.i, op.i) = f->one();
      break;
    case ElementaryOp::Kind::Scale:
      if (op.lambda.v == 0) throw DomainError("scaling by zero");
      g(op.i, op.i) = op.lambda;
      break;
    case ElementaryOp::Kind::Shear:
      if (op.i == op.j) throw DomainError("shear needs two distinct variables");
      g(op.i, op.j) = op.lambda;
      break;
  }
  return g;
}

void apply_op(Matrix& a, std::uint64_t e, const ElementaryOp& op) {
  const std::size_t n = a.rows();
  check_index(op.i, n);
  check_index(op.j, n);
  const FieldCtx& f = *a.field();
  switch (op.kind) {
    case ElementaryOp::Kind::Swap:
      for (std::size_t k = 0; k < n; ++k) std::swap(a(op.i, k), a(op.j, k));
      for (std::size_t k = 0; k < n; ++k) std::swap(a(k, op.i), a(k, op.j));
      break;
    case ElementaryOp::Kind::Scale: {
      if (op.lambda.v == 0) throw DomainError("scaling by zero");
      const Elem lq = f.frobenius(op.lambda, e);
      for (std::size_t k = 0; k < n; ++k) a(op.i, k) = f.mul(lq, a(op.i, k));
      for (std::size_t k = 0; k < n; ++k) a(k, op.i) = f.mul(op.lambda, a(k, op.i));
      break;
    }
    case ElementaryOp::Kind::Shear: {
      if (op.i == op.j) throw DomainError("shear needs two distinct variables");
      if (op.lambda.v == 0) break;
      for (std::size_t k = 0; k < n; ++k) a(k, op.j) = f.add(a(k, op.j), f.mul(op.lambda, a(k, op.i)));
      const Elem lq = f.frobenius(op.lambda, e);
      for (std::size_t k = 0; k < n; ++k) a(op.j, k) = f.add(a(op.j, k), f.mul(lq, a(op.i, k)));
      break;
    }
  }
}

FrobeniusForm apply_op(const FrobeniusForm& form, const ElementaryOp& op) {
  FrobeniusForm out = form;
  apply_op(out.a, out.e, op);
  return out;
}

ElementaryOp embed(const ElementaryOp& op, const Extension& ext) {
  ElementaryOp out = op;
  out.lambda = ext(op.lambda);
  return out;
}

FrobeniusForm swap_vars(const FrobeniusForm& form, std::size_t i, std::size_t j) {
  return apply_op(form, swap_op(i, j));
}

FrobeniusForm scale_var(const FrobeniusForm& form, std::size_t i, Elem lambda) {
  return apply_op(form, scale_op(i, lambda));
}

FrobeniusForm elementary_shear(const FrobeniusForm& form, std::size_t i, std::size_t j, Elem lambda) {
  if (i == j) throw DomainError("shear needs two distinct variables");
  return apply_op(form, shear_op(i, j, lambda));
}

std::size_t rank(const FrobeniusForm& form) { return rank(form.a); }

std::size_t embedding_dimension(const FrobeniusForm& form) {
  return rank(vstack(form.a, transpose(frobenius_root(form.a, form.e))));
}

std::vector<std::vector<Elem>> singular_locus(const FrobeniusForm& form) {
  return kernel(transpose(frobenius_root(form.a, form.e)));
}

bool hessian_is_zero(const MultiPoly& f) {
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    const MultiPoly di = derivative(f, i);
    for (std::size_t j = i; j < f.nvars(); ++j) {
      if (!derivative(di, j).is_zero()) return false;
    }
  }
  return true;
}

bool hessian_is_zero(const FrobeniusForm& form) { return hessian_is_zero(to_polynomial(form)); }

bool is_hermitian(const FrobeniusForm& form) {
  const FieldCtx& f = *form.field();
  for (std::size_t i = 0; i < form.n(); ++i) {
    for (std::size_t j = 0; j < form.n(); ++j) {
      if (form.a(i, j) != f.frobenius(form.a(j, i), form.e)) return false;
    }
  }
  return true;
}

FrobeniusForm embed(const FrobeniusForm& form, const Extension& ext) { return FrobeniusForm{form.e, embed(form.a, ext)}; }

}  // namespace frob

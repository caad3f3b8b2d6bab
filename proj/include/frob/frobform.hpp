#pragma once

// Frobenius forms h = (x^[q])^T A x and their twisted congruence action.

#include <cstdint>
#include <optional>
#include <vector>

#include "frob/matrix.hpp"
#include "frob/poly.hpp"

namespace frob {

struct FrobeniusForm {
  std::uint64_t e = 1;
  Matrix a;

  const Field& field() const { return a.field(); }
  std::size_t n() const { return a.rows(); }
  std::uint64_t q() const;
  bool operator==(const FrobeniusForm&) const = default;
};

FrobeniusForm make_form(const Matrix& a, std::uint64_t e);

/// The matrix of f when deg f = p^e + 1 and f lies in m^[p^e]. For e = 0 the
/// coefficient of x_i x_j (i < j) is stored in A_ij.
std::optional<FrobeniusForm> from_polynomial(const MultiPoly& f, std::uint64_t e);
/// Tries every e with p^e + 1 = deg f.
std::optional<FrobeniusForm> detect_frobenius(const MultiPoly& f);
MultiPoly to_polynomial(const FrobeniusForm& form);

/// (g^[q])^T A g, the form obtained by substituting x <- g x.
FrobeniusForm act(const Matrix& g, const FrobeniusForm& form);

struct ElementaryOp {
  enum class Kind { Swap, Scale, Shear };
  Kind kind = Kind::Swap;
  std::size_t i = 0;
  std::size_t j = 0;
  Elem lambda;  // Scale: x_i <- lambda x_i. Shear: x_i <- x_i + lambda x_j.

  bool operator==(const ElementaryOp&) const = default;
};

ElementaryOp swap_op(std::size_t i, std::size_t j);
ElementaryOp scale_op(std::size_t i, Elem lambda);
ElementaryOp shear_op(std::size_t i, std::size_t j, Elem lambda);

/// Substitution matrix of an operation.
Matrix op_matrix(const ElementaryOp& op, const Field& f, std::size_t n);
/// The same operation acting through row and column operations on A.
void apply_op(Matrix& a, std::uint64_t e, const ElementaryOp& op);
FrobeniusForm apply_op(const FrobeniusForm& form, const ElementaryOp& op);
ElementaryOp embed(const ElementaryOp& op, const Extension& ext);

FrobeniusForm swap_vars(const FrobeniusForm& form, std::size_t i, std::size_t j);
FrobeniusForm scale_var(const FrobeniusForm& form, std::size_t i, Elem lambda);
/// x_i <- x_i + lambda x_j: C_j += lambda C_i and R_j += lambda^q R_i.
FrobeniusForm elementary_shear(const FrobeniusForm& form, std::size_t i, std::size_t j, Elem lambda);

std::size_t rank(const FrobeniusForm& form);
/// dim(rowspace(A) + colspace(A^[1/q])).
std::size_t embedding_dimension(const FrobeniusForm& form);
/// Basis of ker((A^[1/q])^T).
std::vector<std::vector<Elem>> singular_locus(const FrobeniusForm& form);
bool hessian_is_zero(const MultiPoly& f);
bool hessian_is_zero(const FrobeniusForm& form);
bool is_hermitian(const FrobeniusForm& form);
FrobeniusForm embed(const FrobeniusForm& form, const Extension& ext);

}  // namespace frob

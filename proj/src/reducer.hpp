#pragma once

// Working state for the normal-form reductions: the current matrix, the accumulated
// substitution g and the operation log, all re-embedded when the field grows.

#include <vector>

#include "frob/normalize.hpp"

namespace frob::detail {

class Reducer {
 public:
  Reducer(const Matrix& a, std::uint64_t e, const NormalizeOptions& opts);

  const Field& field() const { return a_.field(); }
  const FieldCtx& f() const { return *a_.field(); }
  std::uint64_t e() const { return e_; }
  const Matrix& a() const { return a_; }
  Elem at(std::size_t i, std::size_t j) const { return a_(i, j); }
  const NormalizeOptions& options() const { return opts_; }

  void apply(const ElementaryOp& op);
  /// x_i <- x_i + lambda x_j written as "row i into row j" clearing entry (j, c).
  void clear_with_row(std::size_t src, std::size_t dst, std::size_t col);
  /// Substitution with g e_last = v, v given on the variables vars.
  void move_to_last(const std::vector<std::size_t>& vars, const std::vector<Elem>& v);

  /// Grows the working field by the given factor; false if the cap forbids it.
  bool extend(std::uint32_t factor);
  /// Smallest factors allowed by the cap, in increasing order.
  std::vector<std::uint32_t> extension_factors() const;
  /// m-th root, extending the field if needed. Invalidates previously read entries.
  Elem root_with_extension(Elem a, std::uint64_t m);

  Matrix block(const std::vector<std::size_t>& vars) const;

  SparseCertificate certificate(const Matrix& input, const Field& base) const;

 private:
  Matrix a_;
  std::uint64_t e_;
  NormalizeOptions opts_;
  Matrix g_;
  std::vector<ElementaryOp> ops_;
  std::vector<Elem> from_base_;
};

/// Full-rank block of vars brought to the identity.
void diagonalize_block(Reducer& r, const std::vector<std::size_t>& vars);
/// Full-rank block of vars brought to the reverse permutation matrix.
void reverse_block(Reducer& r, const std::vector<std::size_t>& vars);

/// Nonzero Y over the given field with F(Y) = 0, or nothing. With unit_value the value
/// (Y^[q])^T A Y must also be a (q+1)-th power, so Y can be rescaled to value 1.
std::optional<std::vector<Elem>> search_final_column(const Matrix& a, std::uint64_t e, std::uint64_t cap,
                                                    bool unit_value);

}  // namespace frob::detail

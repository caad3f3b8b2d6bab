#pragma once

// Sparse patterns, their counts and the small-n class check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frob/frobform.hpp"

namespace frob {

struct SparsePattern {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<std::size_t> columns;  // columns[i] = j_i, 0-based, strictly decreasing

  /// Every variable occurs, i.e. the embedding dimension is n.
  bool nondegenerate() const;
  /// The decreasing column list, e.g. "3,2,0".
  std::string id() const;
  bool operator==(const SparsePattern&) const = default;
};

inline constexpr std::size_t kDefaultPatternCap = 12;

std::vector<SparsePattern> enumerate_sparse(std::size_t n, std::size_t r, bool nondegenerate_only,
                                            std::size_t cap = kDefaultPatternCap);
/// F_n with F_0 = F_1 = 1.
std::uint64_t fibonacci_bound(std::size_t n);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

FrobeniusForm pattern_to_form(const SparsePattern& p, const Field& f, std::uint64_t e);
/// Pattern of a matrix satisfying is_sparse.
SparsePattern pattern_of(const Matrix& sparse);

struct ClassRow {
  SparsePattern pattern;
  std::size_t embedding_dimension = 0;
  std::size_t singular_locus_dimension = 0;
  std::string polynomial;
};

/// All nondegenerate patterns with n variables, ordered by rank.
std::vector<ClassRow> class_table(std::size_t n, const Field& f, std::uint64_t e);

/// Exhaustive search for g in GL_n with act(g, a) = b. Limited to |F|^(n^2) <= max_matrices.
std::optional<Matrix> find_equivalence(const FrobeniusForm& a, const FrobeniusForm& b,
                                       std::uint64_t max_matrices = std::uint64_t{1} << 16);

}  // namespace frob

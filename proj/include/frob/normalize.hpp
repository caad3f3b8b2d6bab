#pragma once

// Constructive normal forms for Frobenius forms: full-rank diagonalization and the
// sparse form, each with a replayable change-of-coordinates certificate.

#include <cstdint>
#include <string>
#include <vector>

#include "frob/frobform.hpp"

namespace frob {

struct NormalizeOptions {
  /// Largest total degree over F_p the working field may be extended to.
  std::uint32_t ext_cap = 8;
  /// Cap on candidate vectors examined by the final-column search.
  std::uint64_t search_cap = std::uint64_t{1} << 22;
};

struct SparseCertificate {
  Field base_field;  // field of the input matrix
  Field field;       // working field of sparse, g and ops
  std::uint64_t e = 1;
  Matrix input;
  Matrix sparse;
  Matrix g;  // (g^[q])^T input g = sparse
  std::vector<ElementaryOp> ops;
  std::vector<Elem> embedding;  // image in field of each base element, by encoding
};

/// Conditions (1)-(3) of the sparse form, checked literally.
bool is_sparse(const Matrix& a);

/// Chain of column indices i1, i2, ... starting at a zero column, 0-based: a is the n x n block with
/// row 0 = e_(n-1)^T, zero last row, a sparse middle block of rank r - 2 where
/// r = rank(a), and i1 in [r-1, n-2].
std::vector<std::size_t> block_index_sequence(const Matrix& a, std::size_t i1);

struct ReductionStep {
  Matrix a;
  std::vector<ElementaryOp> ops;
};

/// Clears column 0 down to one nonzero entry without changing any other entry.
ReductionStep step1_clear_column(const Matrix& a, std::uint64_t e);
/// Moves the single nonzero entry of column 0 to row r - 1 and makes it 1,
/// keeping the middle block sparse. Works in the field of a.
ReductionStep step2_move_to_er(const Matrix& a, std::uint64_t e);

struct FinalColumn {
  Field field;
  std::vector<Elem> y;
};

/// Nonzero Y with F_1(Y) = ... = F_n(Y) = 0 for a full-rank form, searched over the
/// field of the form and its extensions up to the cap.
FinalColumn fullrank_final_column(const FrobeniusForm& form, const NormalizeOptions& opts = {});

/// Certificate with sparse = reverse permutation matrix.
SparseCertificate diagonalize_full_rank(const FrobeniusForm& form, const NormalizeOptions& opts = {});
SparseCertificate sparsify(const FrobeniusForm& form, const NormalizeOptions& opts = {});

struct ReplayReport {
  bool ok = false;
  std::string detail;
};

/// Replays ops on the embedded input and checks g, sparse and the twisted congruence.
ReplayReport verify_certificate(const SparseCertificate& cert);

}  // namespace frob

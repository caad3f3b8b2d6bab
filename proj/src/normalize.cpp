#include "frob/normalize.hpp"

#include <algorithm>
#include <numeric>

#include "frob/error.hpp"
#include "reducer.hpp"

namespace frob {

namespace {

// Conditions (1) and (3): unit rows with strictly decreasing positions, then zero rows.
bool sparse_rows(const Matrix& a) {
  const std::size_t n = a.rows();
  const std::size_t r = rank(a);
  std::size_t prev = n;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t count = 0;
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).v == 0) continue;
      ++count;
      col = j;
      if (a(i, j) != a.field()->one()) return false;
    }
    if (i >= r) {
      if (count != 0) return false;
      continue;
    }
    if (count != 1 || col >= prev) return false;
    prev = col;
  }
  return true;
}

}  // namespace

bool is_sparse(const Matrix& a) {
  if (a.rows() != a.cols() || !sparse_rows(a)) return false;
  const std::size_t n = a.rows();
  const std::size_t emb = rank(vstack(a, transpose(a)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = emb; j < n; ++j) {
      if (a(i, j).v != 0) return false;
    }
  }
  return true;
}

std::vector<std::size_t> block_index_sequence(const Matrix& a, std::size_t i1) {
  const std::size_t n = a.rows();
  const std::size_t r = rank(a);
  if (r < 2 || i1 + 1 < r || i1 + 2 > n) throw DomainError("sequence start outside [r-1, n-2]");
  std::vector<std::size_t> seq{i1};
  for (std::size_t cur = i1;;) {
    std::vector<std::size_t> rows;
    for (std::size_t t = 0; t < n; ++t) {
      if (a(t, cur).v != 0) rows.push_back(t);
    }
    if (rows.empty()) return seq;
    if (rows.size() > 1) throw MalformedInput("column " + std::to_string(cur) + " has several nonzero entries");
    const std::size_t next = rows.front();
    if (next < 1 || next + 2 > r || std::find(seq.begin(), seq.end(), next) != seq.end()) {
      throw MalformedInput("sequence leaves the block shape at column " + std::to_string(cur));
    }
    seq.push_back(next);
    cur = next;
  }
}

namespace {

using detail::Reducer;
using Vars = std::vector<std::size_t>;

Vars iota_vars(std::size_t n) {
  Vars v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

std::vector<std::size_t> column0_rows(const Reducer& rd, const Vars& vars) {
  std::vector<std::size_t> rows;
  for (std::size_t t = 1; t + 1 < vars.size(); ++t) {
    if (rd.at(vars[t], vars[0]).v != 0) rows.push_back(t);
  }
  return rows;
}

bool in_block_shape(const Matrix& b) {
  const std::size_t n = b.rows();
  if (n < 2) return false;
  for (std::size_t j = 0; j < n; ++j) {
    if (b(0, j) != (j + 1 == n ? b.field()->one() : b.field()->zero())) return false;
    if (b(n - 1, j).v != 0) return false;
    if (j > 0 && b(j, n - 1).v != 0) return false;
  }
  return true;
}

// Clears row 0 against the unit column n - 1.
void repair_row0(Reducer& rd, const Vars& vars) {
  const std::size_t last = vars.back();
  for (std::size_t u = 0; u + 1 < vars.size(); ++u) {
    const Elem x = rd.at(vars[0], vars[u]);
    if (x.v != 0) rd.apply(shear_op(last, vars[u], rd.f().neg(x)));
  }
}

void step1(Reducer& rd, const Vars& vars) {
  for (;;) {
    const auto rows = column0_rows(rd, vars);
    if (rows.size() <= 1) return;
    const Matrix before = rd.block(vars);
    auto si = block_index_sequence(before, rows[0]);
    auto sj = block_index_sequence(before, rows[1]);
    if (si.size() > sj.size()) std::swap(si, sj);
    const std::size_t m = si.size();
    const auto& p = m % 2 == 1 ? si : sj;
    const auto& q = m % 2 == 1 ? sj : si;
    std::size_t clear = 0;
    std::size_t first_target = 0;
    for (std::size_t t = 1; t <= m; ++t) {
      const std::size_t src = t % 2 == 1 ? p[t - 1] : q[t - 1];
      const std::size_t dst = t % 2 == 1 ? q[t - 1] : p[t - 1];
      rd.clear_with_row(vars[src], vars[dst], vars[clear]);
      if (t == 1) first_target = dst;
      clear = dst;
    }
    const Matrix after = rd.block(vars);
    for (std::size_t x = 0; x < vars.size(); ++x) {
      for (std::size_t y = 0; y < vars.size(); ++y) {
        const bool target = x == first_target && y == 0;
        if (target ? after(x, y).v != 0 : after(x, y) != before(x, y)) {
          throw InvariantViolation("column clearing changed an entry outside column 0");
        }
      }
    }
  }
}

Vars middle(const Vars& vars) { return Vars(vars.begin() + 1, vars.end() - 1); }

void step2(Reducer& rd, const Vars& vars) {
  const std::size_t r = rank(rd.block(vars));
  auto rows = column0_rows(rd, vars);
  if (rows.size() != 1) throw InvariantViolation("column 0 must have exactly one entry before moving it");
  std::size_t j = rows.front();
  const std::size_t first = vars.front();
  const std::size_t last = vars.back();
  const Elem mu = rd.f().inv(rd.at(vars[j], first));
  if (mu != rd.f().one()) {
    rd.apply(scale_op(first, mu));
    rd.apply(scale_op(last, rd.f().inv(rd.at(first, last))));
  }
  while (j + 1 > r) {
    const Matrix blk = rd.block(vars);
    const auto si = block_index_sequence(blk, j - 1);
    const auto sj = block_index_sequence(blk, j);
    for (std::size_t l = 0; l < std::min(si.size(), sj.size()); ++l) rd.apply(swap_op(vars[si[l]], vars[sj[l]]));
    rows = column0_rows(rd, vars);
    if (rows.size() != 1 || rows.front() + 1 != j || !sparse_rows(rd.block(middle(vars)))) {
      throw InvariantViolation("swap chain broke the block shape");
    }
    j = rows.front();
  }
}

void zero_dependent_rows(Reducer& rd, const Vars& vars, std::size_t r) {
  const std::size_t n = vars.size();
  const Matrix blk = rd.block(vars);
  std::vector<std::size_t> chosen;
  Matrix acc(rd.field(), 0, n);
  for (std::size_t t = 0; t < n && chosen.size() < r; ++t) {
    Matrix row(rd.field(), 1, n);
    for (std::size_t u = 0; u < n; ++u) row(0, u) = blk(t, u);
    Matrix next = vstack(acc, row);
    if (rank(next) > chosen.size()) {
      chosen.push_back(t);
      acc = next;
    }
  }
  for (std::size_t pos = 0; pos < r; ++pos) {
    if (chosen[pos] != pos) rd.apply(swap_op(vars[pos], vars[chosen[pos]]));
  }
  for (std::size_t t = r; t < n; ++t) {
    const Matrix cur = rd.block(vars);
    Matrix rel(rd.field(), n, r + 1);
    bool zero = true;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t i = 0; i < r; ++i) rel(u, i) = cur(i, u);
      rel(u, r) = cur(t, u);
      zero = zero && cur(t, u).v == 0;
    }
    if (zero) continue;
    const auto ker = kernel(rel);
    if (ker.size() != 1 || ker[0][r].v == 0) throw InvariantViolation("row is not in the span of the pivot rows");
    for (std::size_t i = 0; i < r; ++i) {
      // R_t - c_i R_i with c_i = -v_i / v_r.
      const Elem minus_c = rd.f().div(ker[0][i], ker[0][r]);
      if (minus_c.v != 0) rd.apply(shear_op(vars[i], vars[t], rd.f().frobenius_root(minus_c, rd.e())));
    }
    for (std::size_t u = 0; u < n; ++u) {
      if (rd.at(vars[t], vars[u]).v != 0) throw InvariantViolation("dependent row did not vanish");
    }
  }
}

void sparsify_block(Reducer& rd, const Vars& vars) {
  const std::size_t n = vars.size();
  if (n == 0) return;
  const Matrix blk = rd.block(vars);
  if (blk.is_zero()) return;
  const Matrix stacked = vstack(blk, transpose(frobenius_root(blk, rd.e())));
  if (rank(stacked) < n) {
    const auto ker = kernel(stacked);
    rd.move_to_last(vars, ker.back());
    for (std::size_t t = 0; t < n; ++t) {
      if (rd.at(vars.back(), vars[t]).v != 0 || rd.at(vars[t], vars.back()).v != 0) {
        throw InvariantViolation("redundant variable did not separate");
      }
    }
    sparsify_block(rd, Vars(vars.begin(), vars.end() - 1));
    return;
  }
  const std::size_t r = rank(blk);
  if (r == n) {
    detail::reverse_block(rd, vars);
    return;
  }
  zero_dependent_rows(rd, vars, r);
  const std::size_t first = vars.front();
  const std::size_t last = vars.back();
  std::size_t piv = 0;
  while (piv < n && rd.at(vars[piv], last).v == 0) ++piv;
  if (piv >= r) throw InvariantViolation("last column has no pivot among the nonzero rows");
  if (piv != 0) rd.apply(swap_op(first, vars[piv]));
  if (rd.at(first, last) != rd.f().one()) rd.apply(scale_op(last, rd.f().inv(rd.at(first, last))));
  for (std::size_t t = 1; t + 1 < n; ++t) {
    if (rd.at(vars[t], last).v != 0) rd.clear_with_row(first, vars[t], last);
  }
  repair_row0(rd, vars);
  if (!in_block_shape(rd.block(vars))) throw InvariantViolation("block shape not reached");

  const Vars mid = middle(vars);
  sparsify_block(rd, mid);
  const std::size_t rb = rank(rd.block(mid));
  for (std::size_t t = 1; t + 1 < n; ++t) {
    const Elem x = rd.at(vars[t], first);
    if (x.v == 0) continue;
    for (std::size_t u = 1; u + 1 < n; ++u) {
      const Elem y = rd.at(vars[t], vars[u]);
      if (y.v == 0) continue;
      rd.apply(shear_op(vars[u], first, rd.f().neg(rd.f().div(x, y))));
      break;
    }
  }
  repair_row0(rd, vars);
  if (rb + 1 == r) {
    if (!column0_rows(rd, vars).empty()) throw InvariantViolation("column 0 not cleared");
  } else if (rb + 2 == r) {
    step1(rd, vars);
    step2(rd, vars);
  } else {
    throw InvariantViolation("middle block has unexpected rank");
  }
  if (!is_sparse(rd.block(vars))) throw InvariantViolation("block is not sparse after reduction");
}

ReductionStep finish(const Reducer& rd) {
  auto cert = rd.certificate(Matrix(), rd.field());
  return ReductionStep{rd.a(), std::move(cert.ops)};
}

}  // namespace

ReductionStep step1_clear_column(const Matrix& a, std::uint64_t e) {
  if (!in_block_shape(a)) throw DomainError("matrix is not in block shape");
  Reducer rd(a, e, {});
  step1(rd, iota_vars(a.rows()));
  return finish(rd);
}

ReductionStep step2_move_to_er(const Matrix& a, std::uint64_t e) {
  if (!in_block_shape(a)) throw DomainError("matrix is not in block shape");
  Reducer rd(a, e, {});
  step2(rd, iota_vars(a.rows()));
  return finish(rd);
}

SparseCertificate sparsify(const FrobeniusForm& form, const NormalizeOptions& opts) {
  if (form.e == 0) throw DomainError("sparse form needs e >= 1");
  Reducer rd(form.a, form.e, opts);
  sparsify_block(rd, iota_vars(form.n()));
  if (!is_sparse(rd.a())) throw InvariantViolation("result is not sparse");
  return rd.certificate(form.a, form.field());
}

ReplayReport verify_certificate(const SparseCertificate& cert) {
  const std::size_t n = cert.input.rows();
  if (cert.embedding.size() != cert.base_field->order()) return {false, "embedding table has the wrong size"};
  Matrix a(cert.field, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = cert.embedding[cert.input(i, j).v];
  }
  const Matrix start = a;
  Matrix g = Matrix::identity(cert.field, n);
  for (const auto& op : cert.ops) {
    if (op.i >= n || op.j >= n) return {false, "operation index out of range"};
    apply_op(a, cert.e, op);
    g = g * op_matrix(op, cert.field, n);
  }
  if (a != cert.sparse) return {false, "replayed operations do not reach the stated matrix"};
  if (g != cert.g) return {false, "replayed operations do not reproduce g"};
  if (!is_invertible(g)) return {false, "g is singular"};
  if (transpose(frobenius(g, cert.e)) * start * g != cert.sparse) return {false, "twisted congruence fails"};
  return {true, "ok"};
}

}  // namespace frob

#include "frob/classify.hpp"

#include <algorithm>

#include "frob/error.hpp"
#include "frob/normalize.hpp"

namespace frob {

bool SparsePattern::nondegenerate() const {
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < r; ++i) seen[i] = true;
  for (auto j : columns) seen[j] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::string SparsePattern::id() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(columns[i]);
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::uint64_t fibonacci_bound(std::size_t n) {
  if (n == 0) throw DomainError("fibonacci_bound needs n >= 1");
  if (n > 90) throw CapacityError("Fibonacci number exceeds 64 bits");
  std::uint64_t a = 1;
  std::uint64_t b = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return b;
}

namespace {

// Strictly decreasing k-subsets of [0, m), in lexicographic order of the sequences.
void decreasing_subsets(std::size_t m, std::size_t k, std::vector<std::size_t>& cur,
                        std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  const std::size_t top = cur.empty() ? m : cur.back();
  for (std::size_t j = top; j-- > 0;) {
    if (j + 1 < k - cur.size()) break;
    cur.push_back(j);
    decreasing_subsets(m, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<SparsePattern> enumerate_sparse(std::size_t n, std::size_t r, bool nondegenerate_only, std::size_t cap) {
  if (n > cap) throw CapacityError("pattern enumeration is capped at n = " + std::to_string(cap));
  if (r < 1 || r > n) throw DomainError("enumeration needs 1 <= r <= n");
  std::vector<SparsePattern> out;
  if (nondegenerate_only) {
    if (2 * r < n) return out;
    std::vector<std::size_t> forced;
    for (std::size_t j = n; j-- > r;) forced.push_back(j);
    std::vector<std::size_t> cur;
    std::vector<std::vector<std::size_t>> rest;
    decreasing_subsets(r, 2 * r - n, cur, rest);
    for (const auto& tail : rest) {
      SparsePattern p{n, r, forced};
      p.columns.insert(p.columns.end(), tail.begin(), tail.end());
      out.push_back(std::move(p));
    }
    return out;
  }
  std::vector<std::size_t> cur;
  std::vector<std::vector<std::size_t>> all;
  decreasing_subsets(n, r, cur, all);
  const Field f2 = FieldCtx::make(2, 1);
  for (auto& cols : all) {
    SparsePattern p{n, r, std::move(cols)};
    if (is_sparse(pattern_to_form(p, f2, 1).a)) out.push_back(std::move(p));
  }
  return out;
}

FrobeniusForm pattern_to_form(const SparsePattern& p, const Field& f, std::uint64_t e) {
  if (p.columns.size() != p.r || p.r > p.n) throw DomainError("pattern has the wrong number of positions");
  Matrix a(f, p.n, p.n);
  for (std::size_t i = 0; i < p.r; ++i) {
    if (p.columns[i] >= p.n || (i > 0 && p.columns[i] >= p.columns[i - 1])) {
      throw DomainError("pattern columns must be strictly decreasing and below n");
    }
    a(i, p.columns[i]) = f->one();
  }
  return make_form(a, e);
}

SparsePattern pattern_of(const Matrix& sparse) {
  if (!is_sparse(sparse)) throw DomainError("matrix is not in sparse form");
  SparsePattern p{sparse.rows(), rank(sparse), {}};
  for (std::size_t i = 0; i < p.r; ++i) {
    for (std::size_t j = 0; j < p.n; ++j) {
      if (sparse(i, j).v != 0) p.columns.push_back(j);
    }
  }
  return p;
}

std::vector<ClassRow> class_table(std::size_t n, const Field& f, std::uint64_t e) {
  std::vector<ClassRow> out;
  for (std::size_t r = 1; r <= n; ++r) {
    for (auto& p : enumerate_sparse(n, r, true)) {
      const auto form = pattern_to_form(p, f, e);
      out.push_back(ClassRow{p, embedding_dimension(form), singular_locus(form).size(),
                             to_string(to_polynomial(form))});
    }
  }
  return out;
}

std::optional<Matrix> find_equivalence(const FrobeniusForm& a, const FrobeniusForm& b, std::uint64_t max_matrices) {
  if (a.n() != b.n() || a.e != b.e || !same_field(a.field(), b.field())) {
    throw DomainError("forms must share size, field and e");
  }
  const std::size_t n = a.n();
  const std::uint64_t order = a.field()->order();
  std::uint64_t total = 1;
  for (std::size_t t = 0; t < n * n; ++t) {
    if (total > max_matrices / order) throw CapacityError("orbit search space too large");
    total *= order;
  }
  if (rank(a) != rank(b) || embedding_dimension(a) != embedding_dimension(b)) return std::nullopt;
  Matrix g(a.field(), n, n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t t = 0; t < n * n; ++t) {
      g(t / n, t % n) = a.field()->element(c % order);
      c /= order;
    }
    if (!is_invertible(g)) continue;
    if (transpose(frobenius(g, a.e)) * a.a * g == b.a) return g;
  }
  return std::nullopt;
}

}  // namespace frob

#include "d21/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "d21/error.hpp"

namespace d21 {
namespace {

void normalize(const PrimeField& F, DenseVector& v, std::size_t pivot) {
  const Residue s = F.inv(v[pivot]);
  for (auto& x : v) x = F.mul(x, s);
}

// dst -= c * src
void sub_scaled(const PrimeField& F, DenseVector& dst, Residue c, const DenseVector& src) {
  if (c == 0) return;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (src[i] != 0) dst[i] = F.sub(dst[i], F.mul(c, src[i]));
  }
}

// Fully reduced echelon form of the given rows.
std::vector<DenseVector> dense_rref(const PrimeField& F, std::size_t cols,
                                    std::vector<DenseVector> rows,
                                    std::vector<std::size_t>* pivots_out) {
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    normalize(F, rows[r], c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i][c] != 0) sub_scaled(F, rows[i], rows[i][c], rows[r]);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  if (pivots_out) *pivots_out = std::move(pivots);
  return rows;
}

std::vector<DenseVector> to_dense(const SparseMatrix& M) {
  std::vector<DenseVector> out;
  out.reserve(M.rows());
  for (std::size_t r = 0; r < M.rows(); ++r) {
    if (M.row(r).empty()) continue;
    DenseVector v(M.cols(), 0);
    for (const auto& [c, x] : M.row(r)) v[c] = x;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

SparseMatrix::SparseMatrix(PrimeField F, std::size_t rows, std::size_t cols)
    : field_(F), cols_(cols), rows_(rows) {}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

void SparseMatrix::add(std::size_t r, std::size_t c, Residue v) {
  if (c >= cols_) throw ParameterError("column index out of range");
  v %= field_.modulus();
  if (v == 0) return;
  if (r >= rows_.size()) rows_.resize(r + 1);
  auto& row = rows_[r];
  const auto key = static_cast<std::uint32_t>(c);
  auto it = std::lower_bound(row.begin(), row.end(), key,
                             [](const auto& e, std::uint32_t k) { return e.first < k; });
  if (it != row.end() && it->first == key) {
    it->second = field_.add(it->second, v);
    if (it->second == 0) row.erase(it);
  } else {
    row.insert(it, {key, v});
  }
}

std::size_t SparseMatrix::append_row(SparseRow row) {
  std::sort(row.begin(), row.end());
  SparseRow clean;
  for (const auto& [c, v] : row) {
    if (c >= cols_) throw ParameterError("column index out of range");
    const Residue x = v % field_.modulus();
    if (!clean.empty() && clean.back().first == c) {
      clean.back().second = field_.add(clean.back().second, x);
      if (clean.back().second == 0) clean.pop_back();
    } else if (x != 0) {
      clean.push_back({c, x});
    }
  }
  rows_.push_back(std::move(clean));
  return rows_.size() - 1;
}

Residue SparseMatrix::at(std::size_t r, std::size_t c) const {
  const auto& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(c),
                             [](const auto& e, std::uint32_t k) { return e.first < k; });
  return (it != row.end() && it->first == c) ? it->second : 0;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix T(field_, cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [c, v] : rows_[r]) T.rows_[c].push_back({static_cast<std::uint32_t>(r), v});
  }
  return T;
}

SparseMatrix SparseMatrix::permute_rows(std::span<const std::size_t> perm) const {
  SparseMatrix out(field_, 0, cols_);
  for (auto r : perm) out.rows_.push_back(rows_.at(r));
  return out;
}

SparseMatrix SparseMatrix::permute_cols(std::span<const std::size_t> perm) const {
  SparseMatrix out(field_, 0, cols_);
  for (const auto& row : rows_) {
    SparseRow moved;
    moved.reserve(row.size());
    for (const auto& [c, v] : row) moved.push_back({static_cast<std::uint32_t>(perm[c]), v});
    std::sort(moved.begin(), moved.end());
    out.rows_.push_back(std::move(moved));
  }
  return out;
}

// ---------------------------------------------------------------------------

Subspace::Subspace(PrimeField F, std::size_t ambient_dim) : field_(F), ambient_(ambient_dim) {}

Subspace Subspace::span(PrimeField F, std::size_t ambient_dim,
                        const std::vector<DenseVector>& vectors) {
  Subspace S(F, ambient_dim);
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) throw ParameterError("vector length does not match ambient");
  }
  S.basis_ = dense_rref(F, ambient_dim, vectors, &S.pivots_);
  return S;
}

DenseVector Subspace::reduce(std::span<const Residue> v) const {
  DenseVector out(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    sub_scaled(field_, out, out[pivots_[i]], basis_[i]);
  }
  return out;
}

bool Subspace::contains(std::span<const Residue> v) const {
  const DenseVector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Residue x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [&](const DenseVector& v) { return contains(v); });
}

bool Subspace::insert(std::span<const Residue> v) {
  if (contains(v)) return false;
  std::vector<DenseVector> rows = basis_;
  rows.emplace_back(v.begin(), v.end());
  basis_ = dense_rref(field_, ambient_, std::move(rows), &pivots_);
  return true;
}

// ---------------------------------------------------------------------------

std::size_t sparse_rank(const PrimeField& F, std::size_t cols, std::vector<SparseRow> rows) {
  // shortest rows first; pivot on the leading entry of each reduced row
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SparseRow& a, const SparseRow& b) { return a.size() < b.size(); });
  std::vector<std::int64_t> pivot_of(cols, -1);
  std::vector<SparseRow> pivots;
  SparseRow scratch;
  std::size_t rank = 0;
  for (auto& row : rows) {
    std::size_t pos = 0;
    while (pos < row.size()) {
      const auto [c, v] = row[pos];
      const std::int64_t pr = pivot_of[c];
      if (pr < 0) {
        ++pos;
        continue;
      }
      // row -= v * pivots[pr]; the pivot row starts at column c with coefficient 1
      const SparseRow& prow = pivots[static_cast<std::size_t>(pr)];
      scratch.clear();
      std::size_t a = 0, b = 0;
      const Residue mult = F.neg(v);
      while (a < row.size() || b < prow.size()) {
        if (b == prow.size() || (a < row.size() && row[a].first < prow[b].first)) {
          scratch.push_back(row[a++]);
        } else if (a == row.size() || prow[b].first < row[a].first) {
          scratch.push_back({prow[b].first, F.mul(mult, prow[b].second)});
          ++b;
        } else {
          const Residue s = F.add(row[a].second, F.mul(mult, prow[b].second));
          if (s != 0) scratch.push_back({row[a].first, s});
          ++a;
          ++b;
        }
      }
      row.swap(scratch);
      // entries before pos had no pivot and are untouched
    }
    if (row.empty()) continue;
    const Residue s = F.inv(row.front().second);
    for (auto& e : row) e.second = F.mul(e.second, s);
    pivot_of[row.front().first] = static_cast<std::int64_t>(pivots.size());
    pivots.push_back(std::move(row));
    ++rank;
  }
  return rank;
}

std::size_t rank(const SparseMatrix& M) {
  if (M.cols() <= kDenseColumnLimit) {
    std::vector<std::size_t> piv;
    return dense_rref(M.field(), M.cols(), to_dense(M), &piv).size();
  }
  std::vector<SparseRow> rows;
  rows.reserve(M.rows());
  for (std::size_t r = 0; r < M.rows(); ++r) {
    if (!M.row(r).empty()) rows.push_back(M.row(r));
  }
  return sparse_rank(M.field(), M.cols(), std::move(rows));
}

Subspace kernel_basis(const SparseMatrix& M) {
  const PrimeField& F = M.field();
  const std::size_t n = M.cols();
  std::vector<std::size_t> pivots;
  const auto R = dense_rref(F, n, to_dense(M), &pivots);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<DenseVector> vectors;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    DenseVector v(n, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < R.size(); ++i) v[pivots[i]] = F.neg(R[i][f]);
    vectors.push_back(std::move(v));
  }
  return Subspace::span(F, n, vectors);
}

std::size_t quotient_dim(const Subspace& U, const Subspace& W) {
  if (U.ambient_dim() != W.ambient_dim()) throw ParameterError("ambient dimensions differ");
  if (!U.contains(W)) throw ConsistencyError("quotient of a space by a non-subspace");
  return U.dim() - W.dim();
}

Subspace canonical_complement(const Subspace& U, const Subspace& W) {
  if (!U.contains(W)) throw ConsistencyError("complement of a non-subspace");
  std::vector<DenseVector> reduced;
  for (const auto& u : U.basis()) reduced.push_back(W.reduce(u));
  return Subspace::span(U.field(), U.ambient_dim(), reduced);
}

}  // namespace d21

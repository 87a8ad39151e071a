#ifndef D21_LINALG_HPP
#define D21_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "d21/field.hpp"

namespace d21 {

/// Sorted (column, nonzero value) pairs.
using SparseRow = std::vector<std::pair<std::uint32_t, Residue>>;
using DenseVector = std::vector<Residue>;

/// Row-major sparse matrix over F_p with no stored zeros or duplicates.
class SparseMatrix {
 public:
  SparseMatrix(PrimeField F, std::size_t rows, std::size_t cols);

  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;

  /// Accumulates v into (r, c); rows grow on demand.
  void add(std::size_t r, std::size_t c, Residue v);
  std::size_t append_row(SparseRow row);
  const SparseRow& row(std::size_t r) const { return rows_[r]; }
  Residue at(std::size_t r, std::size_t c) const;

  SparseMatrix transpose() const;
  /// Rows reordered so that new row i is old row perm[i].
  SparseMatrix permute_rows(std::span<const std::size_t> perm) const;
  /// Columns relabelled so that old column c becomes perm[c].
  SparseMatrix permute_cols(std::span<const std::size_t> perm) const;

 private:
  PrimeField field_;
  std::size_t cols_;
  std::vector<SparseRow> rows_;
};

/// A subspace of F_p^n stored as its reduced row-echelon basis.
///
/// Two subspaces are equal exactly when their bases are equal.
class Subspace {
 public:
  Subspace(PrimeField F, std::size_t ambient_dim);
  static Subspace span(PrimeField F, std::size_t ambient_dim,
                       const std::vector<DenseVector>& vectors);

  const PrimeField& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<DenseVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v minus its projection along the pivot columns.
  DenseVector reduce(std::span<const Residue> v) const;
  bool contains(std::span<const Residue> v) const;
  bool contains(const Subspace& other) const;

  /// Adds v to the span; returns false if it was already inside.
  bool insert(std::span<const Residue> v);

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  PrimeField field_;
  std::size_t ambient_;
  std::vector<DenseVector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Below this many columns elimination runs densely.
inline constexpr std::size_t kDenseColumnLimit = 512;

std::size_t rank(const SparseMatrix& M);
/// Canonical basis of {x : M x = 0}.
Subspace kernel_basis(const SparseMatrix& M);
/// dim U - dim W; throws ConsistencyError unless W is inside U.
std::size_t quotient_dim(const Subspace& U, const Subspace& W);
/// {u in U : u vanishes on the pivot columns of W}; a canonical complement of W in U.
Subspace canonical_complement(const Subspace& U, const Subspace& W);

/// Sparse elimination of a list of rows (any order); returns the rank.
std::size_t sparse_rank(const PrimeField& F, std::size_t cols, std::vector<SparseRow> rows);

}  // namespace d21

#endif  // D21_LINALG_HPP

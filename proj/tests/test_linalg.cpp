#include <algorithm>
#include <numeric>
#include <random>

#include "d21/error.hpp"
#include "d21/linalg.hpp"
#include "doctest.h"

using namespace d21;

namespace {
SparseMatrix dense(const PrimeField& F, std::vector<std::vector<std::int64_t>> rows) {
  SparseMatrix M(F, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) M.add(r, c, F.reduce(rows[r][c]));
  }
  return M;
}

SparseMatrix random_matrix(const PrimeField& F, std::size_t rows, std::size_t cols, double density,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<Residue> val(1, F.modulus() - 1);
  SparseMatrix M(F, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (u(rng) < density) M.add(r, c, val(rng));
    }
  }
  return M;
}

bool in_kernel(const SparseMatrix& M, const DenseVector& v) {
  const auto& F = M.field();
  for (std::size_t r = 0; r < M.rows(); ++r) {
    Residue acc = 0;
    for (const auto& [c, x] : M.row(r)) acc = F.add(acc, F.mul(x, v[c]));
    if (acc != 0) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("small kernels") {
  const PrimeField F(5);
  CHECK(kernel_basis(SparseMatrix(F, 3, 3)).dim() == 3);
  CHECK(kernel_basis(dense(F, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).dim() == 0);
  const auto K = kernel_basis(dense(F, {{1, 2}, {2, 4}}));
  REQUIRE(K.dim() == 1);
  CHECK(K.contains(DenseVector{3, 1}));
}

TEST_CASE("rank basics") {
  const PrimeField F(7);
  CHECK(rank(SparseMatrix(F, 4, 4)) == 0);
  CHECK(rank(dense(F, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
  CHECK(rank(dense(F, {{1, 2, 3}, {2, 4, 6}, {0, 0, 1}})) == 2);
}

TEST_CASE("rank of transpose and under permutation") {
  const PrimeField F(5);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto M = random_matrix(F, 40 + seed * 3, 35, 0.08, seed);
    const auto r = rank(M);
    CHECK(r == rank(M.transpose()));
    std::vector<std::size_t> rp(M.rows()), cp(M.cols());
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    CHECK(rank(M.permute_rows(rp).permute_cols(cp)) == r);
    const auto K = kernel_basis(M);
    CHECK(K.dim() == M.cols() - r);
    for (const auto& v : K.basis()) CHECK(in_kernel(M, v));
  }
}

TEST_CASE("sparse elimination agrees with dense") {
  const PrimeField F(7);
  const auto M = random_matrix(F, 700, 600, 0.01, 42);
  std::vector<SparseRow> rows;
  for (std::size_t r = 0; r < M.rows(); ++r) rows.push_back(M.row(r));
  const auto sparse = sparse_rank(F, M.cols(), rows);
  CHECK(sparse == rank(M));
  CHECK(sparse == rank(M.transpose()));
}

TEST_CASE("subspaces, quotients and complements") {
  const PrimeField F(5);
  const auto U = Subspace::span(F, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto W = Subspace::span(F, 3, {{1, 2, 3}});
  CHECK(quotient_dim(U, W) == 2);
  CHECK(quotient_dim(U, U) == 0);
  CHECK_THROWS_AS(quotient_dim(W, U), ConsistencyError);
  const auto C = canonical_complement(U, W);
  CHECK(C.dim() == 2);
  for (const auto& v : C.basis()) CHECK(v[W.pivots()[0]] == 0);
  auto S = W;
  CHECK_FALSE(S.insert(DenseVector{2, 4, 1}));
  CHECK(S.insert(DenseVector{0, 1, 0}));
  CHECK(S.dim() == 2);
  CHECK_THROWS_AS(Subspace::span(F, 3, {{1, 2}}), ParameterError);
}

TEST_CASE("sparse matrix bookkeeping") {
  const PrimeField F(5);
  SparseMatrix M(F, 2, 3);
  M.add(0, 1, 3);
  M.add(0, 1, 2);
  M.add(1, 2, 4);
  CHECK(M.at(0, 1) == 0);
  CHECK(M.nnz() == 1);
  CHECK(M.transpose().at(2, 1) == 4);
}

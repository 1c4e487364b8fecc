/**
 * @file linalg.hpp
 * @brief Sparse exact linear algebra over Q: rank, kernels, and incremental
 * span membership.
 *
 * Elimination is fraction-free: vectors are scaled to primitive integer
 * vectors and combined as a·v − b·w, then divided by their content, so no
 * rational arithmetic happens inside the inner loop.
 */
#ifndef EXPHODGE_LINALG_HPP
#define EXPHODGE_LINALG_HPP

#include "exphodge/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

namespace exphodge {

/// (index, value) pairs sorted by index, no explicit zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

/// Column-major sparse rational matrix.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  /// Adds `value` to entry (row, col).
  void add(std::size_t row, std::size_t col, const Rational& value);
  void set_column(std::size_t col, SparseVector column);

  const SparseVector& column(std::size_t col) const { return columns_.at(col); }
  const std::vector<SparseVector>& columns() const noexcept { return columns_; }
  Rational entry(std::size_t row, std::size_t col) const;

  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  /// this * rhs.
  SparseMatrix multiply(const SparseMatrix& rhs) const;

  /// Plain-text dump: header "rows cols", then one "row col num/den" line per
  /// nonzero, column-major.
  void write_triplets(std::ostream& out) const;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector> columns_;
};

/**
 * Incrementally maintained echelon basis of a subspace of Q^N.
 *
 * Each stored vector has a distinct leading (smallest) index. Insertion
 * reduces the candidate against the stored vectors; a candidate reducing to
 * zero lies in the span.
 */
class EchelonSpace {
 public:
  /// Inserts v; returns false (and leaves the space unchanged) if v is already
  /// in the span.
  bool insert(const SparseVector& v);
  bool contains(const SparseVector& v) const;
  std::size_t dimension() const noexcept { return pivots_.size(); }

 private:
  using IntVector = std::vector<std::pair<std::size_t, Integer>>;
  IntVector reduce(IntVector v) const;
  std::map<std::size_t, IntVector> pivots_;
};

struct RankOptions {
  /// Rank modulo random primes, then certify exactly (see exact_rank()).
  bool multimodular = false;
  std::uint64_t seed = 0x5eed;
  int primes = 3;
};

/**
 * Rank over Q.
 *
 * Default path: fraction-free elimination column by column. Multimodular
 * path: take the largest rank r over a few primes p in [2^30, 2^31), then
 * certify it exactly: the r pivot columns found mod p are independent over Q
 * (checked) and every other column lies in their Q-span (checked). A failed
 * certification falls back to the exact path.
 */
std::size_t exact_rank(const SparseMatrix& m, const RankOptions& options = {});

/// Basis of the right kernel {v : m·v = 0}, as vectors indexed by column.
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);

/// Dimension of span(vectors).
std::size_t span_dimension(const std::vector<SparseVector>& vectors);

/// Rank of a small dense integer matrix (rows of equal length).
std::size_t integer_rank(std::vector<std::vector<Integer>> rows);

/// Determinant of a square integer matrix (Bareiss).
Integer integer_determinant(std::vector<std::vector<Integer>> m);

}  // namespace exphodge

#endif  // EXPHODGE_LINALG_HPP

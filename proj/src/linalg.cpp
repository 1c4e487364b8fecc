#include "exphodge/linalg.hpp"

#include "exphodge/laurent.hpp"
#include "exphodge/modular.hpp"

#include <algorithm>
#include <ostream>

namespace exphodge {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

void SparseMatrix::add(std::size_t row, std::size_t col, const Rational& value) {
  if (row >= rows_ || col >= columns_.size()) throw std::out_of_range("matrix index out of range");
  if (value == 0) return;
  auto& column = columns_[col];
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const auto& entry, std::size_t r) { return entry.first < r; });
  if (it != column.end() && it->first == row) {
    it->second += value;
    if (it->second == 0) column.erase(it);
  } else {
    column.insert(it, {row, value});
  }
}

void SparseMatrix::set_column(std::size_t col, SparseVector column) {
  if (col >= columns_.size()) throw std::out_of_range("matrix column out of range");
  std::sort(column.begin(), column.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::erase_if(column, [](const auto& e) { return e.second == 0; });
  for (const auto& [r, v] : column)
    if (r >= rows_) throw std::out_of_range("matrix row out of range");
  columns_[col] = std::move(column);
}

Rational SparseMatrix::entry(std::size_t row, std::size_t col) const {
  for (const auto& [r, v] : columns_.at(col))
    if (r == row) return v;
  return 0;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t total = 0;
  for (const auto& c : columns_) total += c.size();
  return total;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
  if (cols() != rhs.rows()) throw std::invalid_argument("matrix shapes do not compose");
  SparseMatrix out(rows_, rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j)
    for (const auto& [k, b] : rhs.column(j))
      for (const auto& [i, a] : columns_[k]) out.add(i, j, a * b);
  return out;
}

void SparseMatrix::write_triplets(std::ostream& out) const {
  out << rows_ << ' ' << cols() << '\n';
  for (std::size_t j = 0; j < cols(); ++j)
    for (const auto& [i, v] : columns_[j])
      out << i << ' ' << j << ' ' << numerator(v) << '/' << denominator(v) << '\n';
}

// ---------------------------------------------------------------------------

namespace {

using IntVector = std::vector<std::pair<std::size_t, Integer>>;

IntVector to_primitive_integers(const SparseVector& v) {
  Integer lcm = 1;
  for (const auto& [i, q] : v) lcm = boost::multiprecision::lcm(lcm, Integer(boost::multiprecision::denominator(q)));
  IntVector out;
  out.reserve(v.size());
  for (const auto& [i, q] : v) {
    if (q == 0) continue;
    out.emplace_back(i, Integer(boost::multiprecision::numerator(q) * (lcm / boost::multiprecision::denominator(q))));
  }
  return out;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& [i, z] : v) {
    g = boost::multiprecision::gcd(g, z);
    if (g == 1) break;
  }
  return g;
}

void divide_out(IntVector& v, const Integer& g) {
  if (g <= 1) return;
  for (auto& [i, z] : v) z /= g;
}

/// a·v − b·w.
IntVector combine(const Integer& a, const IntVector& v, const Integer& b, const IntVector& w) {
  IntVector out;
  out.reserve(v.size() + w.size());
  auto p = v.begin();
  auto q = w.begin();
  while (p != v.end() || q != w.end()) {
    if (q == w.end() || (p != v.end() && p->first < q->first)) {
      out.emplace_back(p->first, a * p->second);
      ++p;
    } else if (p == v.end() || q->first < p->first) {
      out.emplace_back(q->first, -b * q->second);
      ++q;
    } else {
      Integer z = a * p->second - b * q->second;
      if (z != 0) out.emplace_back(p->first, std::move(z));
      ++p;
      ++q;
    }
  }
  return out;
}

}  // namespace

EchelonSpace::IntVector EchelonSpace::reduce(IntVector v) const {
  while (!v.empty()) {
    auto it = pivots_.find(v.front().first);
    if (it == pivots_.end()) break;
    const IntVector& pivot = it->second;
    const Integer g = boost::multiprecision::gcd(pivot.front().second, v.front().second);
    v = combine(pivot.front().second / g, v, v.front().second / g, pivot);
    divide_out(v, content(v));
  }
  return v;
}

bool EchelonSpace::insert(const SparseVector& v) {
  IntVector reduced = reduce(to_primitive_integers(v));
  if (reduced.empty()) return false;
  if (reduced.front().second < 0)
    for (auto& [i, z] : reduced) z = -z;
  const std::size_t lead = reduced.front().first;
  pivots_.emplace(lead, std::move(reduced));
  return true;
}

bool EchelonSpace::contains(const SparseVector& v) const { return reduce(to_primitive_integers(v)).empty(); }

std::size_t span_dimension(const std::vector<SparseVector>& vectors) {
  EchelonSpace space;
  for (const auto& v : vectors) space.insert(v);
  return space.dimension();
}

// ---------------------------------------------------------------------------

namespace {

std::size_t exact_rank_fraction_free(const SparseMatrix& m) {
  EchelonSpace space;
  for (const auto& column : m.columns()) space.insert(column);
  return space.dimension();
}

/// Rank mod p together with the columns that were independent when inserted.
std::pair<std::size_t, std::vector<std::size_t>> modular_rank(const SparseMatrix& m, std::uint64_t p) {
  using ModVector = std::vector<std::pair<std::size_t, std::uint64_t>>;
  std::map<std::size_t, ModVector> pivots;  // monic at the lead
  std::vector<std::size_t> independent;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    ModVector v;
    for (const auto& [i, q] : m.column(j)) {
      const std::uint64_t r = reduce_rational_mod_p(q, p);
      if (r) v.emplace_back(i, r);
    }
    while (!v.empty()) {
      auto it = pivots.find(v.front().first);
      if (it == pivots.end()) break;
      const std::uint64_t factor = v.front().second;
      ModVector next;
      auto a = v.begin();
      auto b = it->second.begin();
      while (a != v.end() || b != it->second.end()) {
        if (b == it->second.end() || (a != v.end() && a->first < b->first)) {
          next.push_back(*a++);
        } else if (a == v.end() || b->first < a->first) {
          next.emplace_back(b->first, modular::sub(0, modular::mul(factor, b->second, p), p));
          ++b;
        } else {
          const std::uint64_t z = modular::sub(a->second, modular::mul(factor, b->second, p), p);
          if (z) next.emplace_back(a->first, z);
          ++a;
          ++b;
        }
      }
      v = std::move(next);
    }
    if (v.empty()) continue;
    const std::uint64_t inv = modular::inverse(v.front().second, p);
    for (auto& [i, z] : v) z = modular::mul(z, inv, p);
    pivots.emplace(v.front().first, std::move(v));
    independent.push_back(j);
  }
  return {independent.size(), independent};
}

}  // namespace

std::size_t exact_rank(const SparseMatrix& m, const RankOptions& options) {
  if (!options.multimodular) return exact_rank_fraction_free(m);

  modular::PrimeSource source(options.seed);
  std::size_t best = 0;
  std::vector<std::size_t> best_columns;
  for (int k = 0; k < std::max(1, options.primes); ++k) {
    std::uint64_t p = source.next();
    try {
      auto [r, cols] = modular_rank(m, p);
      if (r > best || best_columns.empty()) {
        best = r;
        best_columns = std::move(cols);
      }
    } catch (const BadPrimeError&) {
      continue;
    }
  }

  // Certification: pivot columns independent over Q, every other column in
  // their span.
  EchelonSpace space;
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t j : best_columns) {
    is_pivot[j] = true;
    if (!space.insert(m.column(j))) return exact_rank_fraction_free(m);
  }
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j] && !space.contains(m.column(j))) return exact_rank_fraction_free(m);
  return best;
}

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
  // Column elimination carrying, for each reduced vector, the combination of
  // original columns that produced it. A column that reduces to zero yields
  // a kernel vector; its own index appears with a nonzero coefficient and all
  // others are earlier, so the vectors produced are independent.
  struct Tracked {
    IntVector value;
    IntVector tag;
  };
  std::map<std::size_t, Tracked> pivots;
  std::vector<SparseVector> kernel;

  for (std::size_t j = 0; j < m.cols(); ++j) {
    const SparseVector& column = m.column(j);
    Integer lcm = 1;
    for (const auto& [i, q] : column)
      lcm = boost::multiprecision::lcm(lcm, Integer(boost::multiprecision::denominator(q)));
    Tracked t;
    for (const auto& [i, q] : column)
      t.value.emplace_back(i, Integer(boost::multiprecision::numerator(q) * (lcm / boost::multiprecision::denominator(q))));
    t.tag.emplace_back(j, lcm);

    while (!t.value.empty()) {
      auto it = pivots.find(t.value.front().first);
      if (it == pivots.end()) break;
      const Tracked& pivot = it->second;
      const Integer g = boost::multiprecision::gcd(pivot.value.front().second, t.value.front().second);
      const Integer a = pivot.value.front().second / g;
      const Integer b = t.value.front().second / g;
      t.value = combine(a, t.value, b, pivot.value);
      t.tag = combine(a, t.tag, b, pivot.tag);
      Integer c = boost::multiprecision::gcd(content(t.value), content(t.tag));
      divide_out(t.value, c);
      divide_out(t.tag, c);
    }
    if (t.value.empty()) {
      SparseVector v;
      for (auto& [i, z] : t.tag) v.emplace_back(i, Rational(z));
      kernel.push_back(std::move(v));
    } else {
      const std::size_t lead = t.value.front().first;
      pivots.emplace(lead, std::move(t));
    }
  }
  return kernel;
}

// ---------------------------------------------------------------------------

std::size_t integer_rank(std::vector<std::vector<Integer>> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t width = rows.front().size();
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Integer a = rows[rank][col];
      const Integer b = rows[r][col];
      for (std::size_t c = col; c < width; ++c) rows[r][c] = a * rows[r][c] - b * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

Integer integer_determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
    }
    previous = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace exphodge

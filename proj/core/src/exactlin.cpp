#include "covol/exactlin.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace covol {

namespace {

const Rational kZero{0};

}  // namespace

std::string toString(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parseRational(std::string_view text) {
  auto parseInt = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parseInt(text));
  const BigInt num = parseInt(text.substr(0, slash));
  const BigInt den = parseInt(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

// ---------------------------------------------------------------------------
// SparseVector

SparseVector SparseVector::unit(std::size_t index, const Rational& value) {
  SparseVector v;
  v.set(index, value);
  return v;
}

const Rational& SparseVector::get(std::size_t index) const {
  auto it = entries_.find(index);
  return it == entries_.end() ? kZero : it->second;
}

void SparseVector::set(std::size_t index, const Rational& value) {
  if (value == 0)
    entries_.erase(index);
  else
    entries_[index] = value;
}

void SparseVector::add(std::size_t index, const Rational& value) {
  if (value == 0) return;
  auto [it, inserted] = entries_.try_emplace(index, value);
  if (inserted) return;
  it->second += value;
  if (it->second == 0) entries_.erase(it);
}

void SparseVector::axpy(const Rational& factor, const SparseVector& other) {
  if (factor == 0) return;
  for (const auto& [i, x] : other.entries_) add(i, factor * x);
}

void SparseVector::scale(const Rational& factor) {
  if (factor == 0) {
    entries_.clear();
    return;
  }
  for (auto& [i, x] : entries_) x *= factor;
}

std::optional<std::size_t> SparseVector::leading() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.begin()->first;
}

std::vector<std::size_t> SparseVector::support() const {
  std::vector<std::size_t> out;
  out.reserve(entries_.size());
  for (const auto& [i, x] : entries_) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Subspace

SparseVector Subspace::reduce(SparseVector v) const {
  for (std::size_t r = 0; r < rows_.size() && !v.empty(); ++r) {
    const Rational c = v.get(pivots_[r]);
    if (c != 0) v.axpy(-c, rows_[r]);
  }
  return v;
}

bool Subspace::insert(const SparseVector& v) {
  SparseVector w = reduce(v);
  if (w.empty()) return false;
  const std::size_t pivot = *w.leading();
  w.scale(1 / Rational(w.get(pivot)));
  for (auto& row : rows_) {
    const Rational c = row.get(pivot);
    if (c != 0) row.axpy(-c, w);
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, pivot);
  rows_.insert(rows_.begin() + pos, std::move(w));
  return true;
}

Subspace rref(std::span<const SparseVector> rows) {
  Subspace s;
  for (const auto& r : rows) s.insert(r);
  return s;
}

bool member(const Subspace& space, const SparseVector& v) { return space.contains(v); }

std::size_t intersectionWithCoordinatesDim(const Subspace& space, const std::vector<std::size_t>& coords) {
  const std::set<std::size_t> keep(coords.begin(), coords.end());
  Subspace projected;
  for (const auto& row : space.rows()) {
    SparseVector p;
    for (const auto& [i, x] : row)
      if (!keep.count(i)) p.set(i, x);
    projected.insert(p);
  }
  return space.dimension() - projected.dimension();
}

std::vector<std::vector<std::size_t>> finestBlockPartition(const Subspace& space) {
  std::map<std::size_t, std::size_t> parent;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& row : space.rows()) {
    const auto sup = row.support();
    for (auto i : sup) parent.try_emplace(i, i);
    for (std::size_t k = 1; k < sup.size(); ++k) {
      const auto a = find(sup[0]);
      const auto b = find(sup[k]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (const auto& [i, p] : parent) blocks[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(blocks.size());
  for (auto& [root, members] : blocks) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Integer matrices

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::fromRows(const std::vector<std::vector<long long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged integer matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

void swapRows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swapCols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row[dst] += k * row[src]
void addRow(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& k) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += k * m(src, c);
}

void addCol(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& k) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += k * m(r, src);
}

}  // namespace

SmithDecomposition smithNormalForm(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix left = IntMatrix::identity(m.rows());
  IntMatrix right = IntMatrix::identity(m.cols());
  const std::size_t n = std::min(m.rows(), m.cols());

  // Moves the smallest nonzero |entry| of the trailing block (rows/cols >= t)
  // to (t, t). Returns false if the block is zero.
  auto bringSmallestToCorner = [&](std::size_t t, bool lineOnly) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    BigInt bestAbs;
    auto consider = [&](std::size_t r, std::size_t c) {
      if (d(r, c) == 0) return;
      BigInt a = abs(d(r, c));
      if (!best || a < bestAbs) {
        best = {r, c};
        bestAbs = a;
      }
    };
    if (lineOnly) {
      for (std::size_t r = t; r < d.rows(); ++r) consider(r, t);
      for (std::size_t c = t; c < d.cols(); ++c) consider(t, c);
    } else {
      for (std::size_t r = t; r < d.rows(); ++r)
        for (std::size_t c = t; c < d.cols(); ++c) consider(r, c);
    }
    if (!best) return false;
    swapRows(d, t, best->first);
    swapRows(left, t, best->first);
    swapCols(d, t, best->second);
    swapCols(right, t, best->second);
    return true;
  };

  std::vector<BigInt> diagonal;
  for (std::size_t t = 0; t < n; ++t) {
    if (!bringSmallestToCorner(t, false)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t r = t + 1; r < d.rows(); ++r) {
        if (d(r, t) == 0) continue;
        const BigInt q = d(r, t) / d(t, t);
        addRow(d, r, t, -q);
        addRow(left, r, t, -q);
        if (d(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < d.cols(); ++c) {
        if (d(t, c) == 0) continue;
        const BigInt q = d(t, c) / d(t, t);
        addCol(d, c, t, -q);
        addCol(right, c, t, -q);
        if (d(t, c) != 0) clean = false;
      }
      if (!clean) {
        bringSmallestToCorner(t, true);
        continue;
      }
      // Enforce the divisibility chain: fold any offending row into row t.
      std::optional<std::size_t> offending;
      for (std::size_t r = t + 1; r < d.rows() && !offending; ++r)
        for (std::size_t c = t + 1; c < d.cols(); ++c)
          if (d(r, c) % d(t, t) != 0) {
            offending = r;
            break;
          }
      if (!offending) break;
      addRow(d, t, *offending, 1);
      addRow(left, t, *offending, 1);
    }
    if (d(t, t) < 0) {
      for (std::size_t c = 0; c < d.cols(); ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < left.cols(); ++c) left(t, c) = -left(t, c);
    }
    diagonal.push_back(d(t, t));
  }
  diagonal.resize(n, BigInt(0));
  return {std::move(diagonal), std::move(left), std::move(right)};
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("inverse of non-square matrix");
    inv[i][i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational scale = 1 / a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] *= scale;
      inv[col][c] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace covol

#pragma once

// Shared test helpers: the COVOL_SEED generator and small dense oracles that
// do not go through the library's sparse elimination.

#include "covol/coalgebra.hpp"
#include "covol/exactlin.hpp"
#include "covol/groups.hpp"
#include "covol/quiver.hpp"
#include "covol/voltage.hpp"

#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace covol::test {

inline std::uint64_t seed() {
  if (const char* s = std::getenv("COVOL_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(seed());
  return engine;
}

inline std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

using Dense = std::vector<std::vector<Rational>>;

inline Dense dense(const std::vector<SparseVector>& rows, std::size_t n) {
  Dense d(rows.size(), std::vector<Rational>(n));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [i, c] : rows[r]) d[r][i] = c;
  return d;
}

/// Rank by plain Gaussian elimination on a dense copy.
inline std::size_t denseRank(Dense m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline bool denseMember(const std::vector<SparseVector>& rows, const SparseVector& v, std::size_t n) {
  auto all = rows;
  all.push_back(v);
  return denseRank(dense(all, n)) == denseRank(dense(rows, n));
}

/// dim(V ∩ span{e_i : i ∈ coords}) = dim V − rank of V projected onto the other coordinates.
inline std::size_t denseIntersectionDim(const std::vector<SparseVector>& rows, const std::set<std::size_t>& coords,
                                        std::size_t n) {
  Dense d = dense(rows, n);
  for (auto& row : d)
    for (auto i : coords) row[i] = 0;
  return denseRank(dense(rows, n)) - denseRank(d);
}

/// Finest partition by recursive splitting: (S, T \ S) splits iff the
/// intersection dimensions add up to dim(V ∩ span T).
inline void splitRecursively(const std::vector<SparseVector>& rows, std::vector<std::size_t> block, std::size_t n,
                             std::set<std::vector<std::size_t>>& out) {
  const std::set<std::size_t> all(block.begin(), block.end());
  const std::size_t total = denseIntersectionDim(rows, all, n);
  const std::size_t k = block.size();
  // Subsets containing block[0]; the complement must be nonempty.
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); mask += 2) {
    std::set<std::size_t> a;
    std::set<std::size_t> b;
    for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1 ? a : b).insert(block[i]);
    if (denseIntersectionDim(rows, a, n) + denseIntersectionDim(rows, b, n) == total) {
      splitRecursively(rows, {a.begin(), a.end()}, n, out);
      splitRecursively(rows, {b.begin(), b.end()}, n, out);
      return;
    }
  }
  out.insert(block);
}

inline std::set<std::vector<std::size_t>> bruteForcePartition(const std::vector<SparseVector>& rows, std::size_t n) {
  std::set<std::size_t> support;
  for (const auto& r : rows)
    for (const auto& [i, c] : r) support.insert(i);
  std::set<std::vector<std::size_t>> out;
  if (!support.empty()) splitRecursively(rows, {support.begin(), support.end()}, n, out);
  return out;
}

inline SparseVector randomVector(std::size_t n, int density, std::int64_t range) {
  SparseVector v;
  for (std::size_t i = 0; i < n; ++i)
    if (uniform(0, 99) < density) v.add(i, Rational(uniform(-range, range)));
  return v;
}

/// Connected random quiver: a random spanning tree plus extra arrows (loops allowed).
inline Quiver randomQuiver(std::size_t vertices, std::size_t arrows) {
  Quiver q;
  for (std::size_t v = 0; v < vertices; ++v) q.addVertex("v" + std::to_string(v));
  std::size_t next = 0;
  auto add = [&](std::size_t s, std::size_t t) { q.addArrow("e" + std::to_string(next++), s, t); };
  for (std::size_t v = 1; v < vertices; ++v) {
    const auto u = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v) - 1));
    if (uniform(0, 1)) add(u, v); else add(v, u);
  }
  while (q.arrowCount() < arrows)
    add(static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(vertices) - 1)),
        static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(vertices) - 1)));
  return q;
}

inline GroupElement randomElement(const Group& g, std::int64_t range = 2) {
  switch (g.backend()) {
    case Backend::FiniteTable:
      return g.finiteElement(static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(*g.order()) - 1)));
    case Backend::FgAbelian: {
      std::vector<std::int64_t> c;
      for (std::size_t i = 0; i < g.freeRank(); ++i) c.push_back(uniform(-range, range));
      for (auto t : g.torsion()) c.push_back(uniform(0, t - 1));
      return g.abelianElement(c);
    }
    case Backend::Free: {
      Word w;
      const auto len = uniform(0, range);
      for (std::int64_t i = 0; i < len; ++i) {
        const int l = static_cast<int>(uniform(1, static_cast<std::int64_t>(g.freeRank())));
        w.push_back(uniform(0, 1) ? l : -l);
      }
      return g.freeElement(w);
    }
  }
  return g.identity();
}

inline ArrowWeighting randomWeighting(const Quiver& q, const Group& g, std::int64_t range = 1) {
  ArrowWeighting w{g, {}};
  for (std::size_t a = 0; a < q.arrowCount(); ++a) w.values.push_back(randomElement(g, range));
  return w;
}

inline VertexWeighting randomVertexWeighting(const Quiver& q, const Group& g, std::int64_t range = 1) {
  VertexWeighting w{g, {}};
  for (std::size_t v = 0; v < q.vertexCount(); ++v) w.values.push_back(randomElement(g, range));
  return w;
}

/// Random generators: sums of two or three parallel paths of length two with small coefficients.
inline std::vector<SparseVector> randomGenerators(const PathIndex& index, std::size_t count) {
  std::vector<SparseVector> gens;
  const auto& q = index.quiver();
  for (std::size_t k = 0; k < count; ++k) {
    const auto x = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(q.vertexCount()) - 1));
    const auto y = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(q.vertexCount()) - 1));
    std::vector<std::size_t> longest;
    for (auto p : index.pathsBetween(x, y))
      if (index.path(p).length() == index.maxLength()) longest.push_back(p);
    if (longest.empty()) continue;
    SparseVector g;
    const auto terms = uniform(1, 3);
    for (std::int64_t t = 0; t < terms; ++t) {
      const auto p = longest[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(longest.size()) - 1))];
      g.add(p, Rational(uniform(1, 2) * (uniform(0, 1) ? 1 : -1)));
    }
    if (!g.empty()) gens.push_back(g);
  }
  return gens;
}

}  // namespace covol::test

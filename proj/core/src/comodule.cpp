#include "covol/comodule.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace covol {

namespace {

RationalMatrix zeros(std::size_t r, std::size_t c) { return RationalMatrix(r, std::vector<Rational>(c, Rational(0))); }

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k ? b[0].size() : 0;
  auto out = zeros(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

bool isZero(const RationalMatrix& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

Tensor2 tensor(const SparseVector& a, const SparseVector& b) {
  Tensor2 t;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) addTerm(t, i, j, x * y);
  return t;
}

/// Rows carry `cols` coefficients followed by the right-hand side. Returns one
/// solution (free variables zero) or nullopt when inconsistent.
std::optional<std::vector<Rational>> solveAffine(std::vector<std::vector<Rational>> rows, std::size_t cols) {
  std::vector<std::size_t> pivotCols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = c; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivotCols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rows[i][cols] != 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < pivotCols.size(); ++i) x[pivotCols[i]] = rows[i][cols];
  return x;
}

/// Basis of {v : m v = 0}.
std::vector<std::vector<Rational>> kernel(const RationalMatrix& m, std::size_t cols) {
  std::vector<SparseVector> rows;
  for (const auto& row : m) {
    SparseVector v;
    for (std::size_t j = 0; j < cols; ++j) v.set(j, row[j]);
    rows.push_back(std::move(v));
  }
  const Subspace s = rref(rows);
  std::vector<bool> isPivot(cols, false);
  for (auto p : s.pivots()) isPivot[p] = true;
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (isPivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < s.dimension(); ++k) v[s.pivots()[k]] = -s.rows()[k].get(f);
    out.push_back(std::move(v));
  }
  return out;
}

/// det(λI − A) as coefficients c[0..n], monic.
std::vector<Rational> characteristicPolynomial(const RationalMatrix& a) {
  const std::size_t n = a.size();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  auto m = zeros(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = multiply(a, m);
    for (std::size_t i = 0; i < n; ++i) m[i][i] += c[n - k + 1];
    const auto am = multiply(a, m);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
    c[n - k] = -tr / static_cast<long long>(k);
  }
  return c;
}

std::vector<BigInt> divisors(BigInt v) {
  if (v < 0) v = -v;
  std::vector<BigInt> out;
  for (BigInt d = 1; d * d <= v; ++d) {
    if (v % d != 0) continue;
    out.push_back(d);
    if (d * d != v) out.push_back(v / d);
  }
  return out;
}

/// Rational roots with multiplicity, or nullopt if the polynomial does not split
/// over Q (or its coefficients are too large to search).
std::optional<std::vector<Rational>> rationalRoots(std::vector<Rational> c) {
  std::vector<Rational> roots;
  while (c.size() > 1) {
    if (c[0] == 0) {
      roots.push_back(0);
      c.erase(c.begin());
      continue;
    }
    BigInt l = 1;
    for (const auto& x : c) {
      const BigInt d = boost::multiprecision::denominator(x);
      l = l / boost::multiprecision::gcd(l, d) * d;
    }
    const BigInt a0 = boost::multiprecision::numerator(Rational(c.front() * l));
    const BigInt an = boost::multiprecision::numerator(Rational(c.back() * l));
    if (abs(a0) > BigInt(1000000000000LL) || abs(an) > BigInt(1000000000000LL)) return std::nullopt;
    std::optional<Rational> found;
    for (const auto& p : divisors(a0)) {
      for (const auto& q : divisors(an)) {
        for (int sign : {1, -1}) {
          const Rational cand = Rational(p * sign, q);
          Rational val = 0;
          for (auto it = c.rbegin(); it != c.rend(); ++it) val = val * cand + *it;
          if (val == 0) found = cand;
          if (found) break;
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
    roots.push_back(*found);
    std::vector<Rational> q(c.size() - 1, Rational(0));
    Rational carry = 0;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
      carry = c[i + 1] + carry * *found;
      q[i] = carry;
    }
    c = std::move(q);
  }
  return roots;
}

Comodule transform(const Comodule& m, const RationalMatrix& p, const RationalMatrix& pinv,
                   std::vector<std::string> labels) {
  const std::size_t n = m.dimension();
  Comodule out(std::move(labels));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t j = 0; j < n; ++j) {
      SparseVector acc;
      for (std::size_t i = 0; i < n; ++i) {
        if (pinv[l][i] == 0) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (p[k][j] == 0) continue;
          acc.axpy(pinv[l][i] * p[k][j], m.coefficient(i, k));
        }
      }
      out.setCoefficient(l, j, std::move(acc));
    }
  return out;
}

std::vector<std::string> defaultLabels(std::size_t n, const std::string& stem) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

}  // namespace

Comodule::Comodule(std::vector<std::string> labels)
    : labels_(std::move(labels)), coeff_(labels_.size(), std::vector<SparseVector>(labels_.size())) {}

AxiomCheck verifyComodule(const Comodule& m, const BasisCoalgebra& c) {
  AxiomCheck res;
  const std::size_t n = m.dimension();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& ckj = m.coefficient(k, j);
      if (!c.isExact(ckj)) {
        ++res.skipped;
        continue;
      }
      ++res.checked;
      Tensor2 diff = c.delta(ckj);
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& [key, x] : tensor(m.coefficient(k, i), m.coefficient(i, j)))
          addTerm(diff, key.first, key.second, -x);
      auto fail = [&](const std::string& what) {
        res.ok = false;
        res.failing = k * n + j;
        res.reason = what + " fails at (" + m.labels()[k] + ", " + m.labels()[j] + ")";
      };
      if (!diff.empty()) {
        fail("coassociativity");
        return res;
      }
      if (c.counit(ckj) != (k == j ? 1 : 0)) {
        fail("counit");
        return res;
      }
    }
  return res;
}

AxiomCheck verifyComodule(const Comodule& m, const SubcoalgebraBasis& b) {
  for (std::size_t i = 0; i < m.dimension(); ++i)
    for (std::size_t j = 0; j < m.dimension(); ++j)
      if (!b.contains(m.coefficient(i, j))) {
        AxiomCheck res;
        res.ok = false;
        res.failing = i * m.dimension() + j;
        res.reason = "coefficient (" + m.labels()[i] + ", " + m.labels()[j] + ") is not in B";
        return res;
      }
  return verifyComodule(m, PathCoalgebra(b.indexPtr()));
}

std::optional<std::pair<std::size_t, std::size_t>> checkGrading(const GradedComodule& m, const PathIndex& index,
                                                                const ArrowWeighting& delta) {
  const auto& g = delta.group;
  const std::size_t n = m.module.dimension();
  if (m.degrees.size() != n) throw std::invalid_argument("one degree per basis vector expected");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [p, c] : m.module.coefficient(i, j))
        if (!g.equal(g.multiply(m.degrees[i], weightWalk(delta, index.walk(p))), m.degrees[j])) return {{i, j}};
  return std::nullopt;
}

Comodule toSmashComodule(const GradedComodule& m, const SmashPathCoalgebra& smash) {
  const auto& g = smash.weighting().group;
  const std::size_t n = m.module.dimension();
  Comodule out(m.module.labels());
  for (std::size_t j = 0; j < n; ++j) {
    const auto gi = smash.window().find(g.inverse(m.degrees.at(j)));
    if (!gi) throw std::out_of_range("degree " + g.format(m.degrees[j]) + " leaves the window");
    for (std::size_t i = 0; i < n; ++i) {
      SparseVector c;
      for (const auto& [p, x] : m.module.coefficient(i, j)) c.add(smash.symbol(p, *gi), x);
      out.setCoefficient(i, j, std::move(c));
    }
  }
  return out;
}

FromSmash fromSmashComodule(const Comodule& n, const SmashPathCoalgebra& smash) {
  const auto& g = smash.weighting().group;
  const auto& window = smash.window();
  const std::size_t dim = n.dimension();
  std::map<GroupElement, RationalMatrix> projector;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (const auto& [s, x] : n.coefficient(i, j)) {
        if (smash.index().path(smash.symbolPath(s)).length() != 0) continue;
        const auto h = g.inverse(window[smash.symbolWindow(s)]);
        auto [it, fresh] = projector.try_emplace(h, zeros(dim, dim));
        it->second[i][j] += x;
      }

  Comodule underlying(n.labels());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      SparseVector c;
      for (const auto& [s, x] : n.coefficient(i, j)) c.add(smash.symbolPath(s), x);
      underlying.setCoefficient(i, j, std::move(c));
    }

  bool diagonal = true;
  std::vector<std::optional<GroupElement>> degree(dim);
  for (const auto& [h, e] : projector)
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        if (i != j && e[i][j] != 0) diagonal = false;
        if (i == j && e[i][i] != 0) {
          if (e[i][i] != 1 || degree[i]) diagonal = false;
          degree[i] = h;
        }
      }
  for (const auto& d : degree)
    if (!d) diagonal = false;
  if (diagonal) {
    FromSmash out{{std::move(underlying), {}}, std::nullopt};
    for (auto& d : degree) out.graded.degrees.push_back(*d);
    return out;
  }

  RationalMatrix p = zeros(dim, 0);
  std::vector<GroupElement> degrees;
  for (const auto& [h, e] : projector) {
    std::vector<SparseVector> cols;
    for (std::size_t j = 0; j < dim; ++j) {
      SparseVector v;
      for (std::size_t i = 0; i < dim; ++i) v.set(i, e[i][j]);
      cols.push_back(std::move(v));
    }
    for (const auto& v : rref(cols).rows()) {
      for (std::size_t i = 0; i < dim; ++i) p[i].push_back(v.get(i));
      degrees.push_back(h);
    }
  }
  if (degrees.size() != dim) throw std::invalid_argument("the group-like projectors do not split the comodule");
  const auto pinv = inverse(p);
  if (!pinv) throw std::invalid_argument("the group-like projectors do not split the comodule");
  FromSmash out{{transform(underlying, p, *pinv, defaultLabels(dim, "v")), std::move(degrees)}, p};
  return out;
}

Comodule pushDown(const Comodule& n, const BasisMap& f) {
  Comodule out(n.labels());
  for (std::size_t i = 0; i < n.dimension(); ++i)
    for (std::size_t j = 0; j < n.dimension(); ++j) {
      SparseVector c;
      for (const auto& [s, x] : n.coefficient(i, j)) {
        const auto img = f(s);
        if (!img) throw std::invalid_argument("push-down map undefined on a coefficient");
        c.axpy(x, *img);
      }
      out.setCoefficient(i, j, std::move(c));
    }
  return out;
}

BasisMap coverProjection(const SmashQuiver& smash, const PathIndex& coverIndex, const PathIndex& baseIndex) {
  return [&smash, &coverIndex, &baseIndex](std::size_t cp) -> std::optional<SparseVector> {
    const auto& f = smash.projection();
    const auto& path = coverIndex.path(cp);
    if (path.arrows.empty()) return SparseVector::unit(f.vertexMap[path.source]);
    std::vector<std::size_t> arrows;
    for (auto a : path.arrows) arrows.push_back(f.arrowMap[a]);
    const auto p = baseIndex.findArrows(arrows);
    if (!p) return std::nullopt;
    return SparseVector::unit(*p);
  };
}

BasisMap smashProjection(const SmashPathCoalgebra& smash) {
  return [&smash](std::size_t s) -> std::optional<SparseVector> {
    return SparseVector::unit(smash.symbolPath(s));
  };
}

Comodule comoduleFromRepresentation(const PathIndex& index, const Representation& rep) {
  const auto& q = index.quiver();
  const std::size_t n = rep.dimension();
  if (rep.arrows.size() != q.arrowCount()) throw std::invalid_argument("one matrix per arrow expected");
  for (auto v : rep.vertexOf)
    if (v >= q.vertexCount()) throw std::invalid_argument("basis vector at an unknown vertex");
  for (std::size_t a = 0; a < q.arrowCount(); ++a) {
    const auto& m = rep.arrows[a];
    if (m.size() != n) throw std::invalid_argument("arrow matrix has the wrong size");
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i].size() != n) throw std::invalid_argument("arrow matrix has the wrong size");
      for (std::size_t j = 0; j < n; ++j)
        if (m[i][j] != 0 && (rep.vertexOf[i] != q.arrow(a).target || rep.vertexOf[j] != q.arrow(a).source))
          throw std::invalid_argument("arrow " + q.arrow(a).name + " leaves its vertex spaces");
    }
  }

  std::vector<RationalMatrix> act(index.size());
  for (std::size_t p = 0; p < index.size(); ++p) {
    const auto& path = index.path(p);
    if (path.arrows.empty()) {
      act[p] = zeros(n, n);
      for (std::size_t i = 0; i < n; ++i)
        if (rep.vertexOf[i] == path.source) act[p][i][i] = 1;
    } else if (path.arrows.size() == 1) {
      act[p] = rep.arrows[path.arrows[0]];
    } else {
      std::vector<std::size_t> prefix(path.arrows.begin(), path.arrows.end() - 1);
      act[p] = multiply(rep.arrows[path.arrows.back()], act[*index.findArrows(prefix)]);
    }
  }
  for (std::size_t p = 0; p < index.size(); ++p) {
    if (index.path(p).length() != index.maxLength()) continue;
    for (auto b : q.outArrows(index.path(p).target))
      if (!isZero(multiply(rep.arrows[b], act[p])))
        throw std::invalid_argument("representation does not vanish on paths of length " +
                                    std::to_string(index.maxLength() + 1));
  }

  Comodule out(rep.labels.size() == n ? rep.labels : defaultLabels(n, "m"));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SparseVector c;
      for (std::size_t p = 0; p < index.size(); ++p) c.set(p, act[p][i][j]);
      out.setCoefficient(i, j, std::move(c));
    }
  return out;
}

Representation representationOf(const Comodule& m, const PathIndex& index) {
  const auto& q = index.quiver();
  const std::size_t n = m.dimension();
  Representation rep;
  rep.labels = m.labels();
  rep.arrows.assign(q.arrowCount(), zeros(n, n));
  for (std::size_t j = 0; j < n; ++j) {
    const auto& c = m.coefficient(j, j);
    std::optional<std::size_t> vertex;
    for (const auto& [p, x] : c)
      if (index.path(p).length() == 0) {
        if (vertex || x != 1) throw std::invalid_argument("diagonal coefficient is not a single vertex");
        vertex = index.path(p).source;
      }
    if (!vertex) throw std::invalid_argument("diagonal coefficient is not a single vertex");
    rep.vertexOf.push_back(*vertex);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [p, x] : m.coefficient(i, j)) {
        const auto& path = index.path(p);
        if (path.length() > 1) continue;
        if (path.length() == 0) {
          if (i != j) throw std::invalid_argument("off-diagonal vertex coefficient");
          continue;
        }
        const auto a = path.arrows[0];
        if (rep.vertexOf[i] != q.arrow(a).target || rep.vertexOf[j] != q.arrow(a).source)
          throw std::invalid_argument("arrow coefficient between the wrong vertices");
        rep.arrows[a][i][j] = x;
      }
  if (!(comoduleFromRepresentation(index, rep) == m))
    throw std::invalid_argument("longer coefficients are not the products of the arrow actions");
  return rep;
}

Representation stringRepresentation(const Quiver& q, const Walk& w) {
  const std::size_t n = w.length() + 1;
  Representation rep;
  rep.arrows.assign(q.arrowCount(), zeros(n, n));
  rep.vertexOf.push_back(w.start());
  for (std::size_t k = 0; k < w.length(); ++k) {
    const auto& s = w.steps()[k];
    const auto& a = q.arrow(s.arrow);
    rep.vertexOf.push_back(s.forward ? a.target : a.source);
    if (s.forward)
      rep.arrows[s.arrow][k + 1][k] += 1;
    else
      rep.arrows[s.arrow][k][k + 1] += 1;
  }
  rep.labels = defaultLabels(n, "e");
  return rep;
}

Representation bandRepresentation(const Quiver& q, const Walk& closed, const Rational& lambda) {
  if (!closed.isClosed() || closed.length() == 0) throw std::invalid_argument("band needs a nonempty closed walk");
  const std::size_t n = closed.length();
  Representation rep;
  rep.arrows.assign(q.arrowCount(), zeros(n, n));
  rep.vertexOf.push_back(closed.start());
  for (std::size_t k = 0; k < n; ++k) {
    const auto& s = closed.steps()[k];
    const auto& a = q.arrow(s.arrow);
    if (k + 1 < n) rep.vertexOf.push_back(s.forward ? a.target : a.source);
    const std::size_t next = (k + 1) % n;
    const Rational scalar = k + 1 == n ? lambda : Rational(1);
    if (s.forward)
      rep.arrows[s.arrow][next][k] += scalar;
    else
      rep.arrows[s.arrow][k][next] += scalar;
  }
  rep.labels = defaultLabels(n, "e");
  return rep;
}

Comodule weylComodule(const PathIndex& index, std::size_t arrow) {
  const auto& a = index.quiver().arrow(arrow);
  Comodule m({"m0", "m1"});
  m.setCoefficient(0, 0, SparseVector::unit(a.target));
  m.setCoefficient(0, 1, SparseVector::unit(index.arrowPath(arrow)));
  m.setCoefficient(1, 1, SparseVector::unit(a.source));
  return m;
}

Comodule comoduleFromRightCoideal(const PathIndex& index, const std::vector<SparseVector>& basis) {
  const std::size_t n = basis.size();
  const std::size_t offset = index.size();
  Subspace augmented;
  for (std::size_t i = 0; i < n; ++i) {
    SparseVector v = basis[i];
    v.set(offset + i, 1);
    augmented.insert(v);
  }
  {
    Subspace plain = rref(basis);
    if (plain.dimension() != n) throw std::invalid_argument("coideal basis is linearly dependent");
  }
  Comodule out(defaultLabels(n, "m"));
  std::vector<std::vector<SparseVector>> coeff(n, std::vector<SparseVector>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::map<std::size_t, SparseVector> byRight;
    for (const auto& [p, x] : basis[j])
      for (const auto& [later, earlier] : index.splittings(p)) byRight[earlier].add(later, x);
    for (const auto& [right, left] : byRight) {
      if (left.empty()) continue;
      const SparseVector r = augmented.reduce(left);
      for (const auto& [k, x] : r) {
        if (k < offset) throw std::invalid_argument("span is not a right coideal");
        coeff[k - offset][j].add(right, -x);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.setCoefficient(i, j, coeff[i][j]);
  return out;
}

GradabilityResult gradabilityProbe(const Comodule& m, const PathIndex& index, const ArrowWeighting& delta,
                                   const Window& window) {
  const auto rep = representationOf(m, index);
  const auto& q = index.quiver();
  const auto& g = delta.group;
  const std::size_t n = m.dimension();

  // Degrees on the given basis, propagated along nonzero coefficients.
  {
    std::vector<std::optional<GroupElement>> deg(n);
    bool consistent = true;
    for (std::size_t root = 0; root < n && consistent; ++root) {
      if (deg[root]) continue;
      deg[root] = g.identity();
      std::deque<std::size_t> queue{root};
      while (!queue.empty() && consistent) {
        const auto u = queue.front();
        queue.pop_front();
        for (std::size_t a = 0; a < q.arrowCount() && consistent; ++a)
          for (std::size_t v = 0; v < n; ++v) {
            // (A_a)ᵤᵥ ≠ 0 forces deg(v) = deg(u)δ(a); (A_a)ᵥᵤ ≠ 0 forces deg(v) = deg(u)δ(a)⁻¹.
            std::optional<GroupElement> want;
            if (rep.arrows[a][u][v] != 0) want = g.multiply(*deg[u], delta[a]);
            if (rep.arrows[a][v][u] != 0) {
              auto w = g.multiply(*deg[u], g.inverse(delta[a]));
              if (want && !g.equal(*want, w)) consistent = false;
              want = w;
            }
            if (!want) continue;
            if (!deg[v]) {
              deg[v] = *want;
              queue.push_back(v);
            } else if (!g.equal(*deg[v], *want)) {
              consistent = false;
              break;
            }
          }
      }
    }
    if (consistent) {
      GradedComodule w{m, {}};
      for (auto& d : deg) w.degrees.push_back(*d);
      if (!checkGrading(w, index, delta)) return Gradable{std::move(w), std::nullopt};
    }
  }

  if (g.backend() != Backend::FgAbelian || g.freeRank() != 1 || !g.torsion().empty())
    return UnknownGrading{"no grading on the given basis; the degree-operator search needs G = Z"};

  // Unknowns: D[i][k] for basis vectors at the same vertex.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> var;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (rep.vertexOf[i] == rep.vertexOf[k]) var.emplace(std::make_pair(i, k), var.size());
  const std::size_t nv = var.size();
  std::vector<std::vector<Rational>> system;
  for (std::size_t a = 0; a < q.arrowCount(); ++a) {
    const auto& A = rep.arrows[a];
    const Rational da = static_cast<long long>(delta[a].payload.at(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> row(nv + 1, Rational(0));
        for (std::size_t k = 0; k < n; ++k) {
          if (A[k][j] != 0) {
            auto it = var.find({i, k});
            if (it != var.end()) row[it->second] += A[k][j];
          }
          if (A[i][k] != 0) {
            auto it = var.find({k, j});
            if (it != var.end()) row[it->second] -= A[i][k];
          }
        }
        row[nv] = -da * A[i][j];
        if (std::any_of(row.begin(), row.end(), [](const Rational& x) { return x != 0; }))
          system.push_back(std::move(row));
      }
  }

  const auto solution = solveAffine(system, nv);
  if (!solution) {
    // Enumerate graded dimension vectors and certify each one infeasible.
    std::vector<std::size_t> dims(q.vertexCount(), 0);
    for (auto v : rep.vertexOf) ++dims[v];
    std::vector<std::vector<std::vector<std::size_t>>> perVertex(q.vertexCount());
    for (std::size_t x = 0; x < q.vertexCount(); ++x) {
      std::vector<std::size_t> cur(window.size(), 0);
      auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == window.size()) {
          cur[pos] = left;
          perVertex[x].push_back(cur);
          return;
        }
        for (std::size_t k = 0; k <= left; ++k) {
          cur[pos] = k;
          self(self, pos + 1, left - k);
        }
      };
      rec(rec, 0, dims[x]);
    }
    std::size_t total = 1;
    for (const auto& pv : perVertex) {
      total *= pv.size();
      if (total > 100000) throw std::invalid_argument("too many graded dimension vectors to exhaust");
    }
    Ungradable out;
    out.reason = "D A_a - A_a D = -delta(a) A_a has no solution";
    std::vector<std::size_t> choice(q.vertexCount(), 0);
    for (std::size_t c = 0; c < total; ++c) {
      std::size_t rest = c;
      std::vector<std::vector<std::size_t>> vec;
      for (std::size_t x = 0; x < q.vertexCount(); ++x) {
        vec.push_back(perVertex[x][rest % perVertex[x].size()]);
        rest /= perVertex[x].size();
      }
      auto constrained = system;
      for (std::size_t x = 0; x < q.vertexCount(); ++x) {
        std::vector<Rational> row(nv + 1, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
          if (rep.vertexOf[i] == x) row[var.at({i, i})] = 1;
        for (std::size_t gi = 0; gi < window.size(); ++gi)
          row[nv] += static_cast<long long>(window[gi].payload.at(0)) * static_cast<long long>(vec[x][gi]);
        constrained.push_back(std::move(row));
      }
      if (solveAffine(constrained, nv))
        throw std::logic_error("dimension vector feasible although the degree system is inconsistent");
      out.exhausted.push_back(std::move(vec));
    }
    return out;
  }

  auto d0 = zeros(n, n);
  for (const auto& [ik, v] : var) d0[ik.first][ik.second] = (*solution)[v];
  const auto roots = rationalRoots(characteristicPolynomial(d0));
  if (!roots) return UnknownGrading{"degree operator has irrational eigenvalues"};
  std::map<Rational, std::size_t> multiplicity;
  for (const auto& r : *roots) ++multiplicity[r];

  RationalMatrix p = zeros(n, 0);
  std::vector<long long> degrees;
  for (std::size_t x = 0; x < q.vertexCount(); ++x) {
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < n; ++i)
      if (rep.vertexOf[i] == x) at.push_back(i);
    for (const auto& [lambda, mult] : multiplicity) {
      auto block = zeros(at.size(), at.size());
      for (std::size_t r = 0; r < at.size(); ++r)
        for (std::size_t c = 0; c < at.size(); ++c) block[r][c] = d0[at[r]][at[c]] - (r == c ? lambda : Rational(0));
      for (const auto& v : kernel(block, at.size())) {
        for (std::size_t i = 0; i < n; ++i) p[i].push_back(Rational(0));
        for (std::size_t r = 0; r < at.size(); ++r) p[at[r]].back() = v[r];
        const BigInt fl = boost::multiprecision::numerator(lambda) / boost::multiprecision::denominator(lambda) -
                          ((lambda < 0 && boost::multiprecision::denominator(lambda) != 1) ? 1 : 0);
        degrees.push_back(static_cast<long long>(fl));
      }
    }
  }
  if (degrees.size() != n) return UnknownGrading{"degree operator is not diagonalizable"};
  const auto pinv = inverse(p);
  if (!pinv) return UnknownGrading{"degree operator is not diagonalizable"};
  Comodule graded = transform(m, p, *pinv, defaultLabels(n, "v"));

  // Shift each connected piece so its first vector has degree 0.
  std::vector<std::size_t> comp(n, n);
  for (std::size_t root = 0; root < n; ++root) {
    if (comp[root] != n) continue;
    comp[root] = root;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < n; ++v)
        if (comp[v] == n && (!graded.coefficient(u, v).empty() || !graded.coefficient(v, u).empty())) {
          comp[v] = root;
          queue.push_back(v);
        }
    }
  }
  GradedComodule w{graded, {}};
  for (std::size_t i = 0; i < n; ++i) w.degrees.push_back(g.abelianElement({degrees[i] - degrees[comp[i]]}));
  if (checkGrading(w, index, delta)) return UnknownGrading{"integer shift of the degree operator is not a grading"};
  return Gradable{std::move(w), std::move(p)};
}

}  // namespace covol

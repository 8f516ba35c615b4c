#include "covol/covering.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace covol {

namespace {

std::vector<std::size_t> fiberOrder(const Window& w) {
  std::vector<std::size_t> order{w.identityIndex()};
  for (std::size_t i = 0; i < w.size(); ++i)
    if (i != w.identityIndex()) order.push_back(i);
  return order;
}

std::optional<std::size_t> liftPath(const SmashQuiver& smash, const PathIndex& baseIndex, const PathIndex& coverIndex,
                                    std::size_t p, std::size_t start) {
  const auto lifted = tryLiftWalk(smash.quiver(), smash.base(), smash.projection(), baseIndex.walk(p), start);
  if (!lifted) return std::nullopt;
  if (lifted->length() == 0) return lifted->start();
  std::vector<std::size_t> arrows;
  for (const auto& s : lifted->steps()) arrows.push_back(s.arrow);
  return coverIndex.findArrows(arrows);
}

GroupElement weightInTarget(const Group& g, const std::vector<GroupElement>& gens, const Word& w) {
  GroupElement acc = g.identity();
  for (int l : w) {
    const auto& e = gens.at(static_cast<std::size_t>(std::abs(l)) - 1);
    acc = g.multiply(acc, l > 0 ? e : g.inverse(e));
  }
  return acc;
}

}  // namespace

std::optional<SparseVector> liftElement(const SmashQuiver& smash, const PathIndex& baseIndex,
                                        const PathIndex& coverIndex, const SparseVector& b, std::size_t start) {
  SparseVector out;
  for (const auto& [p, c] : b) {
    if (baseIndex.path(p).source != smash.projection().vertexMap[start]) return std::nullopt;
    const auto lifted = liftPath(smash, baseIndex, coverIndex, p, start);
    if (!lifted) return std::nullopt;
    out.add(*lifted, c);
  }
  return out;
}

CoalgebraCovering liftSubcoalgebra(const SubcoalgebraBasis& b, const ArrowWeighting& delta, const Window& window) {
  CoalgebraCovering cov{SmashQuiver(b.index().quiver(), delta, window), delta, b, {}, true};
  const auto coverIndex = makePathIndex(cov.smash.quiver(), b.index().maxLength());
  std::vector<SparseVector> rows;
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    const auto x = b.rowEndpoints(i).first;
    for (std::size_t gi = 0; gi < window.size(); ++gi) {
      const auto start = cov.smash.vertex(x, window[gi]);
      if (!start) continue;
      if (auto l = liftElement(cov.smash, b.index(), *coverIndex, b.rows()[i], *start)) rows.push_back(std::move(*l));
    }
  }
  cov.lifted = SubcoalgebraBasis::fromRows(coverIndex, rows);
  cov.liftedIsSubcoalgebra = !cov.lifted.closureFailure().has_value();
  return cov;
}

CoalgebraCovering buildLiftedSubcoalgebra(const SubcoalgebraBasis& b, const ArrowWeighting& delta,
                                          const Window& window) {
  const auto h = isHomogeneous(b, delta);
  if (!h.homogeneous)
    throw std::invalid_argument("cannot lift an inhomogeneous subcoalgebra: " + b.index().format(*h.witness));
  return liftSubcoalgebra(b, delta, window);
}

CoveringVerdict isCoalgebraCovering(const CoalgebraCovering& cov) {
  CoveringVerdict v;
  const auto& b = cov.base;
  const auto& window = cov.smash.window();
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    const auto& row = b.rows()[i];
    if (row.size() < 2) continue;
    const auto x = b.rowEndpoints(i).first;
    for (auto gi : fiberOrder(window)) {
      const auto start = cov.smash.vertex(x, window[gi]);
      if (!start) continue;
      std::set<std::size_t> ends;
      SparseVector lifted;
      bool defined = true;
      for (const auto& [p, c] : row) {
        const auto l = liftPath(cov.smash, b.index(), cov.coverIndex(), p, *start);
        if (!l) {
          defined = false;
          break;
        }
        ends.insert(cov.coverIndex().path(*l).target);
        lifted.add(*l, c);
      }
      if (!defined) continue;
      ++v.checked;
      auto fail = [&](std::string reason) {
        v.ok = false;
        v.witness = row;
        v.witnessVertex = *start;
        v.reason = std::move(reason);
      };
      if (ends.size() > 1) {
        fail("path lifts of " + b.index().format(row) + " from " + cov.smash.quiver().vertexName(*start) +
             " end at different vertices");
        return v;
      }
      if (!cov.lifted.contains(lifted)) {
        fail("lift of " + b.index().format(row) + " from " + cov.smash.quiver().vertexName(*start) +
             " is not in the lifted subcoalgebra");
        return v;
      }
      if (!isMinimalElement(cov.lifted.space(), lifted)) {
        fail("lift of " + b.index().format(row) + " from " + cov.smash.quiver().vertexName(*start) +
             " is not minimal");
        return v;
      }
    }
  }
  return v;
}

AxiomCheck verifyProjection(const CoalgebraCovering& cov) {
  const PathCoalgebra cover(cov.lifted.indexPtr());
  const PathCoalgebra base(cov.base.indexPtr());
  const auto& f = cov.smash.projection();
  auto project = [&](std::size_t cp) -> std::optional<SparseVector> {
    const auto& path = cov.coverIndex().path(cp);
    if (path.arrows.empty()) return SparseVector::unit(f.vertexMap[path.source]);
    std::vector<std::size_t> arrows;
    for (auto a : path.arrows) arrows.push_back(f.arrowMap[a]);
    return SparseVector::unit(*cov.base.index().findArrows(arrows));
  };
  AxiomCheck res = verifyCoalgebraMap(project, cover, base);
  if (!res.ok) return res;
  for (std::size_t i = 0; i < cov.lifted.dimension(); ++i) {
    SparseVector img;
    for (const auto& [cp, c] : cov.lifted.rows()[i]) img.axpy(c, *project(cp));
    if (!cov.base.contains(img)) {
      res.ok = false;
      res.reason = "projection of " + cov.coverIndex().format(cov.lifted.rows()[i]) + " leaves B";
      return res;
    }
  }
  return res;
}

CrossCheck theoremCovCrossCheck(const SubcoalgebraBasis& b, const ArrowWeighting& delta, const Pi1Presentation& pres,
                                const Window& window) {
  CrossCheck r;
  const auto h = isHomogeneous(b, delta);
  r.homogeneous = h.homogeneous;
  r.connected = isConnectedWeighting(b.index().quiver(), delta, pres);
  const auto verdict = isCoalgebraCovering(liftSubcoalgebra(b, delta, window));
  r.coveringOK = verdict.ok;
  r.witness = h.witness ? h.witness : verdict.witness;
  if (r.witness) r.witnessText = b.index().format(*r.witness);
  return r;
}

RelatorSet extractRelators(const SubcoalgebraBasis& b, const Pi1Presentation& pres) {
  RelatorSet out{pres, {}};
  const auto& index = b.index();
  for (const auto& block : minimalPartition(b)) {
    if (block.paths.size() < 2) continue;
    const auto p1 = block.paths.front();
    const Walk& w = pres.geodesic.at(block.source);
    for (std::size_t j = 1; j < block.paths.size(); ++j) {
      const auto pj = block.paths[j];
      Walk walk = concat(index.walk(pj), w);
      walk = concat(index.walk(p1).inverse(), walk);
      walk = concat(w.inverse(), walk);
      out.relators.push_back({walkToWord(pres, walk), walk, p1, pj});
    }
  }
  return out;
}

std::string UniversalGradingGroup::describe() const {
  return group.describe() + (abelianized ? " (abelianized)" : "");
}

UniversalGradingGroup universalGradingGroup(const SubcoalgebraBasis& b, const Pi1Presentation& pres) {
  const auto& q = b.index().quiver();
  const auto relators = extractRelators(b, pres);
  UniversalGradingGroup u;
  u.presentation.generatorCount = pres.rank();
  for (const auto& r : relators.relators) u.presentation.relators.push_back(r.word);
  const bool trivialRelators = std::all_of(relators.relators.begin(), relators.relators.end(),
                                           [](const Relator& r) { return r.word.empty(); });
  if (pres.rank() == 0) {
    u.group = Group::trivial();
  } else if (trivialRelators && pres.rank() == 1) {
    u.group = Group::integers();
    u.generatorImages = u.group.generators();
  } else if (trivialRelators) {
    u.group = Group::free(pres.rank());
    u.generatorImages = u.group.generators();
  } else {
    auto ab = abelianize(u.presentation);
    u.group = ab.group;
    u.generatorImages = ab.generatorImages;
    u.abelianization = std::move(ab);
    u.abelianized = true;
  }
  u.universalWeighting = constantWeighting(q, u.group);
  for (std::size_t k = 0; k < pres.rank(); ++k) u.universalWeighting.values[pres.coTree[k]] = u.generatorImages[k];
  return u;
}

CoalgebraCovering universalCover(const SubcoalgebraBasis& b, const UniversalGradingGroup& u, const Window& window) {
  return buildLiftedSubcoalgebra(b, u.universalWeighting, window);
}

FactorMapCheck universalFactorMap(const UniversalGradingGroup& u, const RelatorSet& relators,
                                  const SmashQuiver& universal, const SmashQuiver& target) {
  FactorMapCheck r;
  const auto& q = universal.base();
  const auto& pres = relators.presentation;
  const auto& delta = target.weighting();
  const auto& gp = delta.group;
  for (const auto& rel : relators.relators)
    if (!gp.isIdentity(weightWalk(delta, rel.walk))) r.relatorsVanish = false;

  std::vector<GroupElement> h;
  for (std::size_t k = 0; k < pres.rank(); ++k) h.push_back(weightWalk(delta, pres.fundamentalCycle(q, k)));
  auto mapElement = [&](const GroupElement& e) -> std::optional<GroupElement> {
    if (u.group.backend() == Backend::Free) return weightInTarget(gp, h, u.group.word(e));
    if (pres.rank() == 0) return gp.identity();
    if (!u.abelianized && pres.rank() == 1) return gp.power(h[0], e.payload.at(0));
    if (!u.abelianization || !gp.isAbelian()) return std::nullopt;
    GroupElement acc = gp.identity();
    for (std::size_t j = 0; j < e.payload.size(); ++j) {
      GroupElement unitImage = gp.identity();
      const auto& pre = u.abelianization->coordinatePreimages.at(j);
      for (std::size_t k = 0; k < pre.size(); ++k) unitImage = gp.multiply(unitImage, gp.power(h[k], pre[k]));
      acc = gp.multiply(acc, gp.power(unitImage, e.payload[j]));
    }
    return acc;
  };
  std::vector<GroupElement> gamma;
  for (std::size_t x = 0; x < q.vertexCount(); ++x) gamma.push_back(weightWalk(delta, pres.geodesic[x]));

  const auto& uq = universal.quiver();
  std::vector<std::optional<std::size_t>> vertexImage(uq.vertexCount());
  for (std::size_t v = 0; v < uq.vertexCount(); ++v) {
    const auto [x, gi] = universal.vertexCoords(v);
    const auto hu = mapElement(universal.window()[gi]);
    if (!hu) {
      r.ok = false;
      r.reason = "no factor map from " + u.describe() + " into " + gp.describe();
      return r;
    }
    vertexImage[v] = target.vertex(x, gp.multiply(gamma[x], *hu));
    if (vertexImage[v]) ++r.mappedVertices;
  }
  for (std::size_t a = 0; a < uq.arrowCount(); ++a) {
    const auto& arr = uq.arrow(a);
    if (!vertexImage[arr.source] || !vertexImage[arr.target]) continue;
    const auto [base, gi] = universal.arrowCoords(a);
    const auto img = target.arrow(base, gp.multiply(gamma[q.arrow(base).source], *mapElement(universal.window()[gi])));
    if (!img) continue;
    ++r.mappedArrows;
    const auto& ta = target.quiver().arrow(*img);
    if (ta.source != *vertexImage[arr.source] || ta.target != *vertexImage[arr.target]) {
      r.ok = false;
      r.reason = "arrow " + arr.name + " does not map compatibly";
      return r;
    }
  }
  if (!r.relatorsVanish) {
    r.ok = false;
    r.reason = "a relator has nontrivial weight in the target";
  }
  return r;
}

TreeChange relateSpanningTrees(const Quiver& q, const Pi1Presentation& first, const Pi1Presentation& second) {
  if (first.base != second.base) throw std::invalid_argument("spanning trees must share the base vertex");
  const Group f = Group::free(first.rank());
  std::vector<GroupElement> images;
  for (std::size_t k = 0; k < second.rank(); ++k)
    images.push_back(f.freeElement(walkToWord(first, second.fundamentalCycle(q, k))));
  auto weighting = [&](const Pi1Presentation& p) {
    ArrowWeighting w = constantWeighting(q, f);
    for (std::size_t k = 0; k < p.rank(); ++k) w.values[p.coTree[k]] = f.freeElement({static_cast<int>(k + 1)});
    return w;
  };
  const auto d1 = weighting(first);
  const auto d2 = weighting(second);
  TreeChange t{constantWeighting(q, f), std::nullopt};
  for (std::size_t a = 0; a < q.arrowCount(); ++a) t.translated.values[a] = weightInTarget(f, images, f.word(d2[a]));
  t.gamma = findTwist(q, d1, t.translated, first);
  return t;
}

}  // namespace covol

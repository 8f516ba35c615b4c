#include "covol/coalgebra.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace covol {

namespace {

void addOuter(Tensor2& t, const Rational& c, const SparseVector& left, const SparseVector& right) {
  for (const auto& [i, a] : left)
    for (const auto& [j, b] : right) addTerm(t, i, j, c * a * b);
}

std::string formatCombination(const SparseVector& v, const std::function<std::string(std::size_t)>& label) {
  if (v.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [i, c] : v) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (c < 0)
      s += "-";
    else if (!first)
      s += "+";
    if (mag != 1) s += toString(mag) + "*";
    s += label(i);
    first = false;
  }
  return s;
}

std::optional<std::size_t> walkIndex(const PathIndex& index, const Walk& w) {
  if (!w.isPath()) return std::nullopt;
  if (w.length() == 0) return w.start();
  std::vector<std::size_t> arrows;
  for (const auto& s : w.steps()) arrows.push_back(s.arrow);
  return index.findArrows(arrows);
}

}  // namespace

void addTerm(Tensor2& t, std::size_t left, std::size_t right, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t.try_emplace({left, right}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

void addTerm(Tensor3& t, const std::array<std::size_t, 3>& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

// ---------------------------------------------------------------------------
// PathIndex

PathIndex::PathIndex(const Quiver& q, std::size_t maxLength) : quiver_(q), maxLength_(maxLength) {
  for (const auto& a : q.arrows())
    if (a.name.size() != 1) compactNames_ = false;
  for (std::size_t v = 0; v < q.vertexCount(); ++v) paths_.push_back({v, v, {}});
  std::vector<std::size_t> previous;
  if (maxLength >= 1)
    for (std::size_t a = 0; a < q.arrowCount(); ++a) {
      paths_.push_back({q.arrow(a).source, q.arrow(a).target, {a}});
      previous.push_back(paths_.size() - 1);
    }
  for (std::size_t len = 2; len <= maxLength; ++len) {
    std::vector<std::size_t> current;
    for (auto pi : previous) {
      const Path base = paths_[pi];
      for (auto a : q.outArrows(base.target)) {
        Path p = base;
        p.arrows.push_back(a);
        p.target = q.arrow(a).target;
        paths_.push_back(std::move(p));
        current.push_back(paths_.size() - 1);
      }
    }
    previous = std::move(current);
  }
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    if (!paths_[i].arrows.empty()) byArrows_[paths_[i].arrows] = i;
    between_[{paths_[i].source, paths_[i].target}].push_back(i);
  }
  splits_.resize(paths_.size());
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    const auto& p = paths_[i];
    const std::size_t n = p.length();
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<std::size_t> early(p.arrows.begin(), p.arrows.begin() + static_cast<std::ptrdiff_t>(k));
      std::vector<std::size_t> late(p.arrows.begin() + static_cast<std::ptrdiff_t>(k), p.arrows.end());
      const std::size_t e = early.empty() ? p.source : byArrows_.at(early);
      const std::size_t l = late.empty() ? p.target : byArrows_.at(late);
      splits_[i].emplace_back(l, e);
    }
  }
}

std::optional<std::size_t> PathIndex::find(const Path& p) const {
  if (p.arrows.empty()) {
    if (p.source < quiver_.vertexCount() && p.source == p.target) return p.source;
    return std::nullopt;
  }
  return findArrows(p.arrows);
}

std::optional<std::size_t> PathIndex::findArrows(const std::vector<std::size_t>& arrows) const {
  auto it = byArrows_.find(arrows);
  if (it == byArrows_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::size_t>& PathIndex::pathsBetween(std::size_t x, std::size_t y) const {
  static const std::vector<std::size_t> kEmpty;
  auto it = between_.find({x, y});
  return it == between_.end() ? kEmpty : it->second;
}

Walk PathIndex::walk(std::size_t i) const {
  const auto& p = paths_.at(i);
  if (p.arrows.empty()) return Walk::at(p.source);
  return Walk::path(quiver_, p.arrows);
}

std::string PathIndex::format(std::size_t i) const {
  const auto& p = paths_.at(i);
  if (p.arrows.empty()) return quiver_.vertexName(p.source);
  std::string s;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
    if (!s.empty() && !compactNames_) s += ".";
    s += quiver_.arrow(*it).name;
  }
  return s;
}

std::string PathIndex::format(const SparseVector& v) const {
  return formatCombination(v, [this](std::size_t i) { return format(i); });
}

PathIndexPtr makePathIndex(const Quiver& q, std::size_t maxLength) {
  return std::make_shared<const PathIndex>(q, maxLength);
}

// ---------------------------------------------------------------------------
// BasisCoalgebra

Tensor2 BasisCoalgebra::delta(const SparseVector& v) const {
  Tensor2 out;
  for (const auto& [i, c] : v)
    for (const auto& [key, d] : deltaBasis(i)) addTerm(out, key.first, key.second, c * d);
  return out;
}

Rational BasisCoalgebra::counit(const SparseVector& v) const {
  Rational r = 0;
  for (const auto& [i, c] : v) r += c * counitBasis(i);
  return r;
}

bool BasisCoalgebra::isExact(const SparseVector& v) const {
  for (const auto& [i, c] : v)
    if (!isExact(i)) return false;
  return true;
}

std::string BasisCoalgebra::format(const SparseVector& v) const {
  return formatCombination(v, [this](std::size_t i) { return label(i); });
}

Tensor2 PathCoalgebra::deltaBasis(std::size_t i) const {
  Tensor2 t;
  for (const auto& [later, earlier] : index_->splittings(i)) addTerm(t, later, earlier, 1);
  return t;
}

Rational PathCoalgebra::counitBasis(std::size_t i) const { return index_->path(i).length() == 0 ? 1 : 0; }

std::vector<GroupElement> pathWeights(const PathIndex& index, const ArrowWeighting& delta) {
  std::vector<GroupElement> out;
  out.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) out.push_back(weightWalk(delta, index.walk(i)));
  return out;
}

// ---------------------------------------------------------------------------
// SmashPathCoalgebra

SmashPathCoalgebra::SmashPathCoalgebra(PathIndexPtr index, ArrowWeighting delta, Window window)
    : index_(std::move(index)), delta_(std::move(delta)), window_(std::move(window)) {
  validate(index_->quiver(), delta_);
  if (!(window_.group() == delta_.group)) throw std::invalid_argument("window and weighting use different groups");
  weights_ = pathWeights(*index_, delta_);
  const auto& g = delta_.group;
  exact_.assign(dimension(), true);
  for (std::size_t p = 0; p < index_->size(); ++p)
    for (std::size_t gi = 0; gi < window_.size(); ++gi)
      for (const auto& [later, earlier] : index_->splittings(p))
        if (!window_.contains(g.multiply(weights_[earlier], window_[gi]))) exact_[symbol(p, gi)] = false;
}

std::optional<std::size_t> SmashPathCoalgebra::symbol(std::size_t path, const GroupElement& g) const {
  const auto gi = window_.find(g);
  if (!gi) return std::nullopt;
  return symbol(path, *gi);
}

Tensor2 SmashPathCoalgebra::deltaBasis(std::size_t i) const {
  const auto p = symbolPath(i);
  const auto& g = window_[symbolWindow(i)];
  Tensor2 t;
  for (const auto& [later, earlier] : index_->splittings(p)) {
    const auto left = symbol(later, delta_.group.multiply(weights_[earlier], g));
    if (!left) continue;
    addTerm(t, *left, symbol(earlier, symbolWindow(i)), 1);
  }
  return t;
}

Rational SmashPathCoalgebra::counitBasis(std::size_t i) const {
  return index_->path(symbolPath(i)).length() == 0 ? 1 : 0;
}

std::string SmashPathCoalgebra::label(std::size_t i) const {
  return index_->format(symbolPath(i)) + "[" + delta_.group.format(window_[symbolWindow(i)]) + "]";
}

// ---------------------------------------------------------------------------
// SubcoalgebraBasis

SubcoalgebraBasis SubcoalgebraBasis::fromRows(PathIndexPtr index, std::span<const SparseVector> rows) {
  SubcoalgebraBasis b;
  for (const auto& r : rows)
    for (const auto& [i, c] : r)
      if (i >= index->size()) throw std::invalid_argument("row mentions a path outside the truncation");
  b.index_ = std::move(index);
  b.space_ = rref(rows);
  return b;
}

SparseVector SubcoalgebraBasis::coordinates(const SparseVector& v) const {
  SparseVector out;
  const auto& piv = space_.pivots();
  for (std::size_t i = 0; i < piv.size(); ++i) out.set(i, v.get(piv[i]));
  return out;
}

std::pair<std::size_t, std::size_t> SubcoalgebraBasis::rowEndpoints(std::size_t i) const {
  const auto& p = index_->path(*space_.rows().at(i).leading());
  return {p.source, p.target};
}

Subspace SubcoalgebraBasis::component(std::size_t x, std::size_t y) const {
  Subspace s;
  for (std::size_t i = 0; i < dimension(); ++i)
    if (rowEndpoints(i) == std::make_pair(x, y)) s.insert(rows()[i]);
  return s;
}

bool SubcoalgebraBasis::isAdmissible() const {
  const auto& q = index_->quiver();
  for (std::size_t v = 0; v < q.vertexCount(); ++v)
    if (!contains(SparseVector::unit(v))) return false;
  if (index_->maxLength() >= 1)
    for (std::size_t a = 0; a < q.arrowCount(); ++a)
      if (!contains(SparseVector::unit(index_->arrowPath(a)))) return false;
  return true;
}

Tensor2 SubcoalgebraBasis::deltaCoordinates(std::size_t row) const {
  PathCoalgebra pc(index_);
  const Tensor2 full = pc.delta(rows().at(row));
  const auto& piv = space_.pivots();
  std::map<std::size_t, std::size_t> rowOfPivot;
  for (std::size_t i = 0; i < piv.size(); ++i) rowOfPivot[piv[i]] = i;
  Tensor2 out;
  for (const auto& [key, c] : full) {
    auto l = rowOfPivot.find(key.first);
    auto r = rowOfPivot.find(key.second);
    if (l != rowOfPivot.end() && r != rowOfPivot.end()) addTerm(out, l->second, r->second, c);
  }
  return out;
}

std::optional<std::size_t> SubcoalgebraBasis::closureFailure() const {
  PathCoalgebra pc(index_);
  for (std::size_t i = 0; i < dimension(); ++i) {
    const Tensor2 full = pc.delta(rows()[i]);
    Tensor2 rebuilt;
    for (const auto& [key, c] : deltaCoordinates(i)) addOuter(rebuilt, c, rows()[key.first], rows()[key.second]);
    if (rebuilt != full) return i;
  }
  return std::nullopt;
}

SubcoalgebraBasis subcoalgebraClosure(PathIndexPtr index, std::span<const SparseVector> generators) {
  const auto& q = index->quiver();
  Subspace space;
  for (std::size_t v = 0; v < q.vertexCount(); ++v) space.insert(SparseVector::unit(v));
  if (index->maxLength() >= 1)
    for (std::size_t a = 0; a < q.arrowCount(); ++a) space.insert(SparseVector::unit(index->arrowPath(a)));
  for (const auto& g : generators) {
    for (const auto& [i, c] : g)
      if (i >= index->size())
        throw std::invalid_argument("generator leaves the truncation at length " + std::to_string(index->maxLength()));
    space.insert(g);
  }
  PathCoalgebra pc(index);
  std::set<SparseVector> processed;
  bool grew = true;
  while (grew) {
    grew = false;
    const auto rows = space.rows();
    for (const auto& r : rows) {
      if (processed.count(r)) continue;
      processed.insert(r);
      std::map<std::size_t, SparseVector> leftSlices;
      std::map<std::size_t, SparseVector> rightSlices;
      for (const auto& [key, c] : pc.delta(r)) {
        leftSlices[key.second].add(key.first, c);
        rightSlices[key.first].add(key.second, c);
      }
      for (const auto& [k, v] : leftSlices) grew = space.insert(v) || grew;
      for (const auto& [k, v] : rightSlices) grew = space.insert(v) || grew;
    }
  }
  return SubcoalgebraBasis::fromRows(std::move(index), space.rows());
}

Rational SubcoalgebraCoalgebra::counitBasis(std::size_t i) const {
  Rational r = 0;
  for (const auto& [p, c] : b_.rows().at(i))
    if (b_.index().path(p).length() == 0) r += c;
  return r;
}

// ---------------------------------------------------------------------------
// Minimal elements and homogeneity

bool isMinimalElement(const Subspace& space, const SparseVector& v) {
  const auto support = v.support();
  if (support.size() < 2 || !space.contains(v)) return false;
  if (support.size() > 20) throw std::invalid_argument("minimality test limited to 20 support paths");
  const std::size_t n = support.size();
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    SparseVector sub;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1u << k)) sub.set(support[k], v.get(support[k]));
    if (space.contains(sub)) return false;
  }
  return true;
}

std::vector<MinimalBlock> minimalPartition(const SubcoalgebraBasis& b) {
  std::vector<MinimalBlock> out;
  for (auto& block : finestBlockPartition(b.space())) {
    MinimalBlock m;
    const auto& p = b.index().path(block.front());
    m.source = p.source;
    m.target = p.target;
    if (block.size() >= 2) {
      const std::set<std::size_t> members(block.begin(), block.end());
      for (const auto& r : b.rows()) {
        const auto sup = r.support();
        if (std::all_of(sup.begin(), sup.end(), [&](std::size_t i) { return members.count(i) > 0; })) {
          m.representative = r;
          break;
        }
      }
    }
    m.paths = std::move(block);
    out.push_back(std::move(m));
  }
  return out;
}

HomogeneityResult isHomogeneous(const SubcoalgebraBasis& b, const ArrowWeighting& delta) {
  const auto weights = pathWeights(b.index(), delta);
  HomogeneityResult res;
  std::map<std::tuple<std::size_t, std::size_t, GroupElement>, std::vector<std::size_t>> classes;
  std::set<std::size_t> supported;
  for (const auto& r : b.rows())
    for (const auto& [i, c] : r) supported.insert(i);
  for (auto i : supported) {
    const auto& p = b.index().path(i);
    classes[{p.source, p.target, weights[i]}].push_back(i);
  }
  std::size_t total = 0;
  for (const auto& [key, coords] : classes) total += intersectionWithCoordinatesDim(b.space(), coords);
  res.homogeneous = total == b.dimension();
  if (!res.homogeneous)
    for (const auto& r : b.rows()) {
      const auto sup = r.support();
      if (std::any_of(sup.begin(), sup.end(), [&](std::size_t i) { return !(weights[i] == weights[sup.front()]); })) {
        res.witness = r;
        break;
      }
    }
  return res;
}

bool blocksHaveConstantWeight(const SubcoalgebraBasis& b, const ArrowWeighting& delta) {
  const auto weights = pathWeights(b.index(), delta);
  for (const auto& block : minimalPartition(b))
    for (auto i : block.paths)
      if (!(weights[i] == weights[block.paths.front()])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// SmashCoalgebra

SmashCoalgebra::SmashCoalgebra(SubcoalgebraBasis b, ArrowWeighting delta, Window window)
    : b_(std::move(b)), delta_(std::move(delta)), window_(std::move(window)) {
  if (!isHomogeneous(b_, delta_).homogeneous)
    throw std::invalid_argument("smash coproduct needs a homogeneous subcoalgebra");
  const auto weights = pathWeights(b_.index(), delta_);
  for (std::size_t i = 0; i < b_.dimension(); ++i) {
    rowWeights_.push_back(weights[*b_.rows()[i].leading()]);
    rowDelta_.push_back(b_.deltaCoordinates(i));
  }
  const auto& g = delta_.group;
  exact_.assign(dimension(), true);
  for (std::size_t i = 0; i < b_.dimension(); ++i)
    for (std::size_t gi = 0; gi < window_.size(); ++gi)
      for (const auto& [key, c] : rowDelta_[i])
        if (!window_.contains(g.multiply(rowWeights_[key.second], window_[gi]))) exact_[symbol(i, gi)] = false;
}

Tensor2 SmashCoalgebra::deltaBasis(std::size_t s) const {
  const auto i = s / window_.size();
  const auto gi = s % window_.size();
  const auto& g = delta_.group;
  Tensor2 t;
  for (const auto& [key, c] : rowDelta_.at(i)) {
    const auto left = window_.find(g.multiply(rowWeights_[key.second], window_[gi]));
    if (!left) continue;
    addTerm(t, symbol(key.first, *left), symbol(key.second, gi), c);
  }
  return t;
}

Rational SmashCoalgebra::counitBasis(std::size_t s) const {
  Rational r = 0;
  for (const auto& [p, c] : b_.rows().at(s / window_.size()))
    if (b_.index().path(p).length() == 0) r += c;
  return r;
}

std::string SmashCoalgebra::label(std::size_t s) const {
  const auto i = s / window_.size();
  return "(" + b_.index().format(b_.rows().at(i)) + ")[" + delta_.group.format(window_[s % window_.size()]) + "]";
}

SparseVector SmashCoalgebra::embed(std::size_t s, const SmashPathCoalgebra& ambient) const {
  const auto& g = window_[s % window_.size()];
  const auto gi = ambient.window().find(g);
  if (!gi) throw std::invalid_argument("ambient window lacks " + delta_.group.format(g));
  SparseVector out;
  for (const auto& [p, c] : b_.rows().at(s / window_.size())) out.set(ambient.symbol(p, *gi), c);
  return out;
}

// ---------------------------------------------------------------------------
// Verification harness

AxiomCheck checkCoalgebraAxioms(const BasisCoalgebra& c) {
  AxiomCheck res;
  std::map<std::size_t, Tensor2> cache;
  auto delta = [&](std::size_t i) -> const Tensor2& {
    auto it = cache.find(i);
    if (it == cache.end()) it = cache.emplace(i, c.deltaBasis(i)).first;
    return it->second;
  };
  for (std::size_t i = 0; i < c.dimension(); ++i) {
    if (!c.isExact(i)) {
      ++res.skipped;
      continue;
    }
    const auto& d = delta(i);
    bool termsExact = true;
    for (const auto& [key, v] : d)
      if (!c.isExact(key.first) || !c.isExact(key.second)) termsExact = false;
    if (!termsExact) {
      ++res.skipped;
      continue;
    }
    Tensor3 lhs, rhs;
    SparseVector leftCounit, rightCounit;
    for (const auto& [key, v] : d) {
      for (const auto& [k2, w] : delta(key.first)) addTerm(lhs, {k2.first, k2.second, key.second}, v * w);
      for (const auto& [k2, w] : delta(key.second)) addTerm(rhs, {key.first, k2.first, k2.second}, v * w);
      leftCounit.add(key.second, v * c.counitBasis(key.first));
      rightCounit.add(key.first, v * c.counitBasis(key.second));
    }
    ++res.checked;
    const SparseVector unit = SparseVector::unit(i);
    if (lhs != rhs) {
      res.ok = false;
      res.failing = i;
      res.reason = "coassociativity fails at " + c.label(i);
      return res;
    }
    if (leftCounit != unit || rightCounit != unit) {
      res.ok = false;
      res.failing = i;
      res.reason = "counit law fails at " + c.label(i);
      return res;
    }
  }
  return res;
}

AxiomCheck verifyCoalgebraMap(const BasisMap& f, const BasisCoalgebra& c, const BasisCoalgebra& d,
                              const std::vector<std::size_t>* domain) {
  AxiomCheck res;
  std::map<std::size_t, std::optional<SparseVector>> cache;
  auto image = [&](std::size_t i) -> const std::optional<SparseVector>& {
    auto it = cache.find(i);
    if (it == cache.end()) it = cache.emplace(i, f(i)).first;
    return it->second;
  };
  std::vector<std::size_t> all;
  if (!domain) {
    all.resize(c.dimension());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    domain = &all;
  }
  for (auto i : *domain) {
    const auto& fi = image(i);
    if (!c.isExact(i) || !fi || !d.isExact(*fi)) {
      ++res.skipped;
      continue;
    }
    Tensor2 lhs;
    bool defined = true;
    for (const auto& [key, v] : c.deltaBasis(i)) {
      const auto& l = image(key.first);
      const auto& r = image(key.second);
      if (!l || !r) {
        defined = false;
        break;
      }
      addOuter(lhs, v, *l, *r);
    }
    if (!defined) {
      ++res.skipped;
      continue;
    }
    ++res.checked;
    if (lhs != d.delta(*fi)) {
      res.ok = false;
      res.failing = i;
      res.reason = "coproduct not preserved at " + c.label(i);
      return res;
    }
    if (d.counit(*fi) != c.counitBasis(i)) {
      res.ok = false;
      res.failing = i;
      res.reason = "counit not preserved at " + c.label(i);
      return res;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// E-isomorphism

SmashCover::SmashCover(const Quiver& q, const ArrowWeighting& delta, const Window& window, std::size_t maxLength)
    : smash_(smashQuiver(q, delta, window)),
      smashCoalgebra_(makePathIndex(q, maxLength), delta, window),
      coverCoalgebra_(makePathIndex(smash_.quiver(), maxLength)) {}

std::optional<std::size_t> SmashCover::e(std::size_t symbol) const {
  const auto p = smashCoalgebra_.symbolPath(symbol);
  const auto& g = smashCoalgebra_.window()[smashCoalgebra_.symbolWindow(symbol)];
  const auto& path = baseIndex().path(p);
  const auto start = smash_.vertex(path.source, g);
  if (!start) return std::nullopt;
  const auto lifted = tryLiftWalk(smash_.quiver(), smash_.base(), smash_.projection(), baseIndex().walk(p), *start);
  if (!lifted) return std::nullopt;
  return walkIndex(coverIndex(), *lifted);
}

std::size_t SmashCover::eInverse(std::size_t coverPath) const {
  const auto& cp = coverIndex().path(coverPath);
  const auto [u, gi] = smash_.vertexCoords(cp.source);
  std::size_t base = u;
  if (!cp.arrows.empty()) {
    std::vector<std::size_t> arrows;
    for (auto a : cp.arrows) arrows.push_back(smash_.projection().arrowMap[a]);
    base = *baseIndex().findArrows(arrows);
  }
  return smashCoalgebra_.symbol(base, gi);
}

EIsoReport verifyEIso(const SmashCover& sc) {
  EIsoReport r;
  const auto& smash = sc.smashCoalgebra();
  std::set<std::size_t> hit;
  std::vector<std::size_t> interior;
  for (std::size_t s = 0; s < smash.dimension(); ++s) {
    const auto img = sc.e(s);
    if (img.has_value() != smash.isExact(s)) r.bijective = false;
    if (!img) continue;
    interior.push_back(s);
    if (!hit.insert(*img).second) r.bijective = false;
    if (sc.eInverse(*img) != s) r.bijective = false;
  }
  r.interiorSymbols = interior.size();
  r.coverPaths = sc.coverIndex().size();
  if (hit.size() != r.coverPaths) r.bijective = false;
  for (std::size_t cp = 0; cp < r.coverPaths; ++cp)
    if (sc.e(sc.eInverse(cp)) != cp) r.bijective = false;
  r.forward = verifyCoalgebraMap(
      [&](std::size_t s) -> std::optional<SparseVector> {
        if (auto i = sc.e(s)) return SparseVector::unit(*i);
        return std::nullopt;
      },
      smash, sc.coverCoalgebra(), &interior);
  r.backward = verifyCoalgebraMap(
      [&](std::size_t cp) -> std::optional<SparseVector> { return SparseVector::unit(sc.eInverse(cp)); },
      sc.coverCoalgebra(), smash);
  return r;
}

// ---------------------------------------------------------------------------
// Coalgebra isomorphisms from liftings

std::optional<Walk> liftAndAct(const GaloisCover& cover, const Walk& path, std::size_t start, const GroupElement& g) {
  const auto lifted = tryLiftWalk(cover.cover(), cover.base(), cover.projection(), path, start);
  if (!lifted) return std::nullopt;
  const auto s = cover.actVertex(start, g);
  if (!s) return std::nullopt;
  std::vector<Step> steps;
  for (const auto& st : lifted->steps()) {
    const auto a = cover.actArrow(st.arrow, g);
    if (!a) return std::nullopt;
    steps.push_back({*a, st.forward});
  }
  return Walk::fromSteps(cover.cover(), *s, std::move(steps));
}

CsmReport verifyCsmIso(const GaloisCover& cover, const std::vector<std::size_t>& lifting, std::size_t maxLength,
                       const Window& window) {
  CsmReport r;
  r.inducedWeighting = weightingFromLifting(cover, lifting);
  const SmashPathCoalgebra smash(makePathIndex(cover.base(), maxLength), r.inducedWeighting, window);
  const PathCoalgebra coverPc(makePathIndex(cover.cover(), maxLength));
  const auto& bi = smash.index();
  const auto& ci = coverPc.index();

  auto phi = [&](std::size_t s) -> std::optional<std::size_t> {
    const auto p = smash.symbolPath(s);
    const auto lifted =
        liftAndAct(cover, bi.walk(p), lifting[bi.path(p).source], window[smash.symbolWindow(s)]);
    if (!lifted) return std::nullopt;
    return walkIndex(ci, *lifted);
  };
  auto project = [&](std::size_t cp) {
    const auto& path = ci.path(cp);
    if (path.arrows.empty()) return cover.projection().vertexMap[path.source];
    std::vector<std::size_t> arrows;
    for (auto a : path.arrows) arrows.push_back(cover.projection().arrowMap[a]);
    return *bi.findArrows(arrows);
  };
  auto psi = [&](std::size_t cp) -> std::optional<std::size_t> {
    const auto& path = ci.path(cp);
    const auto x = cover.projection().vertexMap[path.source];
    const auto sigma = cover.deckElement(lifting[x], path.source);
    if (!sigma) return std::nullopt;
    return smash.symbol(project(cp), *sigma);
  };

  for (std::size_t s = 0; s < smash.dimension(); ++s) {
    const auto img = phi(s);
    if (!img) continue;
    const auto back = psi(*img);
    if (!back) continue;
    ++r.roundTripsSymbols;
    if (*back != s) {
      r.psiPhiIdentity = false;
      if (r.failure.empty()) r.failure = "psi(phi(" + smash.label(s) + ")) != " + smash.label(s);
    }
  }
  for (std::size_t cp = 0; cp < ci.size(); ++cp) {
    const auto img = psi(cp);
    if (!img) continue;
    if (smash.symbolPath(*img) != project(cp)) r.projectionCompatible = false;
    const auto back = phi(*img);
    if (!back) continue;
    ++r.roundTripsPaths;
    if (*back != cp) {
      r.phiPsiIdentity = false;
      if (r.failure.empty()) r.failure = "phi(psi(" + ci.format(cp) + ")) != " + ci.format(cp);
    }
  }
  r.phi = verifyCoalgebraMap(
      [&](std::size_t s) -> std::optional<SparseVector> {
        if (auto i = phi(s)) return SparseVector::unit(*i);
        return std::nullopt;
      },
      smash, coverPc);
  r.psi = verifyCoalgebraMap(
      [&](std::size_t cp) -> std::optional<SparseVector> {
        if (auto i = psi(cp)) return SparseVector::unit(*i);
        return std::nullopt;
      },
      coverPc, smash);
  return r;
}

BasisMap thetaGamma(const SmashPathCoalgebra& from, const SmashPathCoalgebra& to, const VertexWeighting& gamma) {
  return [&from, &to, gamma](std::size_t s) -> std::optional<SparseVector> {
    const auto p = from.symbolPath(s);
    const auto& g = from.window()[from.symbolWindow(s)];
    const auto& grp = gamma.group;
    const auto image = grp.multiply(grp.inverse(gamma[from.index().path(p).source]), g);
    if (auto t = to.symbol(p, image)) return SparseVector::unit(*t);
    return std::nullopt;
  };
}

ThetaReport verifyThetaGamma(const SmashPathCoalgebra& from, const SmashPathCoalgebra& to,
                             const VertexWeighting& gamma) {
  ThetaReport r;
  const auto theta = thetaGamma(from, to, gamma);
  r.map = verifyCoalgebraMap(theta, from, to);
  std::set<std::size_t> seen;
  const auto& grp = gamma.group;
  auto generatorsAndInverses = grp.generators();
  for (std::size_t i = 0, n = generatorsAndInverses.size(); i < n; ++i)
    generatorsAndInverses.push_back(grp.inverse(generatorsAndInverses[i]));
  for (std::size_t s = 0; s < from.dimension(); ++s) {
    const auto img = theta(s);
    if (!img) continue;
    const auto t = img->leading().value();
    if (!seen.insert(t).second) r.injective = false;
    if (to.symbolPath(t) != from.symbolPath(s)) r.commutesWithProjection = false;
    for (const auto& h : generatorsAndInverses) {
      const auto& g = from.window()[from.symbolWindow(s)];
      const auto moved = from.symbol(from.symbolPath(s), grp.multiply(g, h));
      if (!moved) continue;
      const auto movedImg = theta(*moved);
      const auto expected = to.symbol(to.symbolPath(t), grp.multiply(to.window()[to.symbolWindow(t)], h));
      if (!movedImg || !expected) continue;
      if (movedImg->leading().value() != *expected) r.commutesWithAction = false;
    }
  }
  return r;
}

}  // namespace covol

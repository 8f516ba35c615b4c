#include "covol/voltage.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace covol {

namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

ArrowWeighting constantWeighting(const Quiver& q, const Group& g) {
  return {g, std::vector<GroupElement>(q.arrowCount(), g.identity())};
}

VertexWeighting identityVertexWeighting(const Quiver& q, const Group& g) {
  return {g, std::vector<GroupElement>(q.vertexCount(), g.identity())};
}

void validate(const Quiver& q, const ArrowWeighting& w) {
  if (w.values.size() != q.arrowCount())
    throw std::invalid_argument("arrow weighting must assign every arrow");
  for (const auto& v : w.values) w.group.check(v);
}

void validate(const Quiver& q, const VertexWeighting& w) {
  if (w.values.size() != q.vertexCount())
    throw std::invalid_argument("vertex weighting must assign every vertex");
  for (const auto& v : w.values) w.group.check(v);
}

GroupElement weightWalk(const ArrowWeighting& delta, const Walk& w) {
  const auto& g = delta.group;
  GroupElement acc = g.identity();
  for (const auto& s : w.steps()) {
    const auto& d = delta[s.arrow];
    acc = g.multiply(s.forward ? d : g.inverse(d), acc);
  }
  return acc;
}

bool isConnectedWeighting(const Quiver& q, const ArrowWeighting& delta, const Pi1Presentation& pres) {
  std::vector<GroupElement> images;
  for (std::size_t k = 0; k < pres.rank(); ++k) images.push_back(weightWalk(delta, pres.fundamentalCycle(q, k)));
  return generates(delta.group, images);
}

ArrowWeighting twist(const Quiver& q, const ArrowWeighting& delta, const VertexWeighting& gamma) {
  if (!(delta.group == gamma.group)) throw std::invalid_argument("twist needs weightings into the same group");
  const auto& g = delta.group;
  ArrowWeighting out{g, {}};
  for (std::size_t a = 0; a < q.arrowCount(); ++a) {
    const auto& arr = q.arrow(a);
    out.values.push_back(g.multiply(g.inverse(gamma[arr.target]), g.multiply(delta[a], gamma[arr.source])));
  }
  return out;
}

VertexWeighting pointwiseProduct(const VertexWeighting& a, const VertexWeighting& b) {
  if (!(a.group == b.group) || a.values.size() != b.values.size())
    throw std::invalid_argument("pointwise product needs matching vertex weightings");
  VertexWeighting out{a.group, {}};
  for (std::size_t i = 0; i < a.values.size(); ++i) out.values.push_back(a.group.multiply(a[i], b[i]));
  return out;
}

std::optional<VertexWeighting> findTwist(const Quiver& q, const ArrowWeighting& d1, const ArrowWeighting& d2,
                                         const Pi1Presentation& pres) {
  if (!(d1.group == d2.group)) return std::nullopt;
  const auto& g = d1.group;
  VertexWeighting gamma{g, std::vector<GroupElement>(q.vertexCount(), g.identity())};
  // Along the tree geodesics: γ(t) = δ₁(a)γ(s)δ₂(a)⁻¹.
  for (std::size_t v = 0; v < q.vertexCount(); ++v) {
    GroupElement cur = g.identity();
    std::size_t at = pres.base;
    for (const auto& s : pres.geodesic[v].steps()) {
      const auto& arr = q.arrow(s.arrow);
      if (s.forward) {
        cur = g.multiply(g.multiply(d1[s.arrow], cur), g.inverse(d2[s.arrow]));
        at = arr.target;
      } else {
        cur = g.multiply(g.multiply(g.inverse(d1[s.arrow]), cur), d2[s.arrow]);
        at = arr.source;
      }
    }
    if (at != v) return std::nullopt;
    gamma.values[v] = cur;
  }
  if (twist(q, d1, gamma) == d2) return gamma;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Window

Window::Window(const Group& g, std::vector<GroupElement> elements) : group_(g) {
  for (auto& e : elements) {
    g.check(e);
    if (index_.count(e)) continue;
    index_.emplace(e, elements_.size());
    elements_.push_back(std::move(e));
  }
  if (!index_.count(g.identity())) throw std::invalid_argument("window must contain the identity");
}

Window Window::ball(const Group& g, std::size_t radius) { return Window(g, g.ball(radius)); }

std::optional<std::size_t> Window::find(const GroupElement& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// SmashQuiver

SmashQuiver::SmashQuiver(const Quiver& base, const ArrowWeighting& delta, const Window& window)
    : base_(base), delta_(delta), window_(window) {
  validate(base, delta);
  if (!(window.group() == delta.group)) throw std::invalid_argument("window and weighting use different groups");
  const auto& g = delta.group;
  for (std::size_t gi = 0; gi < window.size(); ++gi)
    for (std::size_t u = 0; u < base.vertexCount(); ++u) {
      const auto v = quiver_.addVertex(base.vertexName(u) + "[" + g.format(window[gi]) + "]");
      vertexCoords_.emplace_back(u, gi);
      vertexIndex_[{u, gi}] = v;
      projection_.vertexMap.push_back(u);
    }
  for (std::size_t gi = 0; gi < window.size(); ++gi)
    for (std::size_t a = 0; a < base.arrowCount(); ++a) {
      const auto& arr = base.arrow(a);
      const auto tgt = window.find(g.multiply(delta[a], window[gi]));
      if (!tgt) continue;
      const auto idx = quiver_.addArrow(arr.name + "[" + g.format(window[gi]) + "]", vertexIndex_.at({arr.source, gi}),
                                        vertexIndex_.at({arr.target, *tgt}));
      arrowCoords_.emplace_back(a, gi);
      arrowIndex_[{a, gi}] = idx;
      projection_.arrowMap.push_back(a);
    }
  interior_.assign(quiver_.vertexCount(), false);
  for (std::size_t v = 0; v < quiver_.vertexCount(); ++v) {
    const auto [u, gi] = vertexCoords_[v];
    interior_[v] = quiver_.outArrows(v).size() == base.outArrows(u).size() &&
                   quiver_.inArrows(v).size() == base.inArrows(u).size();
  }
}

std::size_t SmashQuiver::interiorCount() const {
  return static_cast<std::size_t>(std::count(interior_.begin(), interior_.end(), true));
}

std::optional<std::size_t> SmashQuiver::vertex(std::size_t baseVertex, const GroupElement& g) const {
  const auto gi = window_.find(g);
  if (!gi) return std::nullopt;
  auto it = vertexIndex_.find({baseVertex, *gi});
  if (it == vertexIndex_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> SmashQuiver::arrow(std::size_t baseArrow, const GroupElement& g) const {
  const auto gi = window_.find(g);
  if (!gi) return std::nullopt;
  auto it = arrowIndex_.find({baseArrow, *gi});
  if (it == arrowIndex_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> SmashQuiver::actVertex(std::size_t v, const GroupElement& h) const {
  const auto [u, gi] = vertexCoords_.at(v);
  return vertex(u, window_.group().multiply(window_[gi], h));
}

std::optional<std::size_t> SmashQuiver::actArrow(std::size_t a, const GroupElement& h) const {
  const auto [b, gi] = arrowCoords_.at(a);
  return arrow(b, window_.group().multiply(window_[gi], h));
}

PartialAutomorphism SmashQuiver::deckAction(const GroupElement& h) const {
  window_.group().check(h);
  PartialAutomorphism p;
  for (std::size_t v = 0; v < quiver_.vertexCount(); ++v) {
    p.vertexMap.push_back(actVertex(v, h));
    if (!p.vertexMap.back()) p.undefinedVertices.push_back(v);
  }
  for (std::size_t a = 0; a < quiver_.arrowCount(); ++a) p.arrowMap.push_back(actArrow(a, h));
  return p;
}

std::string SmashQuiver::toDot(std::string_view graphName) const {
  std::ostringstream os;
  os << "digraph \"" << escape(graphName) << "\" {\n";
  os << "  rankdir=LR;\n";
  for (std::size_t u = 0; u < base_.vertexCount(); ++u) {
    os << "  { rank=same;";
    for (std::size_t gi = 0; gi < window_.size(); ++gi)
      os << " \"" << escape(quiver_.vertexName(vertexIndex_.at({u, gi}))) << "\";";
    os << " }\n";
  }
  for (std::size_t v = 0; v < quiver_.vertexCount(); ++v) {
    os << "  \"" << escape(quiver_.vertexName(v)) << "\"";
    if (!interior_[v]) os << " [style=dashed]";
    os << ";\n";
  }
  for (const auto& a : quiver_.arrows())
    os << "  \"" << escape(quiver_.vertexName(a.source)) << "\" -> \"" << escape(quiver_.vertexName(a.target))
       << "\" [label=\"" << escape(a.name) << "\"];\n";
  os << "}\n";
  return os.str();
}

SmashQuiver smashQuiver(const Quiver& q, const ArrowWeighting& delta, const Window& window) {
  SmashQuiver s(q, delta, window);
  if (s.interiorCount() == 0) throw std::invalid_argument("window too small: no interior vertices");
  return s;
}

// ---------------------------------------------------------------------------
// GaloisCover

GaloisCover GaloisCover::fromSmash(SmashQuiver smash) {
  GaloisCover c;
  c.base_ = smash.base();
  c.cover_ = smash.quiver();
  c.projection_ = smash.projection();
  c.group_ = smash.window().group();
  c.smash_ = std::move(smash);
  return c;
}

GaloisCover GaloisCover::fromFinite(Quiver cover, Quiver base, QuiverMorphism f) {
  if (base.vertexCount() == 0) throw std::invalid_argument("empty base quiver");
  if (!cover.isConnected()) throw std::invalid_argument("cover must be connected");
  const auto check = isCovering(cover, base, f);
  if (!check.ok) throw std::invalid_argument("not a covering: " + check.reason);
  GaloisCover c;
  for (std::size_t v = 0; v < cover.vertexCount(); ++v)
    if (f.vertexMap[v] == 0) c.fiber0_.push_back(v);
  for (auto v : c.fiber0_) {
    auto d = deckTransformation(cover, base, f, c.fiber0_.front(), v);
    if (!d) throw std::invalid_argument("covering is not Galois: no deck transformation reaches " + cover.vertexName(v));
    c.deck_.push_back(std::move(*d));
  }
  const std::size_t n = c.deck_.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // apply i, then j
      const auto img = c.deck_[j].vertexMap[c.deck_[i].vertexMap[c.fiber0_.front()]];
      const auto k = std::find(c.fiber0_.begin(), c.fiber0_.end(), img) - c.fiber0_.begin();
      table[i][j] = static_cast<std::size_t>(k);
    }
  c.group_ = Group::finiteTable(std::move(table));
  c.base_ = std::move(base);
  c.cover_ = std::move(cover);
  c.projection_ = std::move(f);
  return c;
}

bool GaloisCover::isInterior(std::size_t v) const { return smash_ ? smash_->isInterior(v) : v < cover_.vertexCount(); }

std::optional<std::size_t> GaloisCover::actVertex(std::size_t v, const GroupElement& g) const {
  if (smash_) return smash_->actVertex(v, g);
  group_.check(g);
  return deck_.at(static_cast<std::size_t>(g.payload[0])).vertexMap.at(v);
}

std::optional<std::size_t> GaloisCover::actArrow(std::size_t a, const GroupElement& g) const {
  if (smash_) return smash_->actArrow(a, g);
  group_.check(g);
  return deck_.at(static_cast<std::size_t>(g.payload[0])).arrowMap.at(a);
}

std::optional<GroupElement> GaloisCover::deckElement(std::size_t from, std::size_t to) const {
  if (projection_.vertexMap.at(from) != projection_.vertexMap.at(to)) return std::nullopt;
  if (smash_) {
    const auto& g = group_;
    return g.multiply(g.inverse(smash_->vertexDegree(from)), smash_->vertexDegree(to));
  }
  for (std::size_t i = 0; i < deck_.size(); ++i)
    if (deck_[i].vertexMap[from] == to) return group_.finiteElement(i);
  return std::nullopt;
}

std::vector<GroupElement> GaloisCover::actingElements() const {
  if (smash_) return smash_->window().elements();
  return group_.elements();
}

bool isLifting(const GaloisCover& cover, const std::vector<std::size_t>& lifting) {
  if (lifting.size() != cover.base().vertexCount()) return false;
  for (std::size_t x = 0; x < lifting.size(); ++x)
    if (lifting[x] >= cover.cover().vertexCount() || cover.projection().vertexMap[lifting[x]] != x) return false;
  return true;
}

ArrowWeighting weightingFromLifting(const GaloisCover& cover, const std::vector<std::size_t>& lifting) {
  if (!isLifting(cover, lifting)) throw std::invalid_argument("not a lifting of the covering");
  const auto& base = cover.base();
  ArrowWeighting out{cover.group(), {}};
  for (std::size_t a = 0; a < base.arrowCount(); ++a) {
    const auto& arr = base.arrow(a);
    const auto lifted = liftWalk(cover.cover(), base, cover.projection(), Walk::arrow(base, a), lifting[arr.source]);
    const auto g = cover.deckElement(lifting[arr.target], lifted.end());
    if (!g) throw std::invalid_argument("deck element not identifiable for arrow " + arr.name);
    out.values.push_back(*g);
  }
  return out;
}

std::vector<std::size_t> liftingFromVertexWeighting(const SmashQuiver& s, const VertexWeighting& gamma) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < s.base().vertexCount(); ++x) {
    const auto v = s.vertex(x, gamma[x]);
    if (!v) throw std::invalid_argument("lifting leaves the window at " + s.base().vertexName(x));
    out.push_back(*v);
  }
  return out;
}

}  // namespace covol

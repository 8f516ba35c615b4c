#include "covol/quiver.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace covol {

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

std::size_t stepSource(const Quiver& q, const Step& s) {
  const auto& a = q.arrow(s.arrow);
  return s.forward ? a.source : a.target;
}

std::size_t stepTarget(const Quiver& q, const Step& s) {
  const auto& a = q.arrow(s.arrow);
  return s.forward ? a.target : a.source;
}

std::string dotEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Quiver

std::size_t Quiver::addVertex(std::string name) {
  if (findVertex(name)) throw std::invalid_argument("duplicate vertex '" + name + "'");
  vertices_.push_back(std::move(name));
  out_.emplace_back();
  in_.emplace_back();
  return vertices_.size() - 1;
}

std::size_t Quiver::addArrow(std::string name, std::size_t source, std::size_t target) {
  if (source >= vertices_.size() || target >= vertices_.size())
    throw std::invalid_argument("arrow '" + name + "' has an endpoint outside the quiver");
  if (findArrow(name)) throw std::invalid_argument("duplicate arrow '" + name + "'");
  arrows_.push_back({std::move(name), source, target});
  const std::size_t idx = arrows_.size() - 1;
  out_[source].push_back(idx);
  in_[target].push_back(idx);
  return idx;
}

std::optional<std::size_t> Quiver::findVertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Quiver::findArrow(std::string_view name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Quiver::vertexIndex(std::string_view name) const {
  if (auto v = findVertex(name)) return *v;
  throw std::invalid_argument("unknown vertex '" + std::string(name) + "'");
}

std::size_t Quiver::arrowIndex(std::string_view name) const {
  if (auto a = findArrow(name)) return *a;
  throw std::invalid_argument("unknown arrow '" + std::string(name) + "'");
}

bool Quiver::isConnected() const {
  if (vertices_.empty()) return false;
  std::vector<bool> seen(vertices_.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    auto visit = [&](std::size_t w) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        queue.push_back(w);
      }
    };
    for (auto a : out_[v]) visit(arrows_[a].target);
    for (auto a : in_[v]) visit(arrows_[a].source);
  }
  return count == vertices_.size();
}

// ---------------------------------------------------------------------------
// Walk

Walk Walk::at(std::size_t vertex) {
  Walk w;
  w.start_ = w.end_ = vertex;
  return w;
}

Walk Walk::fromSteps(const Quiver& q, std::size_t start, std::vector<Step> steps) {
  if (start >= q.vertexCount()) throw std::invalid_argument("walk starts outside the quiver");
  std::size_t cur = start;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].arrow >= q.arrowCount()) throw std::invalid_argument("walk uses an unknown arrow");
    if (stepSource(q, steps[i]) != cur)
      throw std::invalid_argument("walk step " + std::to_string(i) + " (" + q.arrow(steps[i].arrow).name +
                                  ") does not compose");
    cur = stepTarget(q, steps[i]);
  }
  Walk w;
  w.start_ = start;
  w.end_ = cur;
  w.steps_ = std::move(steps);
  return w;
}

Walk Walk::path(const Quiver& q, const std::vector<std::size_t>& arrowsInOrder) {
  if (arrowsInOrder.empty()) throw std::invalid_argument("Walk::path needs at least one arrow");
  std::vector<Step> steps;
  for (auto a : arrowsInOrder) steps.push_back({a, true});
  return fromSteps(q, q.arrow(arrowsInOrder.front()).source, std::move(steps));
}

Walk Walk::arrow(const Quiver& q, std::size_t a, bool forward) {
  const auto& arr = q.arrow(a);
  return fromSteps(q, forward ? arr.source : arr.target, {{a, forward}});
}

bool Walk::isPath() const {
  return std::all_of(steps_.begin(), steps_.end(), [](const Step& s) { return s.forward; });
}

Walk Walk::inverse() const {
  Walk w;
  w.start_ = end_;
  w.end_ = start_;
  w.steps_.assign(steps_.rbegin(), steps_.rend());
  for (auto& s : w.steps_) s.forward = !s.forward;
  return w;
}

Walk Walk::reduced() const {
  Walk w;
  w.start_ = start_;
  w.end_ = end_;
  for (const auto& s : steps_) {
    if (!w.steps_.empty() && w.steps_.back().arrow == s.arrow && w.steps_.back().forward != s.forward)
      w.steps_.pop_back();
    else
      w.steps_.push_back(s);
  }
  return w;
}

std::string Walk::format(const Quiver& q) const {
  if (steps_.empty()) return "(" + q.vertexName(start_) + ")";
  std::string s;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    s += q.arrow(it->arrow).name;
    if (!it->forward) s += "^-";
  }
  return s;
}

Walk concat(const Walk& later, const Walk& earlier) {
  if (earlier.end() != later.start())
    throw std::invalid_argument("cannot concatenate walks: endpoint mismatch");
  Walk w;
  w.start_ = earlier.start_;
  w.end_ = later.end_;
  w.steps_ = earlier.steps_;
  w.steps_.insert(w.steps_.end(), later.steps_.begin(), later.steps_.end());
  return w;
}

// ---------------------------------------------------------------------------
// Morphisms

bool QuiverMorphism::isValid(const Quiver& domain, const Quiver& codomain) const {
  if (vertexMap.size() != domain.vertexCount() || arrowMap.size() != domain.arrowCount()) return false;
  for (auto v : vertexMap)
    if (v >= codomain.vertexCount()) return false;
  for (std::size_t a = 0; a < domain.arrowCount(); ++a) {
    if (arrowMap[a] >= codomain.arrowCount()) return false;
    const auto& src = domain.arrow(a);
    const auto& img = codomain.arrow(arrowMap[a]);
    if (vertexMap[src.source] != img.source || vertexMap[src.target] != img.target) return false;
  }
  return true;
}

Walk QuiverMorphism::apply(const Quiver& /*domain*/, const Quiver& codomain, const Walk& w) const {
  std::vector<Step> steps;
  steps.reserve(w.length());
  for (const auto& s : w.steps()) steps.push_back({arrowMap.at(s.arrow), s.forward});
  return Walk::fromSteps(codomain, vertexMap.at(w.start()), std::move(steps));
}

// ---------------------------------------------------------------------------
// Fundamental group

Walk Pi1Presentation::fundamentalCycle(const Quiver& q, std::size_t generator) const {
  const auto a = coTree.at(generator);
  const auto& arr = q.arrow(a);
  Walk w = concat(Walk::arrow(q, a), geodesic[arr.source]);
  return concat(geodesic[arr.target].inverse(), w);
}

namespace {

std::vector<std::size_t> incidentArrows(const Quiver& q, std::size_t v) {
  std::vector<std::size_t> incident = q.outArrows(v);
  incident.insert(incident.end(), q.inArrows(v).begin(), q.inArrows(v).end());
  std::sort(incident.begin(), incident.end());
  incident.erase(std::unique(incident.begin(), incident.end()), incident.end());
  return incident;
}

}  // namespace

Pi1Presentation spanningTreeAndPi1(const Quiver& q, std::size_t base) {
  if (base >= q.vertexCount()) throw std::invalid_argument("base vertex outside the quiver");
  if (!q.isConnected()) throw std::invalid_argument("fundamental group needs a connected quiver");
  std::vector<bool> inTree(q.arrowCount(), false);
  std::vector<bool> seen(q.vertexCount(), false);
  seen[base] = true;
  std::deque<std::size_t> queue{base};
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto a : incidentArrows(q, v)) {
      const auto& arr = q.arrow(a);
      const auto w = arr.source == v ? arr.target : arr.source;
      if (seen[w]) continue;
      seen[w] = true;
      inTree[a] = true;
      queue.push_back(w);
    }
  }
  return presentationFromTree(q, base, inTree);
}

Pi1Presentation presentationFromTree(const Quiver& q, std::size_t base, const std::vector<bool>& inTree) {
  if (base >= q.vertexCount()) throw std::invalid_argument("base vertex outside the quiver");
  if (inTree.size() != q.arrowCount()) throw std::invalid_argument("tree mask must cover every arrow");
  Pi1Presentation p;
  p.base = base;
  p.inTree = inTree;
  p.generatorOf.assign(q.arrowCount(), std::nullopt);
  std::vector<std::optional<Walk>> geo(q.vertexCount());
  geo[base] = Walk::at(base);
  std::deque<std::size_t> queue{base};
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto a : incidentArrows(q, v)) {
      if (!inTree[a]) continue;
      const auto& arr = q.arrow(a);
      const bool forward = arr.source == v;
      const auto w = forward ? arr.target : arr.source;
      if (geo[w]) continue;
      geo[w] = concat(Walk::arrow(q, a, forward), *geo[v]);
      ++reached;
      queue.push_back(w);
    }
  }
  const auto treeSize = static_cast<std::size_t>(std::count(inTree.begin(), inTree.end(), true));
  if (reached != q.vertexCount() || treeSize + 1 != q.vertexCount())
    throw std::invalid_argument("arrow set is not a spanning tree");
  for (auto& g : geo) p.geodesic.push_back(std::move(*g));
  for (std::size_t a = 0; a < q.arrowCount(); ++a) {
    if (p.inTree[a]) continue;
    p.generatorOf[a] = p.coTree.size();
    p.coTree.push_back(a);
  }
  return p;
}

Word walkToWord(const Pi1Presentation& pres, const Walk& w) {
  if (w.start() != pres.base || w.end() != pres.base)
    throw std::invalid_argument("walkToWord needs a closed walk at the base vertex");
  Word word;
  for (auto it = w.steps().rbegin(); it != w.steps().rend(); ++it) {
    const auto& gen = pres.generatorOf.at(it->arrow);
    if (!gen) continue;
    const int letter = static_cast<int>(*gen) + 1;
    word.push_back(it->forward ? letter : -letter);
  }
  return reduceWord(std::move(word));
}

// ---------------------------------------------------------------------------
// Coverings

CoveringCheck isCovering(const Quiver& cover, const Quiver& base, const QuiverMorphism& f,
                         const std::vector<bool>* onlyVertices) {
  if (!f.isValid(cover, base)) return {false, std::nullopt, "projection is not a quiver morphism"};
  for (std::size_t v = 0; v < cover.vertexCount(); ++v) {
    if (onlyVertices && !(*onlyVertices)[v]) continue;
    const auto x = f.vertexMap[v];
    auto check = [&](const std::vector<std::size_t>& up, const std::vector<std::size_t>& down,
                     const char* side) -> std::optional<CoveringCheck> {
      std::vector<std::size_t> images;
      for (auto a : up) images.push_back(f.arrowMap[a]);
      std::sort(images.begin(), images.end());
      if (images != down)
        return CoveringCheck{false, v,
                             std::string(side) + " arrows at " + cover.vertexName(v) + " do not map bijectively onto those at " +
                                 base.vertexName(x)};
      return std::nullopt;
    };
    if (auto r = check(cover.outArrows(v), base.outArrows(x), "outgoing")) return *r;
    if (auto r = check(cover.inArrows(v), base.inArrows(x), "incoming")) return *r;
  }
  return {};
}

std::optional<Walk> tryLiftWalk(const Quiver& cover, const Quiver& base, const QuiverMorphism& f, const Walk& w,
                                std::size_t start) {
  if (start >= cover.vertexCount() || f.vertexMap.at(start) != w.start())
    throw std::invalid_argument("lift must start over the start of the walk");
  std::vector<Step> steps;
  std::size_t cur = start;
  for (const auto& s : w.steps()) {
    const auto& candidates = s.forward ? cover.outArrows(cur) : cover.inArrows(cur);
    std::optional<std::size_t> found;
    for (auto a : candidates)
      if (f.arrowMap[a] == s.arrow) {
        found = a;
        break;
      }
    if (!found) return std::nullopt;
    steps.push_back({*found, s.forward});
    cur = s.forward ? cover.arrow(*found).target : cover.arrow(*found).source;
  }
  (void)base;
  return Walk::fromSteps(cover, start, std::move(steps));
}

Walk liftWalk(const Quiver& cover, const Quiver& base, const QuiverMorphism& f, const Walk& w, std::size_t start) {
  if (auto l = tryLiftWalk(cover, base, f, w, start)) return *l;
  throw std::invalid_argument("walk " + w.format(base) + " does not lift from " + cover.vertexName(start));
}

namespace {

// Extends h from v ↦ img over the component of v. False on inconsistency.
bool propagateDeck(const Quiver& cover, const QuiverMorphism& f, CoveringAutomorphism& h, std::size_t v0,
                   std::size_t img0) {
  if (f.vertexMap[v0] != f.vertexMap[img0]) return false;
  if (h.vertexMap[v0] != kUnset) return h.vertexMap[v0] == img0;
  h.vertexMap[v0] = img0;
  std::deque<std::size_t> queue{v0};
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    const auto img = h.vertexMap[v];
    for (int dir = 0; dir < 2; ++dir) {
      const bool out = dir == 0;
      for (auto a : out ? cover.outArrows(v) : cover.inArrows(v)) {
        std::optional<std::size_t> match;
        for (auto b : out ? cover.outArrows(img) : cover.inArrows(img))
          if (f.arrowMap[b] == f.arrowMap[a]) {
            match = b;
            break;
          }
        if (!match) return false;
        if (h.arrowMap[a] != kUnset && h.arrowMap[a] != *match) return false;
        h.arrowMap[a] = *match;
        const auto other = out ? cover.arrow(a).target : cover.arrow(a).source;
        const auto otherImg = out ? cover.arrow(*match).target : cover.arrow(*match).source;
        if (h.vertexMap[other] == kUnset) {
          h.vertexMap[other] = otherImg;
          queue.push_back(other);
        } else if (h.vertexMap[other] != otherImg) {
          return false;
        }
      }
    }
  }
  return true;
}

bool isBijective(const Quiver& cover, const CoveringAutomorphism& h) {
  if (std::find(h.vertexMap.begin(), h.vertexMap.end(), kUnset) != h.vertexMap.end()) return false;
  if (std::find(h.arrowMap.begin(), h.arrowMap.end(), kUnset) != h.arrowMap.end()) return false;
  const std::set<std::size_t> vs(h.vertexMap.begin(), h.vertexMap.end());
  const std::set<std::size_t> as(h.arrowMap.begin(), h.arrowMap.end());
  return vs.size() == cover.vertexCount() && as.size() == cover.arrowCount();
}

std::vector<std::size_t> componentLabels(const Quiver& q) {
  std::vector<std::size_t> label(q.vertexCount(), kUnset);
  std::size_t next = 0;
  for (std::size_t s = 0; s < q.vertexCount(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      auto visit = [&](std::size_t w) {
        if (label[w] != kUnset) return;
        label[w] = next;
        queue.push_back(w);
      };
      for (auto a : q.outArrows(v)) visit(q.arrow(a).target);
      for (auto a : q.inArrows(v)) visit(q.arrow(a).source);
    }
    ++next;
  }
  return label;
}

// Sends the remaining components onto the components not yet hit, one at a time.
bool matchComponents(const Quiver& cover, const QuiverMorphism& f, const std::vector<std::size_t>& label,
                     CoveringAutomorphism& h) {
  std::size_t pending = kUnset;
  for (std::size_t v = 0; v < cover.vertexCount() && pending == kUnset; ++v)
    if (h.vertexMap[v] == kUnset) pending = v;
  if (pending == kUnset) return isBijective(cover, h);
  std::set<std::size_t> hit;
  for (auto img : h.vertexMap)
    if (img != kUnset) hit.insert(label[img]);
  for (std::size_t w = 0; w < cover.vertexCount(); ++w) {
    if (f.vertexMap[w] != f.vertexMap[pending] || hit.count(label[w])) continue;
    auto attempt = h;
    if (propagateDeck(cover, f, attempt, pending, w) && matchComponents(cover, f, label, attempt)) {
      h = std::move(attempt);
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<CoveringAutomorphism> deckTransformation(const Quiver& cover, const Quiver& /*base*/,
                                                       const QuiverMorphism& f, std::size_t from, std::size_t to) {
  CoveringAutomorphism h;
  h.vertexMap.assign(cover.vertexCount(), kUnset);
  h.arrowMap.assign(cover.arrowCount(), kUnset);
  if (!propagateDeck(cover, f, h, from, to)) return std::nullopt;
  if (!matchComponents(cover, f, componentLabels(cover), h)) return std::nullopt;
  if (!h.isValid(cover, cover)) return std::nullopt;
  return h;
}

bool isGaloisOnFiber(const Quiver& cover, const Quiver& base, const QuiverMorphism& f, std::size_t x0) {
  std::vector<std::size_t> fiber;
  for (std::size_t v = 0; v < cover.vertexCount(); ++v)
    if (f.vertexMap[v] == x0) fiber.push_back(v);
  if (fiber.empty()) return false;
  for (auto v : fiber)
    if (!deckTransformation(cover, base, f, fiber.front(), v)) return false;
  return true;
}

std::string toDot(const Quiver& q, std::string_view graphName) {
  std::ostringstream os;
  os << "digraph \"" << dotEscape(graphName) << "\" {\n";
  for (const auto& v : q.vertexNames()) os << "  \"" << dotEscape(v) << "\";\n";
  for (const auto& a : q.arrows())
    os << "  \"" << dotEscape(q.vertexName(a.source)) << "\" -> \"" << dotEscape(q.vertexName(a.target))
       << "\" [label=\"" << dotEscape(a.name) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace covol

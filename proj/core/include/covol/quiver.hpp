#pragma once

// Quivers, walks and coverings of quivers.
//
// Composition convention: paths and walks compose right to left, so the walk
// `ba` traverses a first. Internally a Walk stores its steps in traversal
// order (steps()[0] is traversed first); formatting prints them right to left.

#include "covol/groups.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace covol {

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

class Quiver {
 public:
  std::size_t addVertex(std::string name);
  std::size_t addArrow(std::string name, std::size_t source, std::size_t target);

  std::size_t vertexCount() const { return vertices_.size(); }
  std::size_t arrowCount() const { return arrows_.size(); }
  const std::string& vertexName(std::size_t v) const { return vertices_.at(v); }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
  const std::vector<std::string>& vertexNames() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  std::optional<std::size_t> findVertex(std::string_view name) const;
  std::optional<std::size_t> findArrow(std::string_view name) const;
  std::size_t vertexIndex(std::string_view name) const;
  std::size_t arrowIndex(std::string_view name) const;

  /// Arrow indices in increasing order.
  const std::vector<std::size_t>& outArrows(std::size_t v) const { return out_.at(v); }
  const std::vector<std::size_t>& inArrows(std::size_t v) const { return in_.at(v); }

  /// Connected as an undirected graph. The empty quiver is not connected.
  bool isConnected() const;

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

struct Step {
  std::size_t arrow = 0;
  bool forward = true;

  friend bool operator==(const Step&, const Step&) = default;
};

class Walk {
 public:
  /// Empty walk sitting at `vertex`.
  static Walk at(std::size_t vertex);
  /// Validates composability against `q`; throws std::invalid_argument.
  static Walk fromSteps(const Quiver& q, std::size_t start, std::vector<Step> steps);
  /// Path from arrows listed in traversal order.
  static Walk path(const Quiver& q, const std::vector<std::size_t>& arrowsInOrder);
  static Walk arrow(const Quiver& q, std::size_t a, bool forward = true);

  std::size_t start() const { return start_; }
  std::size_t end() const { return end_; }
  const std::vector<Step>& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }
  bool isClosed() const { return start_ == end_; }
  bool isPath() const;

  Walk inverse() const;
  /// Drops adjacent a a^- pairs.
  Walk reduced() const;

  /// Right-to-left notation, e.g. "b^-a"; "(x)" for an empty walk at x.
  std::string format(const Quiver& q) const;

  friend bool operator==(const Walk&, const Walk&) = default;
  friend Walk concat(const Walk& later, const Walk& earlier);

 private:
  std::size_t start_ = 0;
  std::size_t end_ = 0;
  std::vector<Step> steps_;
};

/// later ∘ earlier: traverses `earlier` first. Requires end(earlier) == start(later).
Walk concat(const Walk& later, const Walk& earlier);

struct QuiverMorphism {
  std::vector<std::size_t> vertexMap;
  std::vector<std::size_t> arrowMap;

  /// Sources and targets are preserved.
  bool isValid(const Quiver& domain, const Quiver& codomain) const;
  Walk apply(const Quiver& domain, const Quiver& codomain, const Walk& w) const;
};

struct Pi1Presentation {
  std::size_t base = 0;
  std::vector<bool> inTree;
  /// Co-tree arrows; generator k of the free group is coTree[k].
  std::vector<std::size_t> coTree;
  /// generatorOf[arrow] is the generator index of a co-tree arrow.
  std::vector<std::optional<std::size_t>> generatorOf;
  /// Tree walk from the base vertex to each vertex.
  std::vector<Walk> geodesic;

  std::size_t rank() const { return coTree.size(); }
  /// geodesic(t(a))^-1 a geodesic(s(a)), closed at the base vertex.
  Walk fundamentalCycle(const Quiver& q, std::size_t generator) const;
};

/// Breadth-first spanning tree from `base`, visiting incident arrows in index order.
Pi1Presentation spanningTreeAndPi1(const Quiver& q, std::size_t base);
/// Presentation for a given spanning tree (arrow mask). Throws std::invalid_argument
/// if the arrows do not form a spanning tree.
Pi1Presentation presentationFromTree(const Quiver& q, std::size_t base, const std::vector<bool>& inTree);

/// Reduced free word of a closed walk at the base vertex. The letters run in
/// product order, so the last traversed step comes first.
Word walkToWord(const Pi1Presentation& pres, const Walk& w);

struct CoveringCheck {
  bool ok = true;
  std::optional<std::size_t> witnessVertex;
  std::string reason;
};

/// Local bijection test on in/out arrows. When `onlyVertices` is given, only those
/// covering-side vertices are examined (used for windowed covers).
CoveringCheck isCovering(const Quiver& cover, const Quiver& base, const QuiverMorphism& f,
                         const std::vector<bool>* onlyVertices = nullptr);

/// Unique lift of `w` starting at `start`. Throws std::invalid_argument if the lift
/// leaves the materialized cover or the preconditions fail.
Walk liftWalk(const Quiver& cover, const Quiver& base, const QuiverMorphism& f, const Walk& w, std::size_t start);
/// Same as liftWalk, but returns nullopt when a step has no lift.
std::optional<Walk> tryLiftWalk(const Quiver& cover, const Quiver& base, const QuiverMorphism& f, const Walk& w,
                                std::size_t start);

/// Quiver automorphism commuting with the projection; vertexMap/arrowMap index the cover.
using CoveringAutomorphism = QuiverMorphism;

/// The covering automorphism sending `from` to `to`, if one exists. Built by
/// propagating along arrows from `from`; inconsistency means none exists. Other
/// components of a disconnected cover are matched by backtracking.
std::optional<CoveringAutomorphism> deckTransformation(const Quiver& cover, const Quiver& base,
                                                       const QuiverMorphism& f, std::size_t from, std::size_t to);

/// Deck transformations act transitively on the fiber over `x0`. Finite covers only.
bool isGaloisOnFiber(const Quiver& cover, const Quiver& base, const QuiverMorphism& f, std::size_t x0);

std::string toDot(const Quiver& q, std::string_view graphName = "Q");

}  // namespace covol

#pragma once

// Arrow weightings (voltages), smash coproduct quivers over finite windows of
// a group, liftings of Galois covers and twisted gradings.

#include "covol/groups.hpp"
#include "covol/quiver.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace covol {

/// δ: Q₁ → G, indexed by arrow.
struct ArrowWeighting {
  Group group;
  std::vector<GroupElement> values;

  const GroupElement& operator[](std::size_t arrow) const { return values.at(arrow); }
  friend bool operator==(const ArrowWeighting&, const ArrowWeighting&) = default;
};

/// γ: Q₀ → G, indexed by vertex.
struct VertexWeighting {
  Group group;
  std::vector<GroupElement> values;

  const GroupElement& operator[](std::size_t vertex) const { return values.at(vertex); }
  friend bool operator==(const VertexWeighting&, const VertexWeighting&) = default;
};

ArrowWeighting constantWeighting(const Quiver& q, const Group& g);
VertexWeighting identityVertexWeighting(const Quiver& q, const Group& g);
/// Throws std::invalid_argument if the weighting is not total or mixes groups.
void validate(const Quiver& q, const ArrowWeighting& w);
void validate(const Quiver& q, const VertexWeighting& w);

/// δ(aₙ^eₙ ⋯ a₁^e₁) = δ(aₙ)^eₙ ⋯ δ(a₁)^e₁; the identity on empty walks.
GroupElement weightWalk(const ArrowWeighting& delta, const Walk& w);

/// Images of the fundamental cycles generate the group.
bool isConnectedWeighting(const Quiver& q, const ArrowWeighting& delta, const Pi1Presentation& pres);

/// δ^γ(a) = γ(t(a))⁻¹ δ(a) γ(s(a)).
ArrowWeighting twist(const Quiver& q, const ArrowWeighting& delta, const VertexWeighting& gamma);

/// Pointwise product (γ₁γ₂)(x) = γ₁(x)γ₂(x).
VertexWeighting pointwiseProduct(const VertexWeighting& a, const VertexWeighting& b);

/// A vertex weighting γ with γ(base) = 1 and twist(δ₁, γ) = δ₂, if any.
std::optional<VertexWeighting> findTwist(const Quiver& q, const ArrowWeighting& d1, const ArrowWeighting& d2,
                                         const Pi1Presentation& pres);

/// Finite subset of a group with index lookup. Always contains the identity.
class Window {
 public:
  Window() = default;
  Window(const Group& g, std::vector<GroupElement> elements);
  /// The ball of the given radius (every element for finite groups).
  static Window ball(const Group& g, std::size_t radius);

  const Group& group() const { return group_; }
  std::size_t size() const { return elements_.size(); }
  const GroupElement& operator[](std::size_t i) const { return elements_.at(i); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::optional<std::size_t> find(const GroupElement& g) const;
  bool contains(const GroupElement& g) const { return find(g).has_value(); }
  std::size_t identityIndex() const { return *find(group_.identity()); }

 private:
  Group group_;
  std::vector<GroupElement> elements_;
  std::map<GroupElement, std::size_t> index_;
};

/// Partial map defined where images stay inside the window.
struct PartialAutomorphism {
  std::vector<std::optional<std::size_t>> vertexMap;
  std::vector<std::optional<std::size_t>> arrowMap;
  /// Vertices whose image leaves the window.
  std::vector<std::size_t> undefinedVertices;
};

/// Q⋊G materialized over a window W: vertices x⋊g and arrows a⋊g for g ∈ W,
/// with s(a⋊g) = s(a)⋊g and t(a⋊g) = t(a)⋊δ(a)g. An arrow is kept only if its
/// target lies in the window.
class SmashQuiver {
 public:
  SmashQuiver(const Quiver& base, const ArrowWeighting& delta, const Window& window);

  const Quiver& base() const { return base_; }
  const ArrowWeighting& weighting() const { return delta_; }
  const Window& window() const { return window_; }
  const Quiver& quiver() const { return quiver_; }
  /// The covering morphism F: u⋊g ↦ u.
  const QuiverMorphism& projection() const { return projection_; }

  std::optional<std::size_t> vertex(std::size_t baseVertex, const GroupElement& g) const;
  std::optional<std::size_t> arrow(std::size_t baseArrow, const GroupElement& g) const;
  /// (base vertex, window index) of a materialized vertex.
  std::pair<std::size_t, std::size_t> vertexCoords(std::size_t v) const { return vertexCoords_.at(v); }
  std::pair<std::size_t, std::size_t> arrowCoords(std::size_t a) const { return arrowCoords_.at(a); }
  const GroupElement& vertexDegree(std::size_t v) const { return window_[vertexCoords_.at(v).second]; }

  /// Every in/out arrow of the base vertex lifts inside the window.
  bool isInterior(std::size_t v) const { return interior_.at(v); }
  const std::vector<bool>& interior() const { return interior_; }
  std::size_t interiorCount() const;

  /// Right action (u⋊g)^h = u⋊gh where defined.
  std::optional<std::size_t> actVertex(std::size_t v, const GroupElement& h) const;
  std::optional<std::size_t> actArrow(std::size_t a, const GroupElement& h) const;
  PartialAutomorphism deckAction(const GroupElement& h) const;

  /// Vertices of one fiber share a rank group.
  std::string toDot(std::string_view graphName = "smash") const;

 private:
  Quiver base_;
  ArrowWeighting delta_;
  Window window_;
  Quiver quiver_;
  QuiverMorphism projection_;
  std::vector<std::pair<std::size_t, std::size_t>> vertexCoords_;
  std::vector<std::pair<std::size_t, std::size_t>> arrowCoords_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> vertexIndex_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> arrowIndex_;
  std::vector<bool> interior_;
};

/// Throws std::invalid_argument when no vertex is interior.
SmashQuiver smashQuiver(const Quiver& q, const ArrowWeighting& delta, const Window& window);

/// A Galois cover together with its deck group acting on the right. Either a
/// windowed smash quiver, or a finite cover whose deck group is computed as a
/// multiplication table.
class GaloisCover {
 public:
  static GaloisCover fromSmash(SmashQuiver smash);
  /// Throws std::invalid_argument if `f` is not a Galois covering.
  static GaloisCover fromFinite(Quiver cover, Quiver base, QuiverMorphism f);

  const Quiver& base() const { return base_; }
  const Quiver& cover() const { return cover_; }
  const QuiverMorphism& projection() const { return projection_; }
  const Group& group() const { return group_; }
  const std::optional<SmashQuiver>& smash() const { return smash_; }
  bool isInterior(std::size_t v) const;

  std::optional<std::size_t> actVertex(std::size_t v, const GroupElement& g) const;
  std::optional<std::size_t> actArrow(std::size_t a, const GroupElement& g) const;
  /// The g with from^g = to, when both lie in one fiber.
  std::optional<GroupElement> deckElement(std::size_t from, std::size_t to) const;
  /// Group elements available for acting (the window, or the whole finite group).
  std::vector<GroupElement> actingElements() const;

  /// For finite covers: the deck automorphism of table element i.
  const std::vector<CoveringAutomorphism>& deckMaps() const { return deck_; }

 private:
  Quiver base_;
  Quiver cover_;
  QuiverMorphism projection_;
  Group group_;
  std::optional<SmashQuiver> smash_;
  std::vector<CoveringAutomorphism> deck_;
  std::vector<std::size_t> fiber0_;
};

/// Check that L is a section of the projection on vertices.
bool isLifting(const GaloisCover& cover, const std::vector<std::size_t>& lifting);

/// δ_L(a) is the deck element g with L(t(a))^g equal to the end of the lift of a
/// from L(s(a)). Throws std::invalid_argument if a lift leaves the cover.
ArrowWeighting weightingFromLifting(const GaloisCover& cover, const std::vector<std::size_t>& lifting);

/// L(x) = x⋊γ(x) on a smash cover.
std::vector<std::size_t> liftingFromVertexWeighting(const SmashQuiver& s, const VertexWeighting& gamma);

}  // namespace covol

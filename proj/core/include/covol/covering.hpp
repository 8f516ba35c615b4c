#pragma once

// Coalgebra coverings: lifted subcoalgebras inside 𝕜(Q⋊G), the covering test
// on minimal elements, relators of N(B, x₀) and universal grading data.

#include "covol/coalgebra.hpp"
#include "covol/groups.hpp"
#include "covol/quiver.hpp"
#include "covol/voltage.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace covol {

struct CoalgebraCovering {
  SmashQuiver smash;
  ArrowWeighting weighting;
  SubcoalgebraBasis base;
  /// Span of the liftings of the rows of B, inside 𝕜(Q⋊G)≤N.
  SubcoalgebraBasis lifted;
  /// Whether the lifted span is closed under Δ (always so for homogeneous B).
  bool liftedIsSubcoalgebra = true;

  const PathIndex& coverIndex() const { return lifted.index(); }
};

/// Lift of b from the fiber vertex `start` over its source: Σ λᵢ L(pᵢ) with each
/// path lifted from `start`. nullopt if some lift leaves the window.
std::optional<SparseVector> liftElement(const SmashQuiver& smash, const PathIndex& baseIndex,
                                        const PathIndex& coverIndex, const SparseVector& b, std::size_t start);

/// B̃ = span{L(b)} over the rows b of B and every lifting L that stays in the window.
/// No homogeneity requirement.
CoalgebraCovering liftSubcoalgebra(const SubcoalgebraBasis& b, const ArrowWeighting& delta, const Window& window);

/// Same span, realized as B⋊𝕜G through E. Throws std::invalid_argument on
/// inhomogeneous B.
CoalgebraCovering buildLiftedSubcoalgebra(const SubcoalgebraBasis& b, const ArrowWeighting& delta,
                                          const Window& window);

struct CoveringVerdict {
  bool ok = true;
  std::optional<SparseVector> witness;
  std::optional<std::size_t> witnessVertex;
  std::string reason;
  std::size_t checked = 0;
};

/// Every minimal element b ∈ B(x,y) (every RREF row with two or more paths) lifts
/// from every fiber vertex over x, with a common endpoint, into a minimal element
/// of B̃. Fiber vertices are visited starting with x⋊1.
CoveringVerdict isCoalgebraCovering(const CoalgebraCovering& cov);

/// F: B̃ → B is a coalgebra map: paths project to paths and B̃ lands in B.
AxiomCheck verifyProjection(const CoalgebraCovering& cov);

struct CrossCheck {
  bool homogeneous = false;
  bool connected = false;
  bool coveringOK = false;
  std::optional<SparseVector> witness;
  std::string witnessText;
  /// Homogeneity and the covering property agree.
  bool consistent() const { return homogeneous == coveringOK; }
};

CrossCheck theoremCovCrossCheck(const SubcoalgebraBasis& b, const ArrowWeighting& delta, const Pi1Presentation& pres,
                                const Window& window);

struct Relator {
  Word word;
  /// w⁻¹ p₁⁻¹ pⱼ w at the base vertex.
  Walk walk;
  std::size_t first = 0;
  std::size_t other = 0;
};

struct RelatorSet {
  Pi1Presentation presentation;
  std::vector<Relator> relators;
};

/// One relator per path pⱼ (j ≥ 2) of each minimal block, paired with the block's first path p₁.
RelatorSet extractRelators(const SubcoalgebraBasis& b, const Pi1Presentation& pres);

struct UniversalGradingGroup {
  FinitelyPresented presentation;
  Group group;
  /// The group is the abelianization of the presented quotient.
  bool abelianized = false;
  std::optional<Abelianization> abelianization;
  /// Tree arrows ↦ 1, co-tree arrow k ↦ image of generator k.
  ArrowWeighting universalWeighting;
  /// Image of free generator k in `group`.
  std::vector<GroupElement> generatorImages;

  std::string describe() const;
};

UniversalGradingGroup universalGradingGroup(const SubcoalgebraBasis& b, const Pi1Presentation& pres);

/// Lifted subcoalgebra over the universal weighting.
CoalgebraCovering universalCover(const SubcoalgebraBasis& b, const UniversalGradingGroup& u, const Window& window);

struct FactorMapCheck {
  bool ok = true;
  std::string reason;
  std::size_t mappedVertices = 0;
  std::size_t mappedArrows = 0;
  /// Relators that vanish under the target weighting.
  bool relatorsVanish = true;
};

/// The map Q⋊U → Q⋊G′, x⋊u ↦ x⋊γ(x)h(u), where h sends generator k to δ′ of
/// the k-th fundamental cycle and γ(x) = δ′(geodesic to x). Checked on every
/// arrow whose image lies in the target window. Needs a free universal group (Z in
/// rank one), or an abelianized one with an abelian target.
FactorMapCheck universalFactorMap(const UniversalGradingGroup& u, const RelatorSet& relators,
                                  const SmashQuiver& universal, const SmashQuiver& target);

/// Universal weightings for two spanning trees differ by a twist once the second
/// tree's generators are rewritten in the first tree's. Free case only.
struct TreeChange {
  ArrowWeighting translated;
  std::optional<VertexWeighting> gamma;
};
TreeChange relateSpanningTrees(const Quiver& q, const Pi1Presentation& first, const Pi1Presentation& second);

}  // namespace covol

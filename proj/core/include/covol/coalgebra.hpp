#pragma once

// Length-truncated path coalgebras, admissible subcoalgebras, minimal
// elements, homogeneity, smash coproduct coalgebras and the explicit
// coalgebra maps between smash coproducts and covering path coalgebras.
//
// Elements are SparseVectors over the basis of whatever coalgebra they live
// in; tensors are sparse maps keyed by pairs (or triples) of basis indices.

#include "covol/exactlin.hpp"
#include "covol/groups.hpp"
#include "covol/quiver.hpp"
#include "covol/voltage.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace covol {

using Tensor2 = std::map<std::pair<std::size_t, std::size_t>, Rational>;
using Tensor3 = std::map<std::array<std::size_t, 3>, Rational>;

void addTerm(Tensor2& t, std::size_t left, std::size_t right, const Rational& c);
void addTerm(Tensor3& t, const std::array<std::size_t, 3>& key, const Rational& c);

struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  /// Traversal order; empty for the trivial path at `source`.
  std::vector<std::size_t> arrows;

  std::size_t length() const { return arrows.size(); }
};

/// Every path of length ≤ N. Index i < |Q₀| is the trivial path at vertex i;
/// longer paths follow by length, then lexicographically by traversal order.
class PathIndex {
 public:
  PathIndex(const Quiver& q, std::size_t maxLength);

  const Quiver& quiver() const { return quiver_; }
  std::size_t maxLength() const { return maxLength_; }
  std::size_t size() const { return paths_.size(); }
  const Path& path(std::size_t i) const { return paths_.at(i); }

  std::optional<std::size_t> find(const Path& p) const;
  /// Nonempty arrow sequence in traversal order.
  std::optional<std::size_t> findArrows(const std::vector<std::size_t>& arrows) const;
  std::size_t arrowPath(std::size_t arrow) const { return quiver_.vertexCount() + arrow; }

  /// All ways p = later ∘ earlier, including the two trivial splittings.
  const std::vector<std::pair<std::size_t, std::size_t>>& splittings(std::size_t i) const { return splits_.at(i); }
  const std::vector<std::size_t>& pathsBetween(std::size_t x, std::size_t y) const;

  Walk walk(std::size_t i) const;
  /// Right-to-left arrow names; joined with '.' unless every arrow name is one character.
  std::string format(std::size_t i) const;
  std::string format(const SparseVector& v) const;

 private:
  Quiver quiver_;
  std::size_t maxLength_ = 0;
  bool compactNames_ = true;
  std::vector<Path> paths_;
  std::map<std::vector<std::size_t>, std::size_t> byArrows_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> splits_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> between_;
};

using PathIndexPtr = std::shared_ptr<const PathIndex>;
PathIndexPtr makePathIndex(const Quiver& q, std::size_t maxLength);

/// A coalgebra given on a basis. Window-truncated coalgebras report which basis
/// elements have an exact coproduct.
class BasisCoalgebra {
 public:
  virtual ~BasisCoalgebra() = default;
  virtual std::size_t dimension() const = 0;
  virtual Tensor2 deltaBasis(std::size_t i) const = 0;
  virtual Rational counitBasis(std::size_t i) const = 0;
  virtual bool isExact(std::size_t /*i*/) const { return true; }
  virtual std::string label(std::size_t i) const = 0;

  Tensor2 delta(const SparseVector& v) const;
  Rational counit(const SparseVector& v) const;
  bool isExact(const SparseVector& v) const;
  std::string format(const SparseVector& v) const;
};

/// 𝕜Q≤N with Δ(p) = Σ_{p=rq} r⊗q and ε(p) = δ_{|p|,0}.
class PathCoalgebra : public BasisCoalgebra {
 public:
  explicit PathCoalgebra(PathIndexPtr index) : index_(std::move(index)) {}
  const PathIndex& index() const { return *index_; }
  const PathIndexPtr& indexPtr() const { return index_; }

  std::size_t dimension() const override { return index_->size(); }
  Tensor2 deltaBasis(std::size_t i) const override;
  Rational counitBasis(std::size_t i) const override;
  std::string label(std::size_t i) const override { return index_->format(i); }

 private:
  PathIndexPtr index_;
};

/// Degree of every path in an index under a weighting.
std::vector<GroupElement> pathWeights(const PathIndex& index, const ArrowWeighting& delta);

/// 𝕜Q≤N ⋊ 𝕜G over a window: symbol p⋊g has index p·|W| + g, and
/// Δ(p⋊g) = Σ_{p=rq} (r⋊δ(q)g)⊗(q⋊g). Terms leaving the window are dropped;
/// a symbol is exact when none are.
class SmashPathCoalgebra : public BasisCoalgebra {
 public:
  SmashPathCoalgebra(PathIndexPtr index, ArrowWeighting delta, Window window);

  const PathIndex& index() const { return *index_; }
  const PathIndexPtr& indexPtr() const { return index_; }
  const ArrowWeighting& weighting() const { return delta_; }
  const Window& window() const { return window_; }
  const GroupElement& pathWeight(std::size_t p) const { return weights_.at(p); }

  std::size_t symbol(std::size_t path, std::size_t windowIndex) const { return path * window_.size() + windowIndex; }
  std::optional<std::size_t> symbol(std::size_t path, const GroupElement& g) const;
  std::size_t symbolPath(std::size_t s) const { return s / window_.size(); }
  std::size_t symbolWindow(std::size_t s) const { return s % window_.size(); }

  std::size_t dimension() const override { return index_->size() * window_.size(); }
  Tensor2 deltaBasis(std::size_t i) const override;
  Rational counitBasis(std::size_t i) const override;
  bool isExact(std::size_t i) const override { return exact_.at(i); }
  std::string label(std::size_t i) const override;

 private:
  PathIndexPtr index_;
  ArrowWeighting delta_;
  Window window_;
  std::vector<GroupElement> weights_;
  std::vector<bool> exact_;
};

/// An admissible subcoalgebra B ⊆ 𝕜Q≤N held as an RREF subspace over the path
/// basis. Every RREF row lies in a single B(x,y).
class SubcoalgebraBasis {
 public:
  SubcoalgebraBasis() = default;
  /// Span of the given rows; no closure is taken.
  static SubcoalgebraBasis fromRows(PathIndexPtr index, std::span<const SparseVector> rows);

  const PathIndex& index() const { return *index_; }
  const PathIndexPtr& indexPtr() const { return index_; }
  const Subspace& space() const { return space_; }
  std::size_t dimension() const { return space_.dimension(); }
  const std::vector<SparseVector>& rows() const { return space_.rows(); }
  bool contains(const SparseVector& v) const { return space_.contains(v); }

  /// Coordinates of a member in the row basis (read off at the pivots).
  SparseVector coordinates(const SparseVector& v) const;
  /// (source, target) of row i.
  std::pair<std::size_t, std::size_t> rowEndpoints(std::size_t i) const;
  /// B(x,y) as a subspace of the path coordinates.
  Subspace component(std::size_t x, std::size_t y) const;
  /// Every vertex and arrow is a member.
  bool isAdmissible() const;
  /// Some row whose coproduct leaves B⊗B, if any.
  std::optional<std::size_t> closureFailure() const;

  /// Pairs (i, j) of row indices weighting Δ(row) in the row basis.
  Tensor2 deltaCoordinates(std::size_t row) const;

 private:
  PathIndexPtr index_;
  Subspace space_;
};

/// Smallest subcoalgebra of 𝕜Q≤N containing the generators, the vertices and the
/// arrows. Throws std::invalid_argument if a generator mentions a path index
/// outside the truncation.
SubcoalgebraBasis subcoalgebraClosure(PathIndexPtr index, std::span<const SparseVector> generators);

/// B with its row basis, as a coalgebra.
class SubcoalgebraCoalgebra : public BasisCoalgebra {
 public:
  explicit SubcoalgebraCoalgebra(SubcoalgebraBasis b) : b_(std::move(b)) {}
  std::size_t dimension() const override { return b_.dimension(); }
  Tensor2 deltaBasis(std::size_t i) const override { return b_.deltaCoordinates(i); }
  Rational counitBasis(std::size_t i) const override;
  std::string label(std::size_t i) const override { return b_.index().format(b_.rows().at(i)); }

 private:
  SubcoalgebraBasis b_;
};

/// Minimal per the definition: support ≥ 2, member of B, and no nonempty proper
/// subsum is a member. Brute force over subsets; throws std::invalid_argument
/// above 20 support paths.
bool isMinimalElement(const Subspace& space, const SparseVector& v);

struct MinimalBlock {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> paths;
  /// Lowest-index RREF row supported in the block; only for blocks of size ≥ 2.
  std::optional<SparseVector> representative;
};

/// Finest coordinate partition of each B(x,y), ordered by first path index.
std::vector<MinimalBlock> minimalPartition(const SubcoalgebraBasis& b);

struct HomogeneityResult {
  bool homogeneous = true;
  /// First RREF row with paths of different weight.
  std::optional<SparseVector> witness;
};

/// dim B = Σ_{x,y,g} dim(B(x,y) ∩ span{paths of weight g}).
HomogeneityResult isHomogeneous(const SubcoalgebraBasis& b, const ArrowWeighting& delta);
/// Cross-check: every minimal block has constant path weight.
bool blocksHaveConstantWeight(const SubcoalgebraBasis& b, const ArrowWeighting& delta);

/// B ⋊ 𝕜G on the row basis of a homogeneous B: symbol b_i⋊g has index i·|W| + g.
class SmashCoalgebra : public BasisCoalgebra {
 public:
  /// Throws std::invalid_argument if B is not homogeneous for δ.
  SmashCoalgebra(SubcoalgebraBasis b, ArrowWeighting delta, Window window);

  const SubcoalgebraBasis& base() const { return b_; }
  const Window& window() const { return window_; }
  const GroupElement& rowWeight(std::size_t i) const { return rowWeights_.at(i); }
  std::size_t symbol(std::size_t row, std::size_t windowIndex) const { return row * window_.size() + windowIndex; }

  /// b_i⋊g as a combination of path symbols of the ambient smash path coalgebra.
  SparseVector embed(std::size_t symbol, const SmashPathCoalgebra& ambient) const;

  std::size_t dimension() const override { return b_.dimension() * window_.size(); }
  Tensor2 deltaBasis(std::size_t i) const override;
  Rational counitBasis(std::size_t i) const override;
  bool isExact(std::size_t i) const override { return exact_.at(i); }
  std::string label(std::size_t i) const override;

 private:
  SubcoalgebraBasis b_;
  ArrowWeighting delta_;
  Window window_;
  std::vector<GroupElement> rowWeights_;
  std::vector<Tensor2> rowDelta_;
  std::vector<bool> exact_;
};

struct AxiomCheck {
  bool ok = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::optional<std::size_t> failing;
  std::string reason;
};

/// Coassociativity and both counit laws on exact basis elements whose coproduct
/// terms are exact as well.
AxiomCheck checkCoalgebraAxioms(const BasisCoalgebra& c);

/// Basis-indexed linear map; nullopt where undefined (outside a window).
using BasisMap = std::function<std::optional<SparseVector>(std::size_t)>;

/// (f⊗f)∘Δ_C = Δ_D∘f and ε_D∘f = ε_C on every exact basis element of C whose
/// coproduct terms are mapped and whose image is exact in D. Restricted to
/// `domain` when given.
AxiomCheck verifyCoalgebraMap(const BasisMap& f, const BasisCoalgebra& c, const BasisCoalgebra& d,
                              const std::vector<std::size_t>* domain = nullptr);

/// 𝕜Q≤N ⋊ 𝕜G next to the path coalgebra of the windowed cover Q⋊G, with the
/// basis bijection E(p⋊g) = lift of p starting at s(p)⋊g.
class SmashCover {
 public:
  SmashCover(const Quiver& q, const ArrowWeighting& delta, const Window& window, std::size_t maxLength);

  const SmashQuiver& quiver() const { return smash_; }
  const SmashPathCoalgebra& smashCoalgebra() const { return smashCoalgebra_; }
  const PathCoalgebra& coverCoalgebra() const { return coverCoalgebra_; }
  const PathIndex& baseIndex() const { return smashCoalgebra_.index(); }
  const PathIndex& coverIndex() const { return coverCoalgebra_.index(); }

  /// Cover path index of E(symbol); nullopt when the lift leaves the window.
  std::optional<std::size_t> e(std::size_t symbol) const;
  /// Smash symbol of a cover path: (F(p̃), degree of s(p̃)).
  std::size_t eInverse(std::size_t coverPath) const;

 private:
  SmashQuiver smash_;
  SmashPathCoalgebra smashCoalgebra_;
  PathCoalgebra coverCoalgebra_;
};

struct EIsoReport {
  bool bijective = true;
  std::size_t interiorSymbols = 0;
  std::size_t coverPaths = 0;
  AxiomCheck forward;
  AxiomCheck backward;
  bool ok() const { return bijective && forward.ok && backward.ok; }
};

EIsoReport verifyEIso(const SmashCover& sc);

/// Lift a path of the base quiver along a Galois cover from `start`, then
/// move it by the deck element g; nullopt if any step leaves the cover.
std::optional<Walk> liftAndAct(const GaloisCover& cover, const Walk& path, std::size_t start, const GroupElement& g);

struct CsmReport {
  ArrowWeighting inducedWeighting;
  AxiomCheck phi;
  AxiomCheck psi;
  std::size_t roundTripsSymbols = 0;
  std::size_t roundTripsPaths = 0;
  bool psiPhiIdentity = true;
  bool phiPsiIdentity = true;
  bool projectionCompatible = true;
  std::string failure;
  bool ok() const { return phi.ok && psi.ok && psiPhiIdentity && phiPsiIdentity && projectionCompatible; }
};

/// φ(p⋊g) = L(p)^g and ψ(p̃) = F(p̃)⋊σ with p̃ = LF(p̃)^σ, between the smash
/// coproduct 𝕜Q≤N ⋊ 𝕜G for δ_L over `window` and the path coalgebra of the cover.
CsmReport verifyCsmIso(const GaloisCover& cover, const std::vector<std::size_t>& lifting, std::size_t maxLength,
                       const Window& window);

/// θ_γ(p⋊g) = p⋊′γ(s(p))⁻¹g from 𝕜Q⋊𝕜G (for δ) to 𝕜Q⋊′𝕜G (for twist(δ, γ)).
BasisMap thetaGamma(const SmashPathCoalgebra& from, const SmashPathCoalgebra& to, const VertexWeighting& gamma);

struct ThetaReport {
  AxiomCheck map;
  bool injective = true;
  bool commutesWithAction = true;
  bool commutesWithProjection = true;
  bool ok() const { return map.ok && injective && commutesWithAction && commutesWithProjection; }
};

ThetaReport verifyThetaGamma(const SmashPathCoalgebra& from, const SmashPathCoalgebra& to,
                             const VertexWeighting& gamma);

}  // namespace covol

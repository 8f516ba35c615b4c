#pragma once

// Finite-dimensional right comodules given by a coefficient matrix:
// ρ(mⱼ) = Σᵢ mᵢ ⊗ cᵢⱼ, with every cᵢⱼ a vector over the basis of a coalgebra.
// Gradings use the convention deg(mᵢ)·δ(cᵢⱼ) = deg(mⱼ).

#include "covol/coalgebra.hpp"
#include "covol/exactlin.hpp"
#include "covol/groups.hpp"
#include "covol/quiver.hpp"
#include "covol/voltage.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace covol {

class Comodule {
 public:
  Comodule() = default;
  /// Zero coaction on `labels.size()` basis vectors.
  explicit Comodule(std::vector<std::string> labels);

  std::size_t dimension() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const SparseVector& coefficient(std::size_t i, std::size_t j) const { return coeff_.at(i).at(j); }
  void setCoefficient(std::size_t i, std::size_t j, SparseVector c) { coeff_.at(i).at(j) = std::move(c); }

  friend bool operator==(const Comodule&, const Comodule&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<SparseVector>> coeff_;
};

/// Δ(cᵢⱼ) = Σₖ cᵢₖ⊗cₖⱼ and ε(cᵢⱼ) = δᵢⱼ, checked on every pair whose
/// coefficient is exact in C.
AxiomCheck verifyComodule(const Comodule& m, const BasisCoalgebra& c);
/// Same over the path coalgebra of B, after checking every coefficient lies in B.
AxiomCheck verifyComodule(const Comodule& m, const SubcoalgebraBasis& b);

struct GradedComodule {
  Comodule module;
  std::vector<GroupElement> degrees;
};

/// Every path p in cᵢⱼ has deg(mᵢ)·δ(p) = deg(mⱼ). Returns the first offending (i, j).
std::optional<std::pair<std::size_t, std::size_t>> checkGrading(const GradedComodule& m, const PathIndex& index,
                                                                const ArrowWeighting& delta);

/// cᵢⱼ ↦ cᵢⱼ⋊deg(mⱼ)⁻¹ over 𝕜Q≤N ⋊ 𝕜G. Throws std::out_of_range when a
/// degree leaves the window.
Comodule toSmashComodule(const GradedComodule& m, const SmashPathCoalgebra& smash);

struct FromSmash {
  GradedComodule graded;
  /// New basis in the old coordinates (columns), when the 𝕜G-coaction was not
  /// diagonal on the given basis.
  std::optional<RationalMatrix> basisChange;
};

/// Degrees from the 𝕜G-coaction c⋊g ↦ ε(c)g⁻¹, coaction from c⋊g ↦ c. Throws
/// std::invalid_argument when the 𝕜G-projectors do not split N.
FromSmash fromSmashComodule(const Comodule& n, const SmashPathCoalgebra& smash);

/// Coefficients pushed through a coalgebra map given on basis elements.
Comodule pushDown(const Comodule& n, const BasisMap& f);
/// F on paths of a smash cover: cover path index ↦ base path index.
BasisMap coverProjection(const SmashQuiver& smash, const PathIndex& coverIndex, const PathIndex& baseIndex);
/// p⋊g ↦ p.
BasisMap smashProjection(const SmashPathCoalgebra& smash);

/// Basis-level quiver representation: basis vector i sits at vertexOf[i], and
/// (arrows[a])ᵢⱼ is the coefficient of mᵢ in a·mⱼ.
struct Representation {
  std::vector<std::size_t> vertexOf;
  std::vector<RationalMatrix> arrows;
  std::vector<std::string> labels;

  std::size_t dimension() const { return vertexOf.size(); }
};

/// cᵢⱼ = Σ_p (A_p)ᵢⱼ p over the paths of the index. Throws std::invalid_argument
/// when an arrow operator leaves its vertex spaces or some path of length N+1
/// acts nontrivially (the representation is not a comodule within the truncation).
Comodule comoduleFromRepresentation(const PathIndex& index, const Representation& rep);
/// Inverse: arrow operators read off the length-one coefficients. Throws
/// std::invalid_argument when longer coefficients are not the matching products.
Representation representationOf(const Comodule& m, const PathIndex& index);

/// One-dimensional spaces along the walk, arrows acting by 1.
Representation stringRepresentation(const Quiver& q, const Walk& w);
/// A closed walk with the last step acting by λ.
Representation bandRepresentation(const Quiver& q, const Walk& closed, const Rational& lambda);

/// ρ(m₀) = m₀⊗t(a), ρ(m₁) = m₀⊗a + m₁⊗s(a).
Comodule weylComodule(const PathIndex& index, std::size_t arrow);

/// Comodule structure on a right coideal R with the given basis: Δ(vⱼ) = Σᵢ vᵢ⊗cᵢⱼ.
/// Throws std::invalid_argument if R is not a right coideal.
Comodule comoduleFromRightCoideal(const PathIndex& index, const std::vector<SparseVector>& basis);

struct Gradable {
  GradedComodule witness;
  std::optional<RationalMatrix> basisChange;
};
struct Ungradable {
  /// Every graded dimension vector over the window: entry [x][g] = dim M_{x,g}.
  std::vector<std::vector<std::vector<std::size_t>>> exhausted;
  std::string reason;
};
struct UnknownGrading {
  std::string reason;
};
using GradabilityResult = std::variant<Gradable, Ungradable, UnknownGrading>;

/// Bounded search for a grading of a representation-shaped comodule. Gradings on
/// the given basis are found by propagation along nonzero coefficients. Over ℤ,
/// a grading is a diagonalizable degree operator D preserving vertex spaces with
/// D A_a − A_a D = −δ(a)A_a; inconsistency of that system, also with the trace
/// of each D_x fixed by a dimension vector, certifies every vector infeasible.
/// Throws std::invalid_argument on precondition violations.
GradabilityResult gradabilityProbe(const Comodule& m, const PathIndex& index, const ArrowWeighting& delta,
                                   const Window& window);

}  // namespace covol

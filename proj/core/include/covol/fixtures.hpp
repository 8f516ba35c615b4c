#pragma once

// The standard examples: single and double loop, Kronecker, the triangle with
// ac or ac+bc, and the SL(2) block quiver.

#include "covol/coalgebra.hpp"
#include "covol/groups.hpp"
#include "covol/quiver.hpp"
#include "covol/voltage.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace covol {

struct Fixture {
  std::string name;
  Quiver quiver;
  ArrowWeighting weighting;
  std::size_t truncation = 0;
  std::vector<SparseVector> generators;
  SubcoalgebraBasis b;
};

/// One vertex x, loop a, δ(a) = 1 in Z; B = 𝕜{x, a, …, a^truncation}.
Fixture loopFixture(std::size_t truncation = 3);
/// One vertex x, loops a, b, δ = (x, y) in free(2); B = 𝕜Q≤2.
Fixture doubleLoopFixture();
/// a, b: x → y, δ(a) = 0, δ(b) = 1 in Z; B = 𝕜Q≤1.
Fixture kroneckerFixture();
/// c: x → y, a, b: y → z with δ(a) = 0, δ(b) = 1, δ(c) = 0 in Z; B generated by ac.
Fixture triangleAcFixture();
/// Same quiver and weighting; B generated by ac + bc.
Fixture triangleAcBcFixture();
/// x₀ … x_{m−1}, aᵢ: xᵢ → xᵢ₊₁, bᵢ: xᵢ₊₁ → xᵢ (interleaved a₀, b₀, a₁, …),
/// δ(a) = 0, δ(b) = −1 in Z; B generated by d₀ = b₀a₀ and dᵢ₊₁ = aᵢbᵢ + bᵢ₊₁aᵢ₊₁.
Fixture sl2Fixture(std::size_t m = 5);

std::vector<Fixture> allFixtures();

/// Path from right-to-left arrow names, e.g. {"a", "c"} for ac.
SparseVector pathVector(const PathIndex& index, const std::vector<std::string>& rightToLeft);

}  // namespace covol

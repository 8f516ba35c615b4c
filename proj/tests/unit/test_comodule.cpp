#include "covol/comodule.hpp"
#include "covol/fixtures.hpp"

#include <gtest/gtest.h>

#include <variant>

using namespace covol;

namespace {

const Group kZ = Group::integers();
GroupElement z(std::int64_t k) { return kZ.abelianElement({k}); }

RationalMatrix square(std::size_t n) { return RationalMatrix(n, std::vector<Rational>(n)); }

RationalMatrix product(const RationalMatrix& a, const RationalMatrix& b) {
  auto out = square(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a.size(); ++k)
      for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

SparseVector unitPath(const PathIndex& index, const std::vector<std::string>& names) {
  return pathVector(index, names);
}

// x·I + a·N + a²·N² on the loop with truncation 3.
Comodule loopComodule(const PathIndex& index, const RationalMatrix& n) {
  const auto n2 = product(n, n);
  Comodule m({"m0", "m1", "m2"});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      SparseVector c;
      if (i == j) c.add(0, Rational(1));
      c.axpy(n[i][j], unitPath(index, {"a"}));
      c.axpy(n2[i][j], unitPath(index, {"a", "a"}));
      m.setCoefficient(i, j, c);
    }
  return m;
}

RationalMatrix shift() {
  auto n = square(3);
  n[1][0] = 1;
  n[2][1] = 1;
  return n;
}

}  // namespace

TEST(Comodule, SimpleAndWeyl) {
  const auto k = kroneckerFixture();
  const auto& index = k.b.index();
  Comodule simple({"s"});
  simple.setCoefficient(0, 0, SparseVector::unit(1));
  EXPECT_TRUE(verifyComodule(simple, k.b).ok);

  const auto weyl = weylComodule(index, 0);
  EXPECT_EQ(weyl.coefficient(0, 1), unitPath(index, {"a"}));
  EXPECT_TRUE(verifyComodule(weyl, k.b).ok);

  auto broken = weyl;
  broken.setCoefficient(1, 1, {});
  EXPECT_FALSE(verifyComodule(broken, k.b).ok);

  auto wrongEnd = weyl;
  wrongEnd.setCoefficient(0, 0, SparseVector::unit(0));
  EXPECT_FALSE(verifyComodule(wrongEnd, k.b).ok);
}

TEST(Comodule, CoefficientsOutsideSubcoalgebra) {
  const auto t = triangleAcBcFixture();
  const auto& index = t.b.index();
  Comodule m({"m0", "m1", "m2"});
  m.setCoefficient(0, 0, SparseVector::unit(2));
  m.setCoefficient(0, 1, unitPath(index, {"a"}));
  m.setCoefficient(0, 2, unitPath(index, {"a", "c"}));
  m.setCoefficient(1, 1, SparseVector::unit(1));
  m.setCoefficient(1, 2, unitPath(index, {"c"}));
  m.setCoefficient(2, 2, SparseVector::unit(0));
  // A comodule of 𝕜Q≤2, but ac alone is not in B.
  EXPECT_TRUE(verifyComodule(m, PathCoalgebra(t.b.indexPtr())).ok);
  EXPECT_FALSE(verifyComodule(m, t.b).ok);
}

TEST(Comodule, RightCoideal) {
  const auto k = kroneckerFixture();
  const auto& index = k.b.index();
  const auto m = comoduleFromRightCoideal(index, {SparseVector::unit(1), unitPath(index, {"a"})});
  EXPECT_EQ(m.coefficient(0, 0), SparseVector::unit(1));
  EXPECT_EQ(m.coefficient(0, 1), unitPath(index, {"a"}));
  EXPECT_EQ(m.coefficient(1, 1), SparseVector::unit(0));
  EXPECT_TRUE(m.coefficient(1, 0).empty());
  EXPECT_THROW(comoduleFromRightCoideal(index, {unitPath(index, {"a"})}), std::invalid_argument);
}

TEST(Grading, WeylOverKronecker) {
  const auto k = kroneckerFixture();
  const auto& index = k.b.index();
  const GradedComodule wa{weylComodule(index, 0), {z(0), z(0)}};
  EXPECT_FALSE(checkGrading(wa, index, k.weighting));
  const GradedComodule wrong{weylComodule(index, 1), {z(0), z(0)}};
  EXPECT_EQ(checkGrading(wrong, index, k.weighting), (std::pair<std::size_t, std::size_t>{0, 1}));
  const GradedComodule wb{weylComodule(index, 1), {z(0), z(1)}};
  EXPECT_FALSE(checkGrading(wb, index, k.weighting));
  // Shifting every degree by the same element keeps a grading.
  const GradedComodule shifted{weylComodule(index, 1), {z(-3), z(-2)}};
  EXPECT_FALSE(checkGrading(shifted, index, k.weighting));
}

TEST(Smash, RoundTrip) {
  const auto k = kroneckerFixture();
  const SmashPathCoalgebra smash(k.b.indexPtr(), k.weighting, Window::ball(kZ, 2));
  const GradedComodule wb{weylComodule(k.b.index(), 1), {z(0), z(1)}};
  const auto n = toSmashComodule(wb, smash);
  EXPECT_TRUE(verifyComodule(n, smash).ok);
  // m₁ has degree 1: c₀₁ = b ↦ b⋊(−1).
  EXPECT_EQ(n.coefficient(0, 1), SparseVector::unit(smash.symbol(k.b.index().arrowPath(1), z(-1)).value()));
  const auto back = fromSmashComodule(n, smash);
  EXPECT_FALSE(back.basisChange);
  EXPECT_EQ(back.graded.degrees, wb.degrees);
  EXPECT_EQ(back.graded.module, wb.module);
  EXPECT_EQ(pushDown(n, smashProjection(smash)), wb.module);
}

TEST(Smash, VerticesOnly) {
  const auto l = loopFixture(2);
  const SmashPathCoalgebra smash(l.b.indexPtr(), l.weighting, Window::ball(kZ, 1));
  Comodule simple({"s"});
  simple.setCoefficient(0, 0, SparseVector::unit(0));
  for (std::int64_t d = -1; d <= 1; ++d) {
    const auto n = toSmashComodule({simple, {z(d)}}, smash);
    EXPECT_EQ(n.coefficient(0, 0), SparseVector::unit(smash.symbol(0, z(-d)).value()));
    EXPECT_EQ(fromSmashComodule(n, smash).graded.degrees, std::vector<GroupElement>{z(d)});
  }
  EXPECT_THROW(toSmashComodule({simple, {z(2)}}, smash), std::out_of_range);
}

TEST(Representation, LoopString) {
  const auto l = loopFixture(3);
  const auto& index = l.b.index();
  const auto rep = stringRepresentation(l.quiver, Walk::path(l.quiver, {0, 0}));
  const auto m = comoduleFromRepresentation(index, rep);
  EXPECT_EQ(m.coefficient(1, 0), unitPath(index, {"a"}));
  EXPECT_EQ(m.coefficient(2, 1), unitPath(index, {"a"}));
  EXPECT_EQ(m.coefficient(2, 0), unitPath(index, {"a", "a"}));
  EXPECT_TRUE(m.coefficient(0, 2).empty());
  EXPECT_TRUE(verifyComodule(m, l.b).ok);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_EQ(m.coefficient(i, j), loopComodule(index, shift()).coefficient(i, j));

  const auto back = representationOf(m, index);
  EXPECT_EQ(back.vertexOf, rep.vertexOf);
  EXPECT_EQ(back.arrows, rep.arrows);
  // Arrow operators are nilpotent below the truncation.
  const auto& a = back.arrows[0];
  EXPECT_NE(product(a, a), square(3));
  EXPECT_EQ(product(a, product(a, a)), square(3));
}

TEST(Representation, LongBandLeavesTruncation) {
  const auto l = loopFixture(3);
  const auto band = bandRepresentation(l.quiver, Walk::path(l.quiver, {0}), Rational(1));
  EXPECT_THROW(comoduleFromRepresentation(l.b.index(), band), std::invalid_argument);
}

TEST(Representation, InconsistentLongCoefficient) {
  const auto l = loopFixture(3);
  auto m = loopComodule(l.b.index(), shift());
  m.setCoefficient(2, 0, Rational(2) * unitPath(l.b.index(), {"a", "a"}));
  EXPECT_THROW(representationOf(m, l.b.index()), std::invalid_argument);
}

TEST(PushDown, KroneckerZigZag) {
  const auto k = kroneckerFixture();
  const auto w = Window::ball(kZ, 2);
  const SmashQuiver cover(k.quiver, k.weighting, w);
  const auto coverIndex = makePathIndex(cover.quiver(), 1);
  // x[0] -a[0]-> y[0] <-b[-1]- x[-1]: a string in the cover.
  const auto x0 = cover.vertex(0, z(0)).value();
  const auto a0 = cover.arrow(0, z(0)).value();
  const auto bm1 = cover.arrow(1, z(-1)).value();
  const auto walk = Walk::fromSteps(cover.quiver(), x0, {{a0, true}, {bm1, false}});
  const auto up = comoduleFromRepresentation(*coverIndex, stringRepresentation(cover.quiver(), walk));
  const auto down = pushDown(up, coverProjection(cover, *coverIndex, k.b.index()));
  const auto expected =
      comoduleFromRepresentation(k.b.index(), stringRepresentation(k.quiver, Walk::fromSteps(k.quiver, 0, {{0, true}, {1, false}})));
  EXPECT_EQ(down, expected);
  EXPECT_TRUE(verifyComodule(down, k.b).ok);
}

TEST(Probe, KroneckerBandIsUngradable) {
  const auto k = kroneckerFixture();
  const auto& index = k.b.index();
  Comodule band({"m0", "m1"});
  band.setCoefficient(0, 0, SparseVector::unit(1));
  band.setCoefficient(0, 1, unitPath(index, {"a"}) + unitPath(index, {"b"}));
  band.setCoefficient(1, 1, SparseVector::unit(0));
  ASSERT_TRUE(verifyComodule(band, k.b).ok);
  const auto r = gradabilityProbe(band, index, k.weighting, Window::ball(kZ, 2));
  ASSERT_TRUE(std::holds_alternative<Ungradable>(r));
  EXPECT_FALSE(std::get<Ungradable>(r).exhausted.empty());
}

TEST(Probe, KroneckerStringIsGradable) {
  const auto k = kroneckerFixture();
  const auto& index = k.b.index();
  const auto s = comoduleFromRepresentation(
      index, stringRepresentation(k.quiver, Walk::fromSteps(k.quiver, 0, {{0, true}, {1, false}})));
  const auto r = gradabilityProbe(s, index, k.weighting, Window::ball(kZ, 2));
  ASSERT_TRUE(std::holds_alternative<Gradable>(r));
  const auto& g = std::get<Gradable>(r);
  EXPECT_FALSE(checkGrading(g.witness, index, k.weighting));

  // With δ(a) = 1, δ(b) = 0 the same string has degrees (0, −1, −1).
  const ArrowWeighting swapped{kZ, {z(1), z(0)}};
  const auto r2 = gradabilityProbe(s, index, swapped, Window::ball(kZ, 2));
  ASSERT_TRUE(std::holds_alternative<Gradable>(r2));
  const auto& w = std::get<Gradable>(r2).witness;
  EXPECT_FALSE(checkGrading(w, index, swapped));
  EXPECT_EQ(w.degrees[1], kZ.multiply(w.degrees[0], z(-1)));
  EXPECT_EQ(w.degrees[2], w.degrees[1]);
}

TEST(Probe, SimpleComodule) {
  const auto l = loopFixture(3);
  Comodule simple({"s"});
  simple.setCoefficient(0, 0, SparseVector::unit(0));
  const auto r = gradabilityProbe(simple, l.b.index(), l.weighting, Window::ball(kZ, 1));
  ASSERT_TRUE(std::holds_alternative<Gradable>(r));
}

TEST(Probe, RotatedBasisNeedsBasisChange) {
  const auto l = loopFixture(3);
  const auto& index = l.b.index();
  auto p = square(3);
  p[0][0] = p[1][1] = p[2][2] = 1;
  p[0][1] = 1;
  p[1][2] = 1;
  const auto pinv = inverse(p).value();
  const auto rotated = loopComodule(index, product(pinv, product(shift(), p)));
  ASSERT_TRUE(verifyComodule(rotated, l.b).ok);
  const auto r = gradabilityProbe(rotated, index, l.weighting, Window::ball(kZ, 2));
  ASSERT_TRUE(std::holds_alternative<Gradable>(r));
  const auto& g = std::get<Gradable>(r);
  EXPECT_TRUE(g.basisChange);
  EXPECT_FALSE(checkGrading(g.witness, index, l.weighting));
  EXPECT_TRUE(verifyComodule(g.witness.module, l.b).ok);
}

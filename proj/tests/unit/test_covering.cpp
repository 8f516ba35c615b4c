#include "covol/covering.hpp"
#include "covol/fixtures.hpp"

#include <gtest/gtest.h>

using namespace covol;

namespace {

const Group kZ = Group::integers();
GroupElement z(std::int64_t k) { return kZ.abelianElement({k}); }

}  // namespace

TEST(Lifted, VerticesAndArrowsOnly) {
  const auto k = kroneckerFixture();
  const auto w = Window::ball(kZ, 2);
  const auto cov = buildLiftedSubcoalgebra(k.b, k.weighting, w);
  // Every vertex and arrow of the windowed cover, and nothing longer.
  EXPECT_EQ(cov.lifted.dimension(), cov.smash.quiver().vertexCount() + cov.smash.quiver().arrowCount());
  EXPECT_TRUE(isCoalgebraCovering(cov).ok);
  EXPECT_TRUE(verifyProjection(cov).ok);
}

TEST(Lifted, LoopTruncation) {
  const auto loop = loopFixture(3);
  const auto w = Window::ball(kZ, 4);
  const auto cov = buildLiftedSubcoalgebra(loop.b, loop.weighting, w);
  const auto& ci = cov.coverIndex();
  const auto& s = cov.smash;
  // a^l ⋊ i is the path of length l starting at x[i].
  for (std::int64_t i = -4; i <= 1; ++i) {
    std::vector<std::size_t> arrows;
    for (std::int64_t l = 0; l < 3; ++l) arrows.push_back(*s.arrow(0, z(i + l)));
    const auto p = ci.findArrows(arrows);
    ASSERT_TRUE(p);
    EXPECT_TRUE(cov.lifted.contains(SparseVector::unit(*p)));
  }
  EXPECT_TRUE(isCoalgebraCovering(cov).ok);
}

TEST(Lifted, Sl2ContainsLiftedMinimalElements) {
  const auto sl2 = sl2Fixture();
  const auto w = Window::ball(kZ, 2);
  const auto cov = buildLiftedSubcoalgebra(sl2.b, sl2.weighting, w);
  const auto& s = cov.smash;
  const auto& ci = cov.coverIndex();
  const auto& q = sl2.quiver;
  // d1 lifted at x1[0]: a0[-1].b0[0] + b1[0].a1[0], a closed element at x1[0].
  const auto a0 = q.arrowIndex("a0"), b0 = q.arrowIndex("b0"), a1 = q.arrowIndex("a1"), b1 = q.arrowIndex("b1");
  const auto first = ci.findArrows({*s.arrow(b0, z(0)), *s.arrow(a0, z(-1))});
  const auto second = ci.findArrows({*s.arrow(a1, z(0)), *s.arrow(b1, z(0))});
  ASSERT_TRUE(first && second);
  EXPECT_EQ(ci.path(*first).target, ci.path(*second).target);
  EXPECT_TRUE(cov.lifted.contains(SparseVector::unit(*first) + SparseVector::unit(*second)));
  EXPECT_FALSE(cov.lifted.contains(SparseVector::unit(*first)));
  const auto verdict = isCoalgebraCovering(cov);
  EXPECT_TRUE(verdict.ok) << verdict.reason;
  EXPECT_GT(verdict.checked, 0u);
}

TEST(Lifted, InhomogeneousBuildFails) {
  const auto acbc = triangleAcBcFixture();
  EXPECT_THROW(buildLiftedSubcoalgebra(acbc.b, acbc.weighting, Window::ball(kZ, 2)), std::invalid_argument);
  const auto cov = liftSubcoalgebra(acbc.b, acbc.weighting, Window::ball(kZ, 2));
  const auto verdict = isCoalgebraCovering(cov);
  EXPECT_FALSE(verdict.ok);
  ASSERT_TRUE(verdict.witness);
  EXPECT_EQ(acbc.b.index().format(*verdict.witness), "ac+bc");
  ASSERT_TRUE(verdict.witnessVertex);
  EXPECT_EQ(cov.smash.quiver().vertexName(*verdict.witnessVertex), "x[0]");
}

TEST(Lifted, NoMinimalElementsIsVacuous) {
  const auto ac = triangleAcFixture();
  const auto verdict = isCoalgebraCovering(liftSubcoalgebra(ac.b, ac.weighting, Window::ball(kZ, 2)));
  EXPECT_TRUE(verdict.ok);
  EXPECT_EQ(verdict.checked, 0u);
}

TEST(CrossCheck, Fixtures) {
  const auto sl2 = sl2Fixture();
  const auto c = theoremCovCrossCheck(sl2.b, sl2.weighting, spanningTreeAndPi1(sl2.quiver, 0), Window::ball(kZ, 2));
  EXPECT_TRUE(c.homogeneous && c.connected && c.coveringOK);

  const auto acbc = triangleAcBcFixture();
  const auto d =
      theoremCovCrossCheck(acbc.b, acbc.weighting, spanningTreeAndPi1(acbc.quiver, 0), Window::ball(kZ, 2));
  EXPECT_FALSE(d.homogeneous);
  EXPECT_TRUE(d.connected);
  EXPECT_FALSE(d.coveringOK);
  EXPECT_EQ(d.witnessText, "ac+bc");

  const auto t = Group::trivial();
  const auto e = theoremCovCrossCheck(acbc.b, constantWeighting(acbc.quiver, t), spanningTreeAndPi1(acbc.quiver, 0),
                                      Window::ball(t, 0));
  EXPECT_TRUE(e.homogeneous && e.connected && e.coveringOK);
}

TEST(Relators, Examples) {
  const auto ac = triangleAcFixture();
  EXPECT_TRUE(extractRelators(ac.b, spanningTreeAndPi1(ac.quiver, 0)).relators.empty());

  const auto acbc = triangleAcBcFixture();
  const auto pres = spanningTreeAndPi1(acbc.quiver, 0);
  // Tree {c, a}, co-tree {b}.
  ASSERT_EQ(pres.coTree, std::vector<std::size_t>{acbc.quiver.arrowIndex("b")});
  const auto rs = extractRelators(acbc.b, pres);
  ASSERT_EQ(rs.relators.size(), 1u);
  EXPECT_EQ(rs.relators[0].walk.format(acbc.quiver), "c^-a^-bc");
  EXPECT_EQ(rs.relators[0].word, Word{1});

  const auto sl2 = sl2Fixture();
  const auto sp = spanningTreeAndPi1(sl2.quiver, 0);
  EXPECT_EQ(sp.rank(), 4u);
  const auto srs = extractRelators(sl2.b, sp);
  EXPECT_EQ(srs.relators.size(), 3u);
  for (const auto& r : srs.relators) {
    EXPECT_TRUE(r.walk.isClosed());
    EXPECT_EQ(r.walk.start(), 0u);
    EXPECT_TRUE(kZ.isIdentity(weightWalk(sl2.weighting, r.walk)));
    EXPECT_EQ(walkToWord(sp, r.walk), r.word);
  }
}

TEST(Universal, Fixtures) {
  const auto describe = [](const Fixture& f) {
    return universalGradingGroup(f.b, spanningTreeAndPi1(f.quiver, 0)).describe();
  };
  EXPECT_EQ(describe(loopFixture()), "Z");
  EXPECT_EQ(describe(doubleLoopFixture()), "free(2)");
  EXPECT_EQ(describe(kroneckerFixture()), "Z");
  EXPECT_EQ(describe(triangleAcFixture()), "Z");
  EXPECT_EQ(describe(triangleAcBcFixture()), "trivial (abelianized)");
  EXPECT_EQ(describe(sl2Fixture()), "Z (abelianized)");

  const auto sl2 = sl2Fixture();
  const auto pres = spanningTreeAndPi1(sl2.quiver, 0);
  const auto u = universalGradingGroup(sl2.b, pres);
  EXPECT_EQ(u.presentation.generatorCount, 4u);
  EXPECT_EQ(u.presentation.relators.size(), 3u);
  EXPECT_TRUE(u.abelianized);
  EXPECT_TRUE(isConnectedWeighting(sl2.quiver, u.universalWeighting, pres));
  EXPECT_TRUE(isHomogeneous(sl2.b, u.universalWeighting).homogeneous);
  for (const auto& r : u.presentation.relators) {
    auto g = u.group.identity();
    for (int l : r) {
      const auto& img = u.generatorImages.at(static_cast<std::size_t>(std::abs(l)) - 1);
      g = u.group.multiply(g, l > 0 ? img : u.group.inverse(img));
    }
    EXPECT_TRUE(u.group.isIdentity(g));
  }
}

TEST(Universal, Sl2WeightingIsATwistOfTheFixture) {
  const auto sl2 = sl2Fixture();
  const auto pres = spanningTreeAndPi1(sl2.quiver, 0);
  const auto u = universalGradingGroup(sl2.b, pres);
  ASSERT_EQ(u.group, kZ);
  // Up to the automorphism -1 of Z, the universal weighting is a twist of δ(a) = 0, δ(b) = -1.
  ArrowWeighting negated{kZ, {}};
  for (const auto& v : u.universalWeighting.values) negated.values.push_back(kZ.inverse(v));
  const bool direct = findTwist(sl2.quiver, sl2.weighting, u.universalWeighting, pres).has_value();
  const bool flipped = findTwist(sl2.quiver, sl2.weighting, negated, pres).has_value();
  EXPECT_TRUE(direct || flipped);
}

TEST(Universal, FactorMapsAndCovers) {
  for (const auto& f : allFixtures()) {
    const auto pres = spanningTreeAndPi1(f.quiver, 0);
    if (!isHomogeneous(f.b, f.weighting).homogeneous) continue;
    const auto u = universalGradingGroup(f.b, pres);
    const auto rs = extractRelators(f.b, pres);
    const auto cov = universalCover(f.b, u, Window::ball(u.group, 2));
    EXPECT_TRUE(isCoalgebraCovering(cov).ok) << f.name;
    EXPECT_TRUE(verifyProjection(cov).ok) << f.name;
    const SmashQuiver target(f.quiver, f.weighting, Window::ball(f.weighting.group, 2));
    const auto fm = universalFactorMap(u, rs, cov.smash, target);
    EXPECT_TRUE(fm.ok) << f.name << ": " << fm.reason;
    EXPECT_TRUE(fm.relatorsVanish) << f.name;
    EXPECT_GT(fm.mappedArrows, 0u) << f.name;
  }
}

TEST(Universal, TrivialQuotientCoverIsBase) {
  const auto acbc = triangleAcBcFixture();
  const auto u = universalGradingGroup(acbc.b, spanningTreeAndPi1(acbc.quiver, 0));
  const auto cov = universalCover(acbc.b, u, Window::ball(u.group, 2));
  EXPECT_EQ(cov.smash.quiver().vertexCount(), acbc.quiver.vertexCount());
  EXPECT_EQ(cov.lifted.dimension(), acbc.b.dimension());
  EXPECT_TRUE(isCoalgebraCovering(cov).ok);
}

TEST(Universal, SpanningTreesDifferByTwist) {
  Quiver q;
  for (auto n : {"x", "y", "z"}) q.addVertex(n);
  q.addArrow("a", 0, 1);
  q.addArrow("b", 1, 2);
  q.addArrow("c", 2, 0);
  q.addArrow("d", 0, 2);
  const auto first = spanningTreeAndPi1(q, 0);
  EXPECT_EQ(first.inTree, (std::vector<bool>{true, false, true, false}));
  const auto second = presentationFromTree(q, 0, {true, true, false, false});
  ASSERT_EQ(second.rank(), 2u);
  const auto change = relateSpanningTrees(q, first, second);
  ASSERT_TRUE(change.gamma);
  EXPECT_EQ(change.gamma->values[0], change.translated.group.identity());
  const Group f = Group::free(2);
  ArrowWeighting d1 = constantWeighting(q, f);
  d1.values[1] = f.freeElement({1});
  d1.values[3] = f.freeElement({2});
  EXPECT_EQ(twist(q, d1, *change.gamma).values, change.translated.values);
}

TEST(Universal, PresentationFromTreeRejectsNonTrees) {
  Quiver q;
  for (auto n : {"x", "y", "z"}) q.addVertex(n);
  q.addArrow("a", 0, 1);
  q.addArrow("b", 1, 2);
  q.addArrow("c", 2, 0);
  EXPECT_THROW(presentationFromTree(q, 0, {true, true, true}), std::invalid_argument);
  EXPECT_THROW(presentationFromTree(q, 0, {true, false, false}), std::invalid_argument);
  EXPECT_NO_THROW(presentationFromTree(q, 0, {false, true, true}));
}

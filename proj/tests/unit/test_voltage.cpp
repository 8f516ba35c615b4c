#include "covol/voltage.hpp"

#include <gtest/gtest.h>

using namespace covol;

namespace {

const Group kZ = Group::integers();

Quiver loopQuiver() {
  Quiver q;
  q.addVertex("x");
  q.addArrow("a", 0, 0);
  return q;
}

Quiver kronecker() {
  Quiver q;
  q.addVertex("x");
  q.addVertex("y");
  q.addArrow("a", 0, 1);
  q.addArrow("b", 0, 1);
  return q;
}

GroupElement z(std::int64_t k) { return kZ.abelianElement({k}); }

ArrowWeighting kronDelta() { return {kZ, {z(0), z(1)}}; }

Window interval(std::int64_t lo, std::int64_t hi) {
  std::vector<GroupElement> els;
  for (auto k = lo; k <= hi; ++k) els.push_back(z(k));
  return Window(kZ, els);
}

}  // namespace

TEST(WeightWalk, Examples) {
  const auto q = kronecker();
  EXPECT_TRUE(kZ.isIdentity(weightWalk(kronDelta(), Walk::at(0))));
  const auto w = concat(Walk::arrow(q, 1, false), Walk::arrow(q, 0));
  EXPECT_EQ(weightWalk(kronDelta(), w), z(-1));
  const auto loop = loopQuiver();
  const ArrowWeighting d{kZ, {z(1)}};
  EXPECT_EQ(weightWalk(d, Walk::path(loop, {0, 0, 0, 0})), z(4));
}

TEST(Connected, Examples) {
  const auto q = loopQuiver();
  const auto pres = spanningTreeAndPi1(q, 0);
  EXPECT_TRUE(isConnectedWeighting(q, {kZ, {z(1)}}, pres));
  EXPECT_FALSE(isConnectedWeighting(q, {kZ, {z(2)}}, pres));
  const auto t = Group::trivial();
  EXPECT_TRUE(isConnectedWeighting(q, {t, {t.identity()}}, pres));
}

TEST(SmashQuiver, LoopOverCyclicIsCyclicQuiver) {
  for (std::int64_t n = 2; n <= 6; ++n) {
    const auto g = Group::cyclic(n);
    const SmashQuiver s(loopQuiver(), {g, {g.abelianElement({1})}}, Window::ball(g, 0));
    const auto& c = s.quiver();
    ASSERT_EQ(c.vertexCount(), static_cast<std::size_t>(n));
    ASSERT_EQ(c.arrowCount(), static_cast<std::size_t>(n));
    for (std::size_t v = 0; v < c.vertexCount(); ++v) {
      EXPECT_EQ(c.outArrows(v).size(), 1u);
      EXPECT_EQ(c.inArrows(v).size(), 1u);
    }
    // Following out-arrows from x[0] returns after exactly n steps.
    std::size_t v = *s.vertex(0, g.identity());
    std::size_t steps = 0;
    do {
      v = c.arrow(c.outArrows(v)[0]).target;
      ++steps;
    } while (v != *s.vertex(0, g.identity()));
    EXPECT_EQ(steps, static_cast<std::size_t>(n));
  }
}

TEST(SmashQuiver, KroneckerZigZag) {
  const SmashQuiver s(kronecker(), kronDelta(), interval(-3, 3));
  const auto& c = s.quiver();
  // a[g]: x[g] -> y[g] and b[g]: x[g] -> y[g+1]; b[3] leaves the window.
  EXPECT_EQ(c.vertexCount(), 14u);
  EXPECT_EQ(c.arrowCount(), 13u);
  for (std::int64_t g = -3; g <= 3; ++g) {
    const auto a = *s.arrow(0, z(g));
    EXPECT_EQ(c.arrow(a).source, *s.vertex(0, z(g)));
    EXPECT_EQ(c.arrow(a).target, *s.vertex(1, z(g)));
    if (g < 3) {
      EXPECT_EQ(c.arrow(*s.arrow(1, z(g))).target, *s.vertex(1, z(g + 1)));
    }
  }
  // Every x vertex is a source and every y vertex a sink: zig-zag orientation.
  for (std::size_t v = 0; v < c.vertexCount(); ++v) {
    if (s.vertexCoords(v).first == 0)
      EXPECT_TRUE(c.inArrows(v).empty());
    else
      EXPECT_TRUE(c.outArrows(v).empty());
  }
  EXPECT_TRUE(isCovering(c, kronecker(), s.projection(), &s.interior()).ok);
}

TEST(SmashQuiver, LoopOverZIsDirectedSegment) {
  const SmashQuiver s(loopQuiver(), {kZ, {z(1)}}, interval(-3, 3));
  const auto& c = s.quiver();
  EXPECT_EQ(c.vertexCount(), 7u);
  EXPECT_EQ(c.arrowCount(), 6u);
  for (std::int64_t g = -3; g < 3; ++g) {
    const auto& a = c.arrow(*s.arrow(0, z(g)));
    EXPECT_EQ(a.source, *s.vertex(0, z(g)));
    EXPECT_EQ(a.target, *s.vertex(0, z(g + 1)));
  }
  EXPECT_FALSE(s.isInterior(*s.vertex(0, z(3))));
  EXPECT_FALSE(s.isInterior(*s.vertex(0, z(-3))));
  EXPECT_TRUE(s.isInterior(*s.vertex(0, z(0))));
  EXPECT_THROW(smashQuiver(loopQuiver(), {kZ, {z(1)}}, interval(0, 0)), std::invalid_argument);
}

TEST(Lifting, WeightingFromLifting) {
  const auto q = kronecker();
  const auto cover = GaloisCover::fromSmash(SmashQuiver(q, kronDelta(), interval(-3, 3)));
  const auto& s = *cover.smash();
  EXPECT_EQ(weightingFromLifting(cover, liftingFromVertexWeighting(s, identityVertexWeighting(q, kZ))), kronDelta());
  const VertexWeighting gamma{kZ, {z(0), z(1)}};
  const auto shifted = weightingFromLifting(cover, liftingFromVertexWeighting(s, gamma));
  EXPECT_EQ(shifted, (ArrowWeighting{kZ, {z(-1), z(0)}}));

  const auto loop = loopQuiver();
  const auto loopCover = GaloisCover::fromSmash(SmashQuiver(loop, {kZ, {z(1)}}, interval(-3, 3)));
  const VertexWeighting g2{kZ, {z(2)}};
  EXPECT_EQ(weightingFromLifting(loopCover, liftingFromVertexWeighting(*loopCover.smash(), g2)),
            (ArrowWeighting{kZ, {z(1)}}));
}

TEST(Twist, Examples) {
  const auto q = kronecker();
  EXPECT_EQ(twist(q, kronDelta(), identityVertexWeighting(q, kZ)), kronDelta());
  EXPECT_EQ(twist(q, kronDelta(), {kZ, {z(0), z(1)}}), (ArrowWeighting{kZ, {z(-1), z(0)}}));
  const auto loop = loopQuiver();
  const ArrowWeighting d{kZ, {z(1)}};
  EXPECT_EQ(twist(loop, d, {kZ, {z(5)}}), d);
}

TEST(Twist, PathFormulaAndFindTwist) {
  const auto f = Group::free(2);
  Quiver q;
  q.addVertex("x");
  q.addVertex("y");
  q.addArrow("a", 0, 1);
  q.addArrow("b", 1, 0);
  q.addArrow("c", 1, 1);
  const ArrowWeighting d{f, {f.freeElement({1}), f.freeElement({2}), f.freeElement({1, 2})}};
  const VertexWeighting gamma{f, {f.identity(), f.freeElement({-1, 2})}};
  const auto t = twist(q, d, gamma);
  const auto p = Walk::path(q, {0, 2, 1});  // x -> y -> y -> x
  EXPECT_EQ(weightWalk(t, p),
            f.multiply(f.inverse(gamma[p.end()]), f.multiply(weightWalk(d, p), gamma[p.start()])));
  const auto pres = spanningTreeAndPi1(q, 0);
  const auto found = findTwist(q, d, t, pres);
  ASSERT_TRUE(found);
  EXPECT_TRUE(f.isIdentity((*found)[0]));
  EXPECT_EQ(twist(q, d, *found), t);
  const ArrowWeighting other{f, {f.identity(), f.identity(), f.identity()}};
  EXPECT_FALSE(findTwist(q, d, other, pres));
  // Conjugating by a non-central element at the base is a twist, but not one with γ(x) = 1.
  const auto conj = twist(q, d, {f, {f.freeElement({2}), f.freeElement({2})}});
  EXPECT_FALSE(findTwist(q, d, conj, pres));
}

TEST(DeckAction, Examples) {
  const auto g = Group::cyclic(4);
  const SmashQuiver s(loopQuiver(), {g, {g.abelianElement({1})}}, Window::ball(g, 0));
  const auto id = s.deckAction(g.identity());
  for (std::size_t v = 0; v < s.quiver().vertexCount(); ++v) EXPECT_EQ(id.vertexMap[v], v);
  const auto rot = s.deckAction(g.abelianElement({1}));
  for (std::int64_t k = 0; k < 4; ++k) {
    const auto v = *s.vertex(0, g.abelianElement({k}));
    EXPECT_EQ(rot.vertexMap[v], s.vertex(0, g.abelianElement({k + 1})));
    EXPECT_EQ(s.projection().vertexMap[*rot.vertexMap[v]], s.projection().vertexMap[v]);
  }
  for (std::size_t a = 0; a < s.quiver().arrowCount(); ++a)
    EXPECT_EQ(s.projection().arrowMap[*rot.arrowMap[a]], s.projection().arrowMap[a]);
}

TEST(SmashQuiver, DotHasFiberRanks) {
  const SmashQuiver s(kronecker(), kronDelta(), interval(-1, 1));
  const auto dot = s.toDot("K");
  EXPECT_NE(dot.find("{ rank=same; \"x[-1]\"; \"x[0]\"; \"x[1]\"; }"), std::string::npos);
  EXPECT_NE(dot.find("[style=dashed]"), std::string::npos);
}

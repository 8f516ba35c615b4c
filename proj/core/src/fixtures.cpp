#include "covol/fixtures.hpp"

#include <stdexcept>

namespace covol {

namespace {

Fixture finish(std::string name, Quiver q, ArrowWeighting delta, std::size_t n, std::vector<SparseVector> gens) {
  auto index = makePathIndex(q, n);
  auto b = subcoalgebraClosure(index, gens);
  return {std::move(name), std::move(q), std::move(delta), n, std::move(gens), std::move(b)};
}

std::vector<SparseVector> allPathsOfLength(const PathIndex& index, std::size_t n) {
  std::vector<SparseVector> out;
  for (std::size_t p = 0; p < index.size(); ++p)
    if (index.path(p).length() == n) out.push_back(SparseVector::unit(p));
  return out;
}

Quiver triangle() {
  Quiver q;
  const auto x = q.addVertex("x");
  const auto y = q.addVertex("y");
  const auto z = q.addVertex("z");
  q.addArrow("a", y, z);
  q.addArrow("b", y, z);
  q.addArrow("c", x, y);
  return q;
}

ArrowWeighting triangleWeighting() {
  const Group z = Group::integers();
  return {z, {z.abelianElement({0}), z.abelianElement({1}), z.abelianElement({0})}};
}

}  // namespace

SparseVector pathVector(const PathIndex& index, const std::vector<std::string>& rightToLeft) {
  const auto& q = index.quiver();
  if (rightToLeft.size() == 1)
    if (auto v = q.findVertex(rightToLeft[0])) return SparseVector::unit(*v);
  std::vector<std::size_t> arrows;
  for (auto it = rightToLeft.rbegin(); it != rightToLeft.rend(); ++it) arrows.push_back(q.arrowIndex(*it));
  const auto p = index.findArrows(arrows);
  if (!p) throw std::invalid_argument("not a path within the truncation");
  return SparseVector::unit(*p);
}

Fixture loopFixture(std::size_t truncation) {
  Quiver q;
  const auto x = q.addVertex("x");
  q.addArrow("a", x, x);
  const Group z = Group::integers();
  ArrowWeighting delta{z, {z.abelianElement({1})}};
  const auto index = makePathIndex(q, truncation);
  return finish("loop", q, delta, truncation, allPathsOfLength(*index, truncation));
}

Fixture doubleLoopFixture() {
  Quiver q;
  const auto x = q.addVertex("x");
  q.addArrow("a", x, x);
  q.addArrow("b", x, x);
  const Group f = Group::free(2);
  ArrowWeighting delta{f, {f.freeElement({1}), f.freeElement({2})}};
  const auto index = makePathIndex(q, 2);
  return finish("dbl", q, delta, 2, allPathsOfLength(*index, 2));
}

Fixture kroneckerFixture() {
  Quiver q;
  const auto x = q.addVertex("x");
  const auto y = q.addVertex("y");
  q.addArrow("a", x, y);
  q.addArrow("b", x, y);
  const Group z = Group::integers();
  ArrowWeighting delta{z, {z.abelianElement({0}), z.abelianElement({1})}};
  return finish("kron", q, delta, 1, {});
}

Fixture triangleAcFixture() {
  const Quiver q = triangle();
  const auto index = makePathIndex(q, 2);
  return finish("tri_ac", q, triangleWeighting(), 2, {pathVector(*index, {"a", "c"})});
}

Fixture triangleAcBcFixture() {
  const Quiver q = triangle();
  const auto index = makePathIndex(q, 2);
  return finish("tri_acbc", q, triangleWeighting(), 2,
                {pathVector(*index, {"a", "c"}) + pathVector(*index, {"b", "c"})});
}

Fixture sl2Fixture(std::size_t m) {
  if (m < 2) throw std::invalid_argument("SL2 fixture needs at least two vertices");
  Quiver q;
  for (std::size_t i = 0; i < m; ++i) q.addVertex("x" + std::to_string(i));
  const Group z = Group::integers();
  ArrowWeighting delta{z, {}};
  for (std::size_t i = 0; i + 1 < m; ++i) {
    q.addArrow("a" + std::to_string(i), i, i + 1);
    delta.values.push_back(z.abelianElement({0}));
    q.addArrow("b" + std::to_string(i), i + 1, i);
    delta.values.push_back(z.abelianElement({-1}));
  }
  const auto index = makePathIndex(q, 2);
  auto name = [](char c, std::size_t i) { return std::string(1, c) + std::to_string(i); };
  std::vector<SparseVector> gens{pathVector(*index, {"b0", "a0"})};
  for (std::size_t i = 0; i + 2 < m; ++i)
    gens.push_back(pathVector(*index, {name('a', i), name('b', i)}) +
                   pathVector(*index, {name('b', i + 1), name('a', i + 1)}));
  return finish("sl2", q, delta, 2, std::move(gens));
}

std::vector<Fixture> allFixtures() {
  return {loopFixture(), doubleLoopFixture(), kroneckerFixture(), triangleAcFixture(), triangleAcBcFixture(),
          sl2Fixture()};
}

}  // namespace covol

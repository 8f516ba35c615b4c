#include "covol/cli/json.hpp"

namespace covol::cli {

Json rationalJson(const Rational& r) { return toString(r); }

Json elementJson(const PathIndex& index, const SparseVector& v) {
  Json out = Json::array();
  for (const auto& [p, c] : v)
    out.push_back(
        {{"path", pathText(index, p)}, {"arrows", index.path(p).arrows}, {"coefficient", rationalJson(c)}});
  return out;
}

Json weightingJson(const Quiver& q, const ArrowWeighting& w) {
  Json out = Json::object();
  for (std::size_t a = 0; a < q.arrowCount(); ++a) out[q.arrow(a).name] = w.group.format(w[a]);
  return out;
}

Json workspaceJson(const Workspace& w) {
  Json quivers = Json::array();
  for (const auto& d : w.quivers) {
    Json arrows = Json::array();
    for (const auto& a : d.quiver.arrows())
      arrows.push_back(
          {{"name", a.name}, {"source", d.quiver.vertexName(a.source)}, {"target", d.quiver.vertexName(a.target)}});
    quivers.push_back({{"name", d.name}, {"vertices", d.quiver.vertexNames()}, {"arrows", arrows}});
  }
  Json groups = Json::array();
  for (const auto& d : w.groups) groups.push_back({{"name", d.name}, {"spec", groupSpec(d.group)}});
  Json weightings = Json::array();
  for (const auto& d : w.weightings)
    weightings.push_back({{"name", d.name},
                          {"quiver", d.quiver},
                          {"group", d.group},
                          {"values", weightingJson(w.findQuiver(d.quiver)->quiver, d.weighting)}});
  Json subcoalgebras = Json::array();
  for (const auto& d : w.subcoalgebras) {
    const auto b = subcoalgebraClosure(d.index, d.generators);
    Json gens = Json::array();
    for (const auto& g : d.generators) gens.push_back(elementJson(*d.index, g));
    Json basis = Json::array();
    for (const auto& r : b.rows()) basis.push_back(elementJson(*d.index, r));
    subcoalgebras.push_back({{"name", d.name},
                             {"quiver", d.quiver},
                             {"truncation", d.truncation},
                             {"generators", gens},
                             {"dimension", b.dimension()},
                             {"basis", basis}});
  }
  Json comodules = Json::array();
  for (const auto& d : w.comodules) {
    const auto& index = *w.findSubcoalgebra(d.subcoalgebra)->index;
    Json coeffs = Json::array();
    for (std::size_t i = 0; i < d.module.dimension(); ++i)
      for (std::size_t j = 0; j < d.module.dimension(); ++j)
        if (!d.module.coefficient(i, j).empty())
          coeffs.push_back({{"row", d.module.labels()[i]},
                            {"column", d.module.labels()[j]},
                            {"value", elementJson(index, d.module.coefficient(i, j))}});
    comodules.push_back(
        {{"name", d.name}, {"subcoalgebra", d.subcoalgebra}, {"basis", d.module.labels()}, {"coefficients", coeffs}});
  }
  return {{"quivers", quivers},
          {"groups", groups},
          {"weightings", weightings},
          {"subcoalgebras", subcoalgebras},
          {"comodules", comodules}};
}

}  // namespace covol::cli

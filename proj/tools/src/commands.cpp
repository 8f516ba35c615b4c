#include "covol/cli/commands.hpp"

#include "covol/covering.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <variant>

namespace covol::cli {

namespace {

struct Context {
  const Workspace& ws;
  const Options& options;

  const SubcoalgebraDecl* subcoalgebra(bool required) const {
    if (options.subcoalgebra) {
      const auto* d = ws.findSubcoalgebra(*options.subcoalgebra);
      if (!d) throw CommandError("no subcoalgebra named '" + *options.subcoalgebra + "'");
      return d;
    }
    if (ws.subcoalgebras.empty()) {
      if (required) throw CommandError("workspace declares no subcoalgebra");
      return nullptr;
    }
    return &ws.subcoalgebras.front();
  }

  const WeightingDecl& weighting(const std::string* quiver) const {
    if (options.weighting) {
      const auto* d = ws.findWeighting(*options.weighting);
      if (!d) throw CommandError("no weighting named '" + *options.weighting + "'");
      if (quiver && d->quiver != *quiver)
        throw CommandError("weighting '" + d->name + "' is on quiver '" + d->quiver + "', not '" + *quiver + "'");
      return *d;
    }
    for (const auto& d : ws.weightings)
      if (!quiver || d.quiver == *quiver) return d;
    throw CommandError(quiver ? "no weighting on quiver '" + *quiver + "'" : "workspace declares no weighting");
  }

  const Quiver& quiver(const std::string& name) const { return ws.findQuiver(name)->quiver; }

  Window window(const Group& g) const { return Window::ball(g, options.window); }

  /// Truncation for path coalgebras built without a subcoalgebra.
  std::size_t truncation(const std::string& quiver) const {
    for (const auto& d : ws.subcoalgebras)
      if (d.quiver == quiver) return d.truncation;
    return 2;
  }
};

struct Selected {
  const SubcoalgebraDecl& decl;
  const WeightingDecl& weighting;
  const Quiver& quiver;
  SubcoalgebraBasis b;
};

Selected select(const Context& ctx) {
  const auto* s = ctx.subcoalgebra(true);
  const auto& w = ctx.weighting(&s->quiver);
  return {*s, w, ctx.quiver(s->quiver), subcoalgebraClosure(s->index, s->generators)};
}

Json header(const std::string& command) { return {{"schema", kSchemaVersion}, {"command", command}}; }

Json windowJson(const Context& ctx, const Window& w) { return {{"radius", ctx.options.window}, {"size", w.size()}}; }

Json axiomJson(const AxiomCheck& c) {
  Json j = {{"ok", c.ok}, {"checked", c.checked}, {"skipped", c.skipped}};
  if (!c.ok) j["reason"] = c.reason;
  return j;
}

Json optionalElement(const PathIndex& index, const std::optional<SparseVector>& v) {
  return v ? Json(sumText(index, *v)) : Json(nullptr);
}

Json degreesJson(const Group& g, const std::vector<GroupElement>& degrees) {
  Json out = Json::array();
  for (const auto& d : degrees) out.push_back(g.format(d));
  return out;
}

Json matrixJson(const RationalMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(rationalJson(x));
    out.push_back(r);
  }
  return out;
}

/// γ(vᵢ) = gⁱ for the first generator g: a nontrivial default for twist.
VertexWeighting defaultGamma(const Quiver& q, const Group& g) {
  auto gamma = identityVertexWeighting(q, g);
  const auto gens = g.generators();
  if (gens.empty()) return gamma;
  for (std::size_t v = 0; v < q.vertexCount(); ++v) gamma.values[v] = g.power(gens.front(), static_cast<std::int64_t>(v));
  return gamma;
}

Report smash(const Context& ctx) {
  const auto& w = ctx.weighting(nullptr);
  const auto& q = ctx.quiver(w.quiver);
  const auto window = ctx.window(w.weighting.group);
  SmashQuiver s(q, w.weighting, window);
  const auto covering = isCovering(s.quiver(), q, s.projection(), &s.interior());
  const SmashCover sc(q, w.weighting, window, ctx.truncation(w.quiver));
  const auto eiso = verifyEIso(sc);

  Report r;
  r.json = header("smash");
  r.json["quiver"] = w.quiver;
  r.json["weighting"] = w.name;
  r.json["group"] = w.weighting.group.describe();
  r.json["window"] = windowJson(ctx, window);
  r.json["vertices"] = s.quiver().vertexCount();
  r.json["arrows"] = s.quiver().arrowCount();
  r.json["interior_vertices"] = s.interiorCount();
  r.json["covering"] = covering.ok;
  if (!covering.ok) r.json["covering_reason"] = covering.reason;
  r.ok = covering.ok && eiso.ok();
  // Whole-group windows give the genuine (finite) smash quiver.
  if (window.size() == w.weighting.group.order().value_or(0)) {
    const bool galois = s.interiorCount() == s.quiver().vertexCount() &&
                        isGaloisOnFiber(s.quiver(), q, s.projection(), *s.vertex(0, w.weighting.group.identity()));
    r.json["galois"] = galois;
    r.ok = r.ok && galois;
  }
  r.json["truncation"] = sc.baseIndex().maxLength();
  r.json["e_iso"] = {{"ok", eiso.ok()},
                     {"bijective", eiso.bijective},
                     {"interior_symbols", eiso.interiorSymbols},
                     {"cover_paths", eiso.coverPaths},
                     {"forward", axiomJson(eiso.forward)},
                     {"backward", axiomJson(eiso.backward)}};
  r.json["ok"] = r.ok;
  r.dot = s.toDot(w.quiver + "_smash");
  return r;
}

Report checkCover(const Context& ctx) {
  const auto s = select(ctx);
  const auto window = ctx.window(s.weighting.weighting.group);
  const auto homog = isHomogeneous(s.b, s.weighting.weighting);
  const auto cov = liftSubcoalgebra(s.b, s.weighting.weighting, window);
  const auto verdict = isCoalgebraCovering(cov);
  const auto projection = verifyProjection(cov);

  Report r;
  r.json = header("check-cover");
  r.json["subcoalgebra"] = s.decl.name;
  r.json["weighting"] = s.weighting.name;
  r.json["window"] = windowJson(ctx, window);
  r.json["dimension"] = s.b.dimension();
  r.json["lifted_dimension"] = cov.lifted.dimension();
  r.json["lifted_is_subcoalgebra"] = cov.liftedIsSubcoalgebra;
  r.json["homogeneous"] = homog.homogeneous;
  r.json["covering"] = verdict.ok;
  r.json["checked"] = verdict.checked;
  r.json["witness"] = optionalElement(s.b.index(), verdict.witness);
  if (!verdict.ok) r.json["reason"] = verdict.reason;
  r.json["projection"] = axiomJson(projection);
  r.ok = verdict.ok == homog.homogeneous && projection.ok;
  r.json["ok"] = r.ok;
  r.dot = cov.smash.toDot(s.decl.quiver + "_smash");
  return r;
}

Report homog(const Context& ctx) {
  const auto s = select(ctx);
  const auto h = isHomogeneous(s.b, s.weighting.weighting);
  const bool blocks = blocksHaveConstantWeight(s.b, s.weighting.weighting);

  Report r;
  r.json = header("homog");
  r.json["subcoalgebra"] = s.decl.name;
  r.json["weighting"] = s.weighting.name;
  r.json["homogeneous"] = h.homogeneous;
  r.json["blocks_constant_weight"] = blocks;
  r.json["witness"] = optionalElement(s.b.index(), h.witness);
  r.ok = h.homogeneous == blocks;
  r.json["ok"] = r.ok;
  r.dot = toDot(s.quiver, s.decl.quiver);
  return r;
}

Report minimal(const Context& ctx) {
  const auto* decl = ctx.subcoalgebra(true);
  const auto b = subcoalgebraClosure(decl->index, decl->generators);
  const auto& q = ctx.quiver(decl->quiver);
  const auto blocks = minimalPartition(b);

  Report r;
  r.json = header("minimal");
  r.json["subcoalgebra"] = decl->name;
  r.json["dimension"] = b.dimension();
  Json out = Json::array();
  for (const auto& blk : blocks) {
    Json paths = Json::array();
    for (auto p : blk.paths) paths.push_back(pathText(b.index(), p));
    Json j = {{"source", q.vertexName(blk.source)}, {"target", q.vertexName(blk.target)}, {"paths", paths}};
    if (blk.representative) {
      const bool isMin = isMinimalElement(b.component(blk.source, blk.target), *blk.representative);
      j["minimal_element"] = sumText(b.index(), *blk.representative);
      j["verified"] = isMin;
      r.ok = r.ok && isMin;
    }
    out.push_back(j);
  }
  r.json["blocks"] = out;
  r.json["ok"] = r.ok;
  r.dot = toDot(q, decl->quiver);
  return r;
}

Report relators(const Context& ctx) {
  const auto s = select(ctx);
  const auto pres = spanningTreeAndPi1(s.quiver, 0);
  const auto rs = extractRelators(s.b, pres);
  const bool homogeneous = isHomogeneous(s.b, s.weighting.weighting).homogeneous;
  const auto& g = s.weighting.weighting.group;
  const Group free = Group::free(pres.rank());

  Report r;
  r.json = header("relators");
  r.json["subcoalgebra"] = s.decl.name;
  r.json["weighting"] = s.weighting.name;
  r.json["base"] = s.quiver.vertexName(pres.base);
  r.json["pi1_rank"] = pres.rank();
  Json gens = Json::array();
  for (std::size_t k = 0; k < pres.rank(); ++k)
    gens.push_back({{"generator", free.generatorName(k)}, {"arrow", s.quiver.arrow(pres.coTree[k]).name}});
  r.json["generators"] = gens;
  r.json["homogeneous"] = homogeneous;
  Json out = Json::array();
  bool allTrivial = true;
  for (const auto& rel : rs.relators) {
    const auto weight = weightWalk(s.weighting.weighting, rel.walk);
    allTrivial = allTrivial && g.isIdentity(weight);
    out.push_back({{"word", free.format(free.freeElement(rel.word))},
                   {"walk", rel.walk.format(s.quiver)},
                   {"first", pathText(s.b.index(), rel.first)},
                   {"other", pathText(s.b.index(), rel.other)},
                   {"weight", g.format(weight)}});
  }
  r.json["relators"] = out;
  r.json["relators_trivial"] = allTrivial;
  r.ok = !homogeneous || allTrivial;
  r.json["ok"] = r.ok;
  r.dot = toDot(s.quiver, s.decl.quiver);
  return r;
}

Report universal(const Context& ctx) {
  const auto* decl = ctx.subcoalgebra(true);
  const auto b = subcoalgebraClosure(decl->index, decl->generators);
  const auto& q = ctx.quiver(decl->quiver);
  const auto pres = spanningTreeAndPi1(q, 0);
  const auto u = universalGradingGroup(b, pres);
  const bool homogeneous = isHomogeneous(b, u.universalWeighting).homogeneous;

  Report r;
  r.json = header("universal");
  r.json["subcoalgebra"] = decl->name;
  r.json["group"] = u.describe();
  r.json["rank"] = u.group.freeRank();
  r.json["pi1_rank"] = pres.rank();
  r.json["relators"] = u.presentation.relators.size();
  r.json["weighting"] = weightingJson(q, u.universalWeighting);
  r.json["homogeneous"] = homogeneous;
  r.ok = homogeneous;
  r.json["ok"] = r.ok;
  r.dot = toDot(q, decl->quiver);
  return r;
}

Report covCrosscheck(const Context& ctx) {
  const auto s = select(ctx);
  const auto window = ctx.window(s.weighting.weighting.group);
  const auto pres = spanningTreeAndPi1(s.quiver, 0);
  const auto c = theoremCovCrossCheck(s.b, s.weighting.weighting, pres, window);

  Report r;
  r.json = header("cov-crosscheck");
  r.json["subcoalgebra"] = s.decl.name;
  r.json["weighting"] = s.weighting.name;
  r.json["window"] = windowJson(ctx, window);
  r.json["homogeneous"] = c.homogeneous;
  r.json["connected"] = c.connected;
  r.json["covering"] = c.coveringOK;
  r.json["witness"] = c.witness ? Json(c.witnessText) : Json(nullptr);
  r.ok = c.consistent();
  r.json["ok"] = r.ok;
  r.dot = toDot(s.quiver, s.decl.quiver);
  return r;
}

Report csmIso(const Context& ctx) {
  const auto& w = ctx.weighting(nullptr);
  const auto& q = ctx.quiver(w.quiver);
  const auto& g = w.weighting.group;
  const auto window = ctx.window(g);
  const auto gamma = ctx.options.gamma ? parseVertexWeighting(q, g, *ctx.options.gamma) : identityVertexWeighting(q, g);
  auto s = smashQuiver(q, w.weighting, window);
  const auto lifting = liftingFromVertexWeighting(s, gamma);
  const auto cover = GaloisCover::fromSmash(std::move(s));
  const std::size_t n = ctx.truncation(w.quiver);
  const auto rep = verifyCsmIso(cover, lifting, n, window);

  Report r;
  r.json = header("csm-iso");
  r.json["quiver"] = w.quiver;
  r.json["weighting"] = w.name;
  r.json["window"] = windowJson(ctx, window);
  r.json["truncation"] = n;
  r.json["gamma"] = degreesJson(g, gamma.values);
  r.json["induced_weighting"] = weightingJson(q, rep.inducedWeighting);
  r.json["phi"] = axiomJson(rep.phi);
  r.json["psi"] = axiomJson(rep.psi);
  r.json["round_trips"] = {{"symbols", rep.roundTripsSymbols}, {"paths", rep.roundTripsPaths}};
  r.json["psi_phi_identity"] = rep.psiPhiIdentity;
  r.json["phi_psi_identity"] = rep.phiPsiIdentity;
  r.json["projection_compatible"] = rep.projectionCompatible;
  if (!rep.failure.empty()) r.json["failure"] = rep.failure;
  r.ok = rep.ok();
  r.json["ok"] = r.ok;
  r.dot = cover.smash()->toDot(w.quiver + "_smash");
  return r;
}

Report twistCommand(const Context& ctx) {
  const auto* decl = ctx.subcoalgebra(false);
  const auto& w = ctx.weighting(decl ? &decl->quiver : nullptr);
  const auto& q = ctx.quiver(w.quiver);
  const auto& g = w.weighting.group;
  const auto window = ctx.window(g);
  const auto gamma = ctx.options.gamma ? parseVertexWeighting(q, g, *ctx.options.gamma) : defaultGamma(q, g);
  const auto twisted = twist(q, w.weighting, gamma);
  const auto index = decl ? decl->index : makePathIndex(q, ctx.truncation(w.quiver));
  const SmashPathCoalgebra from(index, w.weighting, window);
  const SmashPathCoalgebra to(index, twisted, window);
  const auto theta = verifyThetaGamma(from, to, gamma);
  const auto pres = spanningTreeAndPi1(q, 0);
  const auto recovered = findTwist(q, w.weighting, twisted, pres);

  Report r;
  r.json = header("twist");
  r.json["quiver"] = w.quiver;
  r.json["weighting"] = w.name;
  r.json["window"] = windowJson(ctx, window);
  r.json["gamma"] = degreesJson(g, gamma.values);
  r.json["twisted"] = weightingJson(q, twisted);
  r.json["theta"] = {{"ok", theta.ok()},
                     {"map", axiomJson(theta.map)},
                     {"injective", theta.injective},
                     {"commutes_with_action", theta.commutesWithAction},
                     {"commutes_with_projection", theta.commutesWithProjection}};
  r.json["twist_recovered"] = recovered.has_value();
  r.ok = theta.ok() && recovered.has_value() && twist(q, w.weighting, *recovered) == twisted;
  if (decl) {
    const auto b = subcoalgebraClosure(decl->index, decl->generators);
    const bool before = isHomogeneous(b, w.weighting).homogeneous;
    const bool after = isHomogeneous(b, twisted).homogeneous;
    r.json["subcoalgebra"] = decl->name;
    r.json["homogeneous"] = {{"before", before}, {"after", after}};
    r.ok = r.ok && before == after;
  }
  r.json["ok"] = r.ok;
  r.dot = toDot(q, w.quiver);
  return r;
}

Report gradable(const Context& ctx) {
  const ComoduleDecl* decl = nullptr;
  if (ctx.options.comodule) {
    decl = ctx.ws.findComodule(*ctx.options.comodule);
    if (!decl) throw CommandError("no comodule named '" + *ctx.options.comodule + "'");
  } else if (!ctx.ws.comodules.empty()) {
    decl = &ctx.ws.comodules.front();
  } else {
    throw CommandError("workspace declares no comodule");
  }
  const auto* sub = ctx.ws.findSubcoalgebra(decl->subcoalgebra);
  const auto& w = ctx.weighting(&sub->quiver);
  const auto& q = ctx.quiver(sub->quiver);
  const auto& g = w.weighting.group;
  const auto b = subcoalgebraClosure(sub->index, sub->generators);
  const auto valid = verifyComodule(decl->module, b);

  Report r;
  r.json = header("gradable");
  r.json["comodule"] = decl->name;
  r.json["subcoalgebra"] = sub->name;
  r.json["weighting"] = w.name;
  r.json["dimension"] = decl->module.dimension();
  r.json["comodule_axioms"] = axiomJson(valid);
  r.ok = valid.ok;
  if (!valid.ok) {
    r.json["ok"] = false;
    r.dot = toDot(q, sub->quiver);
    return r;
  }
  const auto window = ctx.window(g);
  r.json["window"] = windowJson(ctx, window);
  std::visit(
      [&](const auto& res) {
        using T = std::decay_t<decltype(res)>;
        if constexpr (std::is_same_v<T, Gradable>) {
          const bool graded = !checkGrading(res.witness, *sub->index, w.weighting).has_value();
          const bool stillComodule = verifyComodule(res.witness.module, b).ok;
          r.json["result"] = "gradable";
          r.json["degrees"] = degreesJson(g, res.witness.degrees);
          r.json["basis_change"] = res.basisChange ? matrixJson(*res.basisChange) : Json(nullptr);
          r.json["witness_verified"] = graded && stillComodule;
          r.ok = r.ok && graded && stillComodule;
        } else if constexpr (std::is_same_v<T, Ungradable>) {
          r.json["result"] = "ungradable";
          r.json["exhausted"] = res.exhausted.size();
          r.json["reason"] = res.reason;
        } else {
          r.json["result"] = "unknown";
          r.json["reason"] = res.reason;
        }
      },
      gradabilityProbe(decl->module, *sub->index, w.weighting, window));
  r.json["ok"] = r.ok;
  r.dot = toDot(q, sub->quiver);
  return r;
}

Report exportCommand(const Context& ctx) {
  Report r;
  r.json = header("export");
  r.json["workspace"] = workspaceJson(ctx.ws);
  const std::string canonical = emit(ctx.ws);
  const bool roundTrip = parse(canonical) == ctx.ws && emit(parse(canonical)) == canonical;
  r.json["round_trip"] = roundTrip;
  r.ok = roundTrip;
  r.json["ok"] = r.ok;
  for (const auto& d : ctx.ws.quivers) r.dot += toDot(d.quiver, d.name);
  return r;
}

using Handler = std::function<Report(const Context&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"smash", smash},       {"check-cover", checkCover},       {"homog", homog},
      {"minimal", minimal},   {"relators", relators},            {"universal", universal},
      {"cov-crosscheck", covCrosscheck}, {"csm-iso", csmIso},    {"twist", twistCommand},
      {"gradable", gradable}, {"export", exportCommand},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& commandNames() {
  static const std::vector<std::string> names = {"smash",          "check-cover", "homog", "minimal",
                                                 "relators",       "universal",   "cov-crosscheck",
                                                 "csm-iso",        "twist",       "gradable",
                                                 "export"};
  return names;
}

VertexWeighting parseVertexWeighting(const Quiver& q, const Group& g, const std::string& text) {
  auto gamma = identityVertexWeighting(q, g);
  std::vector<bool> seen(q.vertexCount(), false);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw CommandError("gamma entry '" + item + "' is not vertex=value");
    std::string name = item.substr(0, eq);
    name.erase(std::remove_if(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c); }), name.end());
    const auto v = q.findVertex(name);
    if (!v) throw CommandError("gamma names unknown vertex '" + name + "'");
    if (seen[*v]) throw CommandError("gamma assigns vertex '" + name + "' twice");
    seen[*v] = true;
    try {
      gamma.values[*v] = g.parse(item.substr(eq + 1));
    } catch (const std::exception& e) {
      throw CommandError("gamma value for '" + name + "': " + e.what());
    }
  }
  return gamma;
}

Report run(const std::string& command, const Workspace& ws, const Options& options) {
  const auto& h = handlers();
  const auto it = h.find(command);
  if (it == h.end()) throw CommandError("unknown command '" + command + "'");
  try {
    return it->second(Context{ws, options});
  } catch (const CommandError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw CommandError(command + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw CommandError(command + ": " + e.what());
  }
}

}  // namespace covol::cli

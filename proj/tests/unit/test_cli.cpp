#include "covol/cli/commands.hpp"
#include "covol/cli/workspace.hpp"
#include "covol/fixtures.hpp"

#include <gtest/gtest.h>

using namespace covol;
using namespace covol::cli;

namespace {

const std::vector<std::string> kFixtureFiles = {"loop", "dbl", "kron", "tri_ac", "tri_acbc", "sl2"};

std::string fixturePath(const std::string& name) { return std::string(COVOL_FIXTURE_DIR) + "/" + name + ".cov"; }

SubcoalgebraBasis closureOf(const SubcoalgebraDecl& d) { return subcoalgebraClosure(d.index, d.generators); }

ParseError parseError(std::string_view text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseError({}, "");
}

const char* kTriangle = R"(quiver TRI {
  vertices x, y, z;
  arrows a: y -> z, b: y -> z, c: x -> y;
}
)";

}  // namespace

TEST(Workspace, KroneckerSource) {
  const auto ws = parse(R"(
    quiver KRON { vertices x, y; arrows a: x -> y, b: x -> y; }
    group Z = Z;
    weighting delta on KRON into Z { a = 0; b = 1; }
  )");
  ASSERT_EQ(ws.quivers.size(), 1u);
  EXPECT_EQ(ws.groups.size(), 1u);
  ASSERT_EQ(ws.weightings.size(), 1u);
  EXPECT_EQ(ws.quivers[0].quiver.arrowCount(), 2u);
  EXPECT_EQ(ws.weightings[0].weighting, kroneckerFixture().weighting);
  EXPECT_EQ(ws.order.size(), 3u);
}

TEST(Workspace, FixturesMatchLibraryExamples) {
  const auto sl2 = parseFile(fixturePath("sl2"));
  EXPECT_EQ(closureOf(sl2.subcoalgebras.at(0)).dimension(), 17u);
  EXPECT_EQ(closureOf(sl2.subcoalgebras.at(0)).space(), sl2Fixture().b.space());
  EXPECT_EQ(sl2.weightings.at(0).weighting, sl2Fixture().weighting);

  const auto tri = parseFile(fixturePath("tri_acbc"));
  EXPECT_EQ(closureOf(tri.subcoalgebras.at(0)).space(), triangleAcBcFixture().b.space());
  const auto kron = parseFile(fixturePath("kron"));
  EXPECT_EQ(closureOf(kron.subcoalgebras.at(0)).space(), kroneckerFixture().b.space());
  const auto loop = parseFile(fixturePath("loop"));
  EXPECT_EQ(closureOf(loop.subcoalgebras.at(0)).space(), loopFixture(3).b.space());
}

TEST(Workspace, SumsAndPaths) {
  const auto ws = parse(std::string(kTriangle) + "subcoalgebra B of TRI { truncate 2; generators: 2*a.c - 1/2*b.c, z; }");
  const auto& d = ws.subcoalgebras.at(0);
  ASSERT_EQ(d.generators.size(), 2u);
  EXPECT_EQ(sumText(*d.index, d.generators[0]), "2*a.c - 1/2*b.c");
  EXPECT_EQ(sumText(*d.index, d.generators[1]), "z");
  EXPECT_EQ(sumText(*d.index, {}), "0");
  EXPECT_EQ(pathText(*d.index, d.index->arrowPath(2)), "c");
}

TEST(Workspace, EndpointMismatchAtTheDot) {
  const std::string text = std::string(kTriangle) + "subcoalgebra B of TRI { truncate 2; generators: c.a; }";
  const auto e = parseError(text);
  EXPECT_EQ(e.where().line, 5u);
  EXPECT_EQ(e.where().column, text.substr(text.rfind('\n') + 1).find("c.a") + 2);
  EXPECT_EQ(e.message(), "endpoint mismatch: c starts at x but a ends at z");
}

TEST(Workspace, Errors) {
  auto lexical = parseError("quiver Q { vertices x; @ }");
  EXPECT_EQ(lexical.where().column, 24u);
  EXPECT_NE(lexical.message().find("unexpected character"), std::string::npos);

  auto syntax = parseError("quiver Q { vertices x y; }");
  EXPECT_EQ(syntax.where().column, 23u);
  EXPECT_FALSE(syntax.expected().empty());

  auto top = parseError("banana");
  EXPECT_EQ(top.expected(), (std::vector<std::string>{"quiver", "group", "weighting", "subcoalgebra", "comodule"}));

  EXPECT_NE(parseError("weighting d on Q into Z { }").message().find("unknown quiver 'Q'"), std::string::npos);
  EXPECT_NE(parseError(std::string(kTriangle) + "group Z = Z; weighting d on TRI into Z { a = 0; b = 1; }")
                .message()
                .find("arrow 'c' has no weight"),
            std::string::npos);
  EXPECT_NE(parseError(std::string(kTriangle) + "subcoalgebra B of TRI { truncate 1; generators: a.c; }")
                .message()
                .find("longer than the truncation"),
            std::string::npos);
  EXPECT_NE(parseError("quiver Q { vertices x, x; }").message().find("duplicate"), std::string::npos);
  EXPECT_NE(parseError("group G = Z/1;").message().find("at least 2"), std::string::npos);
  EXPECT_NE(parseError(std::string(kTriangle) + "subcoalgebra B of TRI { truncate 1; }\n"
                                                "comodule M of B { basis m; coeff m, n = x; }")
                .message()
                .find("unknown basis label 'n'"),
            std::string::npos);
}

TEST(Workspace, RoundTripIsByteStable) {
  for (const auto& name : kFixtureFiles) {
    SCOPED_TRACE(name);
    const auto ws = parseFile(fixturePath(name));
    const auto text = emit(ws);
    const auto again = parse(text);
    EXPECT_TRUE(again == ws);
    EXPECT_EQ(emit(again), text);
  }
}

TEST(Workspace, GroupSpecs) {
  EXPECT_EQ(groupSpec(Group::integers()), "Z");
  EXPECT_EQ(groupSpec(Group::free(2)), "free(2)");
  EXPECT_EQ(groupSpec(Group::cyclic(3)), "Z/3");
  for (const auto& g : {Group::integers(), Group::free(2), Group::cyclic(3), Group::trivial()}) {
    const auto ws = parse("group G = " + groupSpec(g) + ";");
    EXPECT_EQ(ws.groups.at(0).group, g);
  }
}

TEST(Commands, EveryCommandOnEveryFixture) {
  for (const auto& name : kFixtureFiles) {
    const auto ws = parseFile(fixturePath(name));
    for (const auto& cmd : commandNames()) {
      SCOPED_TRACE(name + " " + cmd);
      const auto r = run(cmd, ws);
      EXPECT_TRUE(r.ok) << r.json.dump(2);
      EXPECT_EQ(r.json["schema"], kSchemaVersion);
      EXPECT_EQ(r.json["command"], cmd);
      EXPECT_EQ(r.json["ok"], r.ok);
      // Deterministic output.
      EXPECT_EQ(run(cmd, ws).json.dump(), r.json.dump());
    }
  }
}

TEST(Commands, Examples) {
  const auto sl2 = parseFile(fixturePath("sl2"));
  const auto u = run("universal", sl2).json;
  EXPECT_EQ(u["group"], "Z (abelianized)");
  EXPECT_EQ(u["pi1_rank"], 4);
  EXPECT_EQ(u["relators"], 3);

  const auto tri = parseFile(fixturePath("tri_acbc"));
  const auto c = run("cov-crosscheck", tri).json;
  EXPECT_EQ(c["homogeneous"], false);
  EXPECT_EQ(c["covering"], false);
  EXPECT_EQ(c["witness"], "ac+bc");
  EXPECT_EQ(run("universal", tri).json["group"], "trivial (abelianized)");

  const auto kron = parseFile(fixturePath("kron"));
  Options band;
  band.comodule = "band";
  EXPECT_EQ(run("gradable", kron, band).json["result"], "ungradable");
  Options string;
  string.comodule = "string";
  EXPECT_EQ(run("gradable", kron, string).json["result"], "gradable");

  const auto loop = parseFile(fixturePath("loop"));
  Options cyclic;
  cyclic.weighting = "cyclic";
  const auto s = run("smash", loop, cyclic);
  EXPECT_EQ(s.json["galois"], true);
  EXPECT_NE(s.dot.find("digraph"), std::string::npos);
}

TEST(Commands, Preconditions) {
  const auto kron = parseFile(fixturePath("kron"));
  EXPECT_THROW(run("nonsense", kron), CommandError);
  Options missing;
  missing.comodule = "nope";
  EXPECT_THROW(run("gradable", kron, missing), CommandError);
  Options badGamma;
  badGamma.gamma = "q=1";
  EXPECT_THROW(run("twist", kron, badGamma), CommandError);
}

TEST(Commands, VertexWeightingText) {
  const auto k = kroneckerFixture();
  const auto g = parseVertexWeighting(k.quiver, Group::integers(), "y=3");
  EXPECT_EQ(g.values, (std::vector<GroupElement>{Group::integers().identity(), Group::integers().abelianElement({3})}));
  EXPECT_THROW(parseVertexWeighting(k.quiver, Group::integers(), "y"), CommandError);
}

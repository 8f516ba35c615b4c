#pragma once

// Workspace files: quivers, groups, weightings, subcoalgebras and comodules.
//
//   quiver TRI { vertices x, y, z; arrows c: x -> y, a: y -> z, b: y -> z; }
//   group Z = Z;
//   weighting delta on TRI into Z { a = 0; b = 1; c = 0; }
//   subcoalgebra B of TRI { truncate 2; generators: a.c + b.c; }
//   comodule M of B { basis m0, m1; coeff m0, m1 = a; coeff m0, m0 = z; coeff m1, m1 = y; }
//
// Paths are arrow names joined by '.', read right to left.

#include "covol/coalgebra.hpp"
#include "covol/comodule.hpp"
#include "covol/groups.hpp"
#include "covol/quiver.hpp"
#include "covol/voltage.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace covol::cli {

struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(Location at, std::string message, std::vector<std::string> expected = {});
  const Location& where() const { return at_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Location at_;
  std::string message_;
  std::vector<std::string> expected_;
};

struct QuiverDecl {
  std::string name;
  Quiver quiver;
  Location at;
};

struct GroupDecl {
  std::string name;
  Group group;
  Location at;
};

struct WeightingDecl {
  std::string name;
  std::string quiver;
  std::string group;
  ArrowWeighting weighting;
  Location at;
};

struct SubcoalgebraDecl {
  std::string name;
  std::string quiver;
  std::size_t truncation = 0;
  PathIndexPtr index;
  std::vector<SparseVector> generators;
  Location at;
};

struct ComoduleDecl {
  std::string name;
  std::string subcoalgebra;
  Comodule module;
  Location at;
};

enum class DeclKind { Quiver, Group, Weighting, Subcoalgebra, Comodule };

struct Workspace {
  std::vector<QuiverDecl> quivers;
  std::vector<GroupDecl> groups;
  std::vector<WeightingDecl> weightings;
  std::vector<SubcoalgebraDecl> subcoalgebras;
  std::vector<ComoduleDecl> comodules;
  /// Declarations in source order: kind and position within its list.
  std::vector<std::pair<DeclKind, std::size_t>> order;

  const QuiverDecl* findQuiver(std::string_view name) const;
  const GroupDecl* findGroup(std::string_view name) const;
  const WeightingDecl* findWeighting(std::string_view name) const;
  const SubcoalgebraDecl* findSubcoalgebra(std::string_view name) const;
  const ComoduleDecl* findComodule(std::string_view name) const;
};

/// Same declarations with the same content; source locations are ignored.
bool operator==(const Workspace& a, const Workspace& b);

Workspace parse(std::string_view text);
Workspace parseFile(const std::string& path);
/// Canonical text: one declaration per block, generators and coefficients in
/// path-index order. parse(emit(w)) == w.
std::string emit(const Workspace& w);

/// "Z", "Z^2", "Z/3", "Z x Z/2", "free(2)", "trivial".
std::string groupSpec(const Group& g);
/// Right-to-left arrow names joined by '.', or the vertex name of a trivial path.
std::string pathText(const PathIndex& index, std::size_t p);
/// "a.c + b.c", "2*a - 1/2*b", "0" for the zero vector.
std::string sumText(const PathIndex& index, const SparseVector& v);

}  // namespace covol::cli

#pragma once

// Group backends: finite multiplication tables, finitely generated abelian
// groups (Z^r x Z/d1 x ... x Z/dk) and free groups, plus finitely presented
// descriptors that can only be abelianized.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace covol {

enum class Backend { FiniteTable, FgAbelian, Free };

/// Word in a free group: letter +k / -k stands for generator k-1 or its inverse.
/// Words are products read left to right.
using Word = std::vector<int>;

Word reduceWord(Word w);
Word invertWord(const Word& w);
Word multiplyWords(const Word& a, const Word& b);

/// Backend-tagged element. Payload layout:
///  - FiniteTable: {index}
///  - FgAbelian:   free coordinates, then torsion residues in [0, order)
///  - Free:        reduced letters
struct GroupElement {
  Backend backend = Backend::FgAbelian;
  std::vector<std::int64_t> payload;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class Group {
 public:
  /// Validates closure, associativity, identity and inverses; throws std::invalid_argument.
  static Group finiteTable(std::vector<std::vector<std::size_t>> table);
  static Group abelian(std::size_t freeRank, std::vector<std::int64_t> torsion = {});
  static Group integers() { return abelian(1); }
  static Group cyclic(std::int64_t n) { return abelian(0, {n}); }
  static Group free(std::size_t rank);
  static Group trivial() { return abelian(0); }

  Backend backend() const { return backend_; }
  bool isFinite() const;
  bool isAbelian() const;
  /// Group order when finite.
  std::optional<std::size_t> order() const;

  std::size_t freeRank() const { return freeRank_; }
  const std::vector<std::int64_t>& torsion() const { return torsion_; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement power(const GroupElement& a, std::int64_t k) const;
  bool equal(const GroupElement& a, const GroupElement& b) const;
  bool isIdentity(const GroupElement& a) const { return equal(a, identity()); }

  GroupElement finiteElement(std::size_t index) const;
  /// Coordinates are reduced into canonical residues.
  GroupElement abelianElement(std::vector<std::int64_t> coords) const;
  GroupElement freeElement(Word w) const;
  Word word(const GroupElement& a) const;

  /// Standard generators: table entries (finite), unit vectors (abelian), letters (free).
  std::vector<GroupElement> generators() const;

  /// Finite groups: every element. FgAbelian: integer box of half-width `radius` on
  /// the free coordinates times all torsion residues. Free: word-length ball.
  /// Sorted, contains the identity.
  std::vector<GroupElement> ball(std::size_t radius) const;
  std::vector<GroupElement> elements() const;

  /// Throws std::invalid_argument if `a` belongs to a different backend or shape.
  void check(const GroupElement& a) const;

  std::string describe() const;
  /// Abelian: "3" or "(1,-2)". Free: "x*y^-1", "1" for the identity. Finite: "#k".
  std::string format(const GroupElement& a) const;
  GroupElement parse(std::string_view text) const;
  std::string generatorName(std::size_t i) const;

  friend bool operator==(const Group&, const Group&) = default;

 private:
  Backend backend_ = Backend::FgAbelian;
  std::size_t freeRank_ = 0;
  std::vector<std::int64_t> torsion_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverses_;
  std::size_t identityIndex_ = 0;
};

/// True iff the given elements generate the whole group.
///  - FiniteTable: breadth-first closure.
///  - FgAbelian: Smith normal form of the generator vectors stacked on the torsion relations.
///  - Free: Stallings folding; generating iff the folded graph is the rank-r rose.
bool generates(const Group& g, std::span<const GroupElement> gens);

/// Stallings core graph of the subgroup generated by `gens` in a free group of the
/// given rank. Vertex 0 is the base point.
struct FoldedGraph {
  std::size_t vertexCount = 0;
  struct Edge {
    std::size_t from;
    std::size_t to;
    std::size_t label;
  };
  std::vector<Edge> edges;
};
FoldedGraph stallingsFold(std::size_t rank, std::span<const Word> gens);

struct FinitelyPresented {
  std::size_t generatorCount = 0;
  std::vector<Word> relators;
};

struct Abelianization {
  Group group;
  /// Image of each presentation generator.
  std::vector<GroupElement> generatorImages;
  /// Inverse direction on the free + torsion coordinates: a preimage word
  /// (exponent vector over the presentation generators) for each unit coordinate of `group`.
  std::vector<std::vector<std::int64_t>> coordinatePreimages;
};

/// Z^n modulo the exponent-sum vectors of the relators, normalized by Smith normal form.
Abelianization abelianize(const FinitelyPresented& fp);

}  // namespace covol

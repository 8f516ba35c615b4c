#include "covol/groups.hpp"

#include "covol/exactlin.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace covol {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::string backendName(Backend b) {
  switch (b) {
    case Backend::FiniteTable: return "finite";
    case Backend::FgAbelian: return "abelian";
    case Backend::Free: return "free";
  }
  return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// Words

Word reduceWord(Word w) {
  Word out;
  out.reserve(w.size());
  for (int letter : w) {
    if (letter == 0) throw std::invalid_argument("zero letter in free word");
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

Word invertWord(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

Word multiplyWords(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduceWord(std::move(out));
}

// ---------------------------------------------------------------------------
// Construction

Group Group::finiteTable(std::vector<std::vector<std::size_t>> table) {
  const std::size_t n = table.size();
  if (n == 0) throw std::invalid_argument("empty multiplication table");
  for (const auto& row : table) {
    if (row.size() != n) throw std::invalid_argument("multiplication table is not square");
    for (auto v : row)
      if (v >= n) throw std::invalid_argument("multiplication table entry out of range");
  }
  std::optional<std::size_t> e;
  for (std::size_t i = 0; i < n && !e; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = table[i][j] == j && table[j][i] == j;
    if (ok) e = i;
  }
  if (!e) throw std::invalid_argument("multiplication table has no identity");
  std::vector<std::size_t> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] == *e && table[j][i] == *e) inv[i] = j;
  if (std::find(inv.begin(), inv.end(), n) != inv.end())
    throw std::invalid_argument("multiplication table lacks inverses");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw std::invalid_argument("multiplication table is not associative");
  Group g;
  g.backend_ = Backend::FiniteTable;
  g.table_ = std::move(table);
  g.inverses_ = std::move(inv);
  g.identityIndex_ = *e;
  return g;
}

Group Group::abelian(std::size_t freeRank, std::vector<std::int64_t> torsion) {
  for (auto t : torsion)
    if (t < 2) throw std::invalid_argument("torsion orders must be at least 2");
  Group g;
  g.backend_ = Backend::FgAbelian;
  g.freeRank_ = freeRank;
  g.torsion_ = std::move(torsion);
  return g;
}

Group Group::free(std::size_t rank) {
  Group g;
  g.backend_ = Backend::Free;
  g.freeRank_ = rank;
  return g;
}

bool Group::isFinite() const {
  switch (backend_) {
    case Backend::FiniteTable: return true;
    case Backend::FgAbelian: return freeRank_ == 0;
    case Backend::Free: return freeRank_ == 0;
  }
  return false;
}

bool Group::isAbelian() const {
  switch (backend_) {
    case Backend::FgAbelian: return true;
    case Backend::Free: return freeRank_ <= 1;
    case Backend::FiniteTable:
      for (std::size_t a = 0; a < table_.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
          if (table_[a][b] != table_[b][a]) return false;
      return true;
  }
  return false;
}

std::optional<std::size_t> Group::order() const {
  if (!isFinite()) return std::nullopt;
  switch (backend_) {
    case Backend::FiniteTable: return table_.size();
    case Backend::FgAbelian: {
      std::size_t n = 1;
      for (auto t : torsion_) n *= static_cast<std::size_t>(t);
      return n;
    }
    case Backend::Free: return 1;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Arithmetic

void Group::check(const GroupElement& a) const {
  if (a.backend != backend_)
    throw std::invalid_argument("group backend mismatch: " + backendName(a.backend) + " element in " +
                                backendName(backend_) + " group");
  switch (backend_) {
    case Backend::FiniteTable:
      if (a.payload.size() != 1 || a.payload[0] < 0 || static_cast<std::size_t>(a.payload[0]) >= table_.size())
        throw std::invalid_argument("finite group element out of range");
      break;
    case Backend::FgAbelian: {
      if (a.payload.size() != freeRank_ + torsion_.size())
        throw std::invalid_argument("abelian element has wrong number of coordinates");
      for (std::size_t j = 0; j < torsion_.size(); ++j) {
        const auto r = a.payload[freeRank_ + j];
        if (r < 0 || r >= torsion_[j]) throw std::invalid_argument("torsion residue out of range");
      }
      break;
    }
    case Backend::Free:
      for (std::size_t i = 0; i < a.payload.size(); ++i) {
        const auto l = a.payload[i];
        if (l == 0 || static_cast<std::size_t>(std::abs(l)) > freeRank_)
          throw std::invalid_argument("free letter out of range");
        if (i > 0 && a.payload[i - 1] == -l) throw std::invalid_argument("free word is not reduced");
      }
      break;
  }
}

GroupElement Group::identity() const {
  switch (backend_) {
    case Backend::FiniteTable: return {backend_, {static_cast<std::int64_t>(identityIndex_)}};
    case Backend::FgAbelian: return {backend_, std::vector<std::int64_t>(freeRank_ + torsion_.size(), 0)};
    case Backend::Free: return {backend_, {}};
  }
  return {};
}

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  switch (backend_) {
    case Backend::FiniteTable:
      return {backend_, {static_cast<std::int64_t>(table_[a.payload[0]][b.payload[0]])}};
    case Backend::FgAbelian: {
      GroupElement out{backend_, a.payload};
      for (std::size_t i = 0; i < out.payload.size(); ++i) out.payload[i] += b.payload[i];
      for (std::size_t j = 0; j < torsion_.size(); ++j)
        out.payload[freeRank_ + j] = mod(out.payload[freeRank_ + j], torsion_[j]);
      return out;
    }
    case Backend::Free: {
      Word wa(a.payload.begin(), a.payload.end());
      Word wb(b.payload.begin(), b.payload.end());
      const Word w = multiplyWords(wa, wb);
      return {backend_, std::vector<std::int64_t>(w.begin(), w.end())};
    }
  }
  return {};
}

GroupElement Group::inverse(const GroupElement& a) const {
  check(a);
  switch (backend_) {
    case Backend::FiniteTable: return {backend_, {static_cast<std::int64_t>(inverses_[a.payload[0]])}};
    case Backend::FgAbelian: {
      GroupElement out{backend_, a.payload};
      for (std::size_t i = 0; i < freeRank_; ++i) out.payload[i] = -out.payload[i];
      for (std::size_t j = 0; j < torsion_.size(); ++j)
        out.payload[freeRank_ + j] = mod(-out.payload[freeRank_ + j], torsion_[j]);
      return out;
    }
    case Backend::Free: {
      const Word w = invertWord(Word(a.payload.begin(), a.payload.end()));
      return {backend_, std::vector<std::int64_t>(w.begin(), w.end())};
    }
  }
  return {};
}

GroupElement Group::power(const GroupElement& a, std::int64_t k) const {
  GroupElement base = k < 0 ? inverse(a) : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  GroupElement acc = identity();
  while (e > 0) {
    if (e & 1) acc = multiply(acc, base);
    base = multiply(base, base);
    e >>= 1;
  }
  return acc;
}

bool Group::equal(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  return a == b;
}

GroupElement Group::finiteElement(std::size_t index) const {
  GroupElement g{Backend::FiniteTable, {static_cast<std::int64_t>(index)}};
  check(g);
  return g;
}

GroupElement Group::abelianElement(std::vector<std::int64_t> coords) const {
  if (backend_ != Backend::FgAbelian) throw std::invalid_argument("abelianElement on non-abelian backend");
  if (coords.size() != freeRank_ + torsion_.size())
    throw std::invalid_argument("abelian element has wrong number of coordinates");
  for (std::size_t j = 0; j < torsion_.size(); ++j) coords[freeRank_ + j] = mod(coords[freeRank_ + j], torsion_[j]);
  return {backend_, std::move(coords)};
}

GroupElement Group::freeElement(Word w) const {
  if (backend_ != Backend::Free) throw std::invalid_argument("freeElement on non-free backend");
  w = reduceWord(std::move(w));
  GroupElement g{backend_, std::vector<std::int64_t>(w.begin(), w.end())};
  check(g);
  return g;
}

Word Group::word(const GroupElement& a) const {
  if (backend_ != Backend::Free) throw std::invalid_argument("word() on non-free backend");
  check(a);
  return Word(a.payload.begin(), a.payload.end());
}

std::vector<GroupElement> Group::generators() const {
  std::vector<GroupElement> out;
  switch (backend_) {
    case Backend::FiniteTable:
      for (std::size_t i = 0; i < table_.size(); ++i)
        if (i != identityIndex_) out.push_back(finiteElement(i));
      break;
    case Backend::FgAbelian:
      for (std::size_t i = 0; i < freeRank_ + torsion_.size(); ++i) {
        std::vector<std::int64_t> c(freeRank_ + torsion_.size(), 0);
        c[i] = 1;
        out.push_back(abelianElement(std::move(c)));
      }
      break;
    case Backend::Free:
      for (std::size_t i = 0; i < freeRank_; ++i) out.push_back(freeElement({static_cast<int>(i + 1)}));
      break;
  }
  return out;
}

std::vector<GroupElement> Group::ball(std::size_t radius) const {
  std::vector<GroupElement> out;
  switch (backend_) {
    case Backend::FiniteTable:
      for (std::size_t i = 0; i < table_.size(); ++i) out.push_back(finiteElement(i));
      break;
    case Backend::FgAbelian: {
      const std::size_t dims = freeRank_ + torsion_.size();
      std::vector<std::int64_t> lo(dims), hi(dims);
      for (std::size_t i = 0; i < freeRank_; ++i) {
        lo[i] = -static_cast<std::int64_t>(radius);
        hi[i] = static_cast<std::int64_t>(radius);
      }
      for (std::size_t j = 0; j < torsion_.size(); ++j) hi[freeRank_ + j] = torsion_[j] - 1;
      std::vector<std::int64_t> cur = lo;
      for (;;) {
        out.push_back({backend_, cur});
        std::size_t k = 0;
        while (k < dims && cur[k] == hi[k]) {
          cur[k] = lo[k];
          ++k;
        }
        if (k == dims) break;
        ++cur[k];
      }
      break;
    }
    case Backend::Free: {
      std::vector<Word> frontier{Word{}};
      out.push_back(identity());
      for (std::size_t len = 0; len < radius; ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier)
          for (int l = 1; l <= static_cast<int>(freeRank_); ++l)
            for (int s : {l, -l}) {
              if (!w.empty() && w.back() == -s) continue;
              Word n = w;
              n.push_back(s);
              next.push_back(n);
              out.push_back({backend_, std::vector<std::int64_t>(n.begin(), n.end())});
            }
        frontier = std::move(next);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupElement> Group::elements() const {
  if (!isFinite()) throw std::invalid_argument("elements() on an infinite group");
  return ball(0);
}

// ---------------------------------------------------------------------------
// Text

std::string Group::describe() const {
  switch (backend_) {
    case Backend::FiniteTable: return "finite(" + std::to_string(table_.size()) + ")";
    case Backend::Free: return "free(" + std::to_string(freeRank_) + ")";
    case Backend::FgAbelian: {
      std::vector<std::string> parts;
      if (freeRank_ == 1) parts.push_back("Z");
      if (freeRank_ > 1) parts.push_back("Z^" + std::to_string(freeRank_));
      for (auto t : torsion_) parts.push_back("Z/" + std::to_string(t));
      if (parts.empty()) return "trivial";
      std::string s = parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i) s += " x " + parts[i];
      return s;
    }
  }
  return "?";
}

std::string Group::generatorName(std::size_t i) const {
  static const char* kNames = "xyzuvw";
  if (freeRank_ <= 6 && i < 6) return std::string(1, kNames[i]);
  return "g" + std::to_string(i + 1);
}

std::string Group::format(const GroupElement& a) const {
  check(a);
  switch (backend_) {
    case Backend::FiniteTable: return "#" + std::to_string(a.payload[0]);
    case Backend::FgAbelian: {
      if (a.payload.empty()) return "0";
      if (a.payload.size() == 1) return std::to_string(a.payload[0]);
      std::string s = "(";
      for (std::size_t i = 0; i < a.payload.size(); ++i) s += (i ? "," : "") + std::to_string(a.payload[i]);
      return s + ")";
    }
    case Backend::Free: {
      if (a.payload.empty()) return "1";
      std::string s;
      for (std::size_t i = 0; i < a.payload.size();) {
        std::size_t j = i;
        while (j < a.payload.size() && a.payload[j] == a.payload[i]) ++j;
        const auto l = a.payload[i];
        const auto count = static_cast<std::int64_t>(j - i) * (l < 0 ? -1 : 1);
        if (!s.empty()) s += "*";
        s += generatorName(static_cast<std::size_t>(std::abs(l)) - 1);
        if (count != 1) s += "^" + std::to_string(count);
        i = j;
      }
      return s;
    }
  }
  return "?";
}

GroupElement Group::parse(std::string_view text) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parseInt = [](std::string_view s) -> std::int64_t {
    std::size_t used = 0;
    const std::string str(s);
    long long v = 0;
    try {
      v = std::stoll(str, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("expected integer, got '" + str + "'");
    }
    if (used != str.size()) throw std::invalid_argument("expected integer, got '" + str + "'");
    return v;
  };
  text = trim(text);
  switch (backend_) {
    case Backend::FiniteTable: {
      if (text.empty() || text[0] != '#') throw std::invalid_argument("finite group elements are written #k");
      return finiteElement(static_cast<std::size_t>(parseInt(text.substr(1))));
    }
    case Backend::FgAbelian: {
      const std::size_t dims = freeRank_ + torsion_.size();
      if (dims == 0) {
        if (text == "0" || text == "()") return identity();
        throw std::invalid_argument("the trivial group only has the element 0");
      }
      std::vector<std::int64_t> coords;
      if (!text.empty() && text.front() == '(') {
        if (text.back() != ')') throw std::invalid_argument("unterminated tuple '" + std::string(text) + "'");
        std::string_view inner = text.substr(1, text.size() - 2);
        while (true) {
          const auto comma = inner.find(',');
          coords.push_back(parseInt(trim(inner.substr(0, comma))));
          if (comma == std::string_view::npos) break;
          inner = inner.substr(comma + 1);
        }
      } else {
        coords.push_back(parseInt(text));
      }
      if (coords.size() != dims)
        throw std::invalid_argument("expected " + std::to_string(dims) + " coordinates in '" + std::string(text) + "'");
      return abelianElement(std::move(coords));
    }
    case Backend::Free: {
      if (text == "1" || text.empty()) return identity();
      Word w;
      std::string_view rest = text;
      while (!rest.empty()) {
        const auto star = rest.find('*');
        std::string_view factor = trim(rest.substr(0, star));
        std::int64_t exponent = 1;
        if (const auto caret = factor.find('^'); caret != std::string_view::npos) {
          exponent = parseInt(trim(factor.substr(caret + 1)));
          factor = trim(factor.substr(0, caret));
        }
        std::optional<int> letter;
        for (std::size_t i = 0; i < freeRank_; ++i)
          if (generatorName(i) == factor) letter = static_cast<int>(i + 1);
        if (!letter) throw std::invalid_argument("unknown free generator '" + std::string(factor) + "'");
        for (std::int64_t k = 0; k < std::abs(exponent); ++k) w.push_back(exponent < 0 ? -*letter : *letter);
        if (star == std::string_view::npos) break;
        rest = rest.substr(star + 1);
      }
      return freeElement(std::move(w));
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Generation

FoldedGraph stallingsFold(std::size_t rank, std::span<const Word> gens) {
  struct RawEdge {
    std::size_t from, to, label;
  };
  std::vector<RawEdge> edges;
  std::size_t vertices = 1;
  for (const auto& g : gens) {
    const Word w = reduceWord(g);
    if (w.empty()) continue;
    std::size_t cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::size_t next = (i + 1 == w.size()) ? 0 : vertices++;
      const int l = w[i];
      if (static_cast<std::size_t>(std::abs(l)) > rank) throw std::invalid_argument("letter outside free rank");
      const std::size_t label = static_cast<std::size_t>(std::abs(l)) - 1;
      if (l > 0)
        edges.push_back({cur, next, label});
      else
        edges.push_back({next, cur, label});
      cur = next;
    }
  }

  std::vector<std::size_t> parent(vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  // Fold until no vertex has two equally labelled edges in the same direction.
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::tuple<std::size_t, std::size_t, bool>, std::size_t> seen;
    for (const auto& e : edges) {
      const std::size_t u = find(e.from), v = find(e.to);
      for (const auto& [key, other] : {std::pair{std::tuple{u, e.label, true}, v}, std::pair{std::tuple{v, e.label, false}, u}}) {
        auto [it, inserted] = seen.try_emplace(key, other);
        if (inserted) continue;
        const std::size_t a = find(it->second), b = find(other);
        if (a != b) {
          parent[std::max(a, b)] = std::min(a, b);
          changed = true;
        }
      }
    }
  }

  std::map<std::size_t, std::size_t> relabel;
  relabel[find(0)] = 0;
  for (std::size_t v = 0; v < vertices; ++v) relabel.try_emplace(find(v), relabel.size());
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> unique;
  for (const auto& e : edges) unique.insert({relabel[find(e.from)], relabel[find(e.to)], e.label});
  FoldedGraph out;
  out.vertexCount = relabel.size();
  for (const auto& [f, t, l] : unique) out.edges.push_back({f, t, l});
  return out;
}

bool generates(const Group& g, std::span<const GroupElement> gens) {
  for (const auto& x : gens) g.check(x);
  switch (g.backend()) {
    case Backend::FiniteTable: {
      const std::size_t n = g.table().size();
      std::vector<bool> seen(n, false);
      std::deque<std::size_t> queue;
      const auto e = static_cast<std::size_t>(g.identity().payload[0]);
      seen[e] = true;
      queue.push_back(e);
      while (!queue.empty()) {
        const auto cur = queue.front();
        queue.pop_front();
        for (const auto& x : gens) {
          const auto nxt = g.table()[cur][static_cast<std::size_t>(x.payload[0])];
          if (!seen[nxt]) {
            seen[nxt] = true;
            queue.push_back(nxt);
          }
        }
      }
      return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }
    case Backend::FgAbelian: {
      const std::size_t dims = g.freeRank() + g.torsion().size();
      if (dims == 0) return true;
      IntMatrix m(gens.size() + g.torsion().size(), dims);
      for (std::size_t r = 0; r < gens.size(); ++r)
        for (std::size_t c = 0; c < dims; ++c) m(r, c) = gens[r].payload[c];
      for (std::size_t j = 0; j < g.torsion().size(); ++j) m(gens.size() + j, g.freeRank() + j) = g.torsion()[j];
      const auto snf = smithNormalForm(m);
      if (snf.diagonal.size() < dims) return false;
      return std::all_of(snf.diagonal.begin(), snf.diagonal.end(), [](const BigInt& d) { return d == 1; });
    }
    case Backend::Free: {
      std::vector<Word> words;
      for (const auto& x : gens) words.push_back(g.word(x));
      const auto folded = stallingsFold(g.freeRank(), words);
      if (folded.vertexCount != 1) return false;
      std::set<std::size_t> labels;
      for (const auto& e : folded.edges) labels.insert(e.label);
      return labels.size() == g.freeRank();
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Abelianization

Abelianization abelianize(const FinitelyPresented& fp) {
  const std::size_t n = fp.generatorCount;
  IntMatrix rel(fp.relators.size(), n);
  for (std::size_t r = 0; r < fp.relators.size(); ++r)
    for (int l : fp.relators[r]) {
      const auto k = static_cast<std::size_t>(std::abs(l));
      if (l == 0 || k > n) throw std::invalid_argument("relator letter outside generator range");
      rel(r, k - 1) += l > 0 ? 1 : -1;
    }
  const auto snf = smithNormalForm(rel);
  // Column i of `right` is a new coordinate; diagonal entry d_i (0 past the rank) decides its fate.
  std::vector<std::size_t> freeCols, torsionCols;
  std::vector<std::int64_t> torsion;
  for (std::size_t i = 0; i < n; ++i) {
    const BigInt d = i < snf.diagonal.size() ? snf.diagonal[i] : BigInt(0);
    if (d == 0)
      freeCols.push_back(i);
    else if (d != 1) {
      torsionCols.push_back(i);
      torsion.push_back(static_cast<std::int64_t>(d));
    }
  }
  Abelianization out{Group::abelian(freeCols.size(), torsion), {}, {}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::int64_t> coords;
    for (auto c : freeCols) coords.push_back(static_cast<std::int64_t>(snf.right(k, c)));
    for (auto c : torsionCols) coords.push_back(static_cast<std::int64_t>(snf.right(k, c)));
    out.generatorImages.push_back(out.group.abelianElement(std::move(coords)));
  }
  // Rows of right^{-1} give preimages: e_i * right^{-1} maps to the i-th new coordinate.
  RationalMatrix r(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = Rational(snf.right(i, j));
  const auto inv = inverse(r);
  if (!inv) throw std::logic_error("Smith transform is not invertible");
  auto rowOf = [&](std::size_t c) {
    std::vector<std::int64_t> v(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Rational x = (*inv)[c][j];
      if (boost::multiprecision::denominator(x) != 1) throw std::logic_error("Smith transform is not unimodular");
      v[j] = static_cast<std::int64_t>(boost::multiprecision::numerator(x));
    }
    return v;
  };
  for (auto c : freeCols) out.coordinatePreimages.push_back(rowOf(c));
  for (auto c : torsionCols) out.coordinatePreimages.push_back(rowOf(c));
  return out;
}

}  // namespace covol

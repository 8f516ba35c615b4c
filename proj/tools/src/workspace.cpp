#include "covol/cli/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace covol::cli {

namespace {

std::string describeError(const Location& at, const std::string& message, const std::vector<std::string>& expected) {
  std::string s = "line " + std::to_string(at.line) + ", column " + std::to_string(at.column) + ": " + message;
  if (!expected.empty()) {
    s += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? ", " : "") + expected[i];
    s += ")";
  }
  return s;
}

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t offset = 0;
  Location at;
};

std::string show(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  Location at;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++at.line;
        at.column = 1;
      } else {
        ++at.column;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.offset = i;
    t.at = at;
    std::size_t len = 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (i + len < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i + len])) || src[i + len] == '_'))
        ++len;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Number;
      while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Tok::Symbol;
      len = 2;
    } else if (std::string_view("{};,:=+-*/().^").find(c) != std::string_view::npos) {
      t.kind = Tok::Symbol;
    } else {
      throw ParseError(at, std::string("unexpected character '") + c + "'");
    }
    t.text = std::string(src.substr(i, len));
    out.push_back(std::move(t));
    advance(len);
  }
  Token end;
  end.offset = src.size();
  end.at = at;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(lex(src)) {}

  Workspace run() {
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (isIdent("quiver"))
        quiver();
      else if (isIdent("group"))
        group();
      else if (isIdent("weighting"))
        weighting();
      else if (isIdent("subcoalgebra"))
        subcoalgebra();
      else if (isIdent("comodule"))
        comodule();
      else
        fail(t, "unexpected " + show(t), {"quiver", "group", "weighting", "subcoalgebra", "comodule"});
    }
    return std::move(ws_);
  }

 private:
  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Workspace ws_;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool isSymbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }
  bool isIdent(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }

  [[noreturn]] void fail(const Token& t, const std::string& msg, std::vector<std::string> expected = {}) const {
    throw ParseError(t.at, msg, std::move(expected));
  }

  const Token& expectSymbol(std::string_view s) {
    if (!isSymbol(s)) fail(peek(), "unexpected " + show(peek()), {"'" + std::string(s) + "'"});
    return next();
  }
  const Token& expectIdent(const std::string& what) {
    if (peek().kind != Tok::Ident) fail(peek(), "unexpected " + show(peek()), {what});
    return next();
  }
  void expectKeyword(std::string_view k) {
    if (!isIdent(k)) fail(peek(), "unexpected " + show(peek()), {"'" + std::string(k) + "'"});
    next();
  }
  std::size_t expectNumber(const std::string& what) {
    if (peek().kind != Tok::Number) fail(peek(), "unexpected " + show(peek()), {what});
    const Token& t = next();
    try {
      return static_cast<std::size_t>(std::stoull(t.text));
    } catch (const std::exception&) {
      fail(t, "number out of range");
    }
  }

  template <typename Decl>
  void checkFresh(const std::vector<Decl>& decls, const Token& name, const char* kind) const {
    for (const auto& d : decls)
      if (d.name == name.text) fail(name, std::string("duplicate ") + kind + " '" + name.text + "'");
  }

  void quiver() {
    const Location at = next().at;
    const Token& name = expectIdent("quiver name");
    checkFresh(ws_.quivers, name, "quiver");
    QuiverDecl d{name.text, {}, at};
    expectSymbol("{");
    auto freshName = [&](const Token& t) {
      if (d.quiver.findVertex(t.text) || d.quiver.findArrow(t.text)) fail(t, "duplicate name '" + t.text + "'");
    };
    auto vertexRef = [&](const Token& t) {
      const auto v = d.quiver.findVertex(t.text);
      if (!v) fail(t, "unknown vertex '" + t.text + "'");
      return *v;
    };
    while (!isSymbol("}")) {
      if (isIdent("vertices")) {
        next();
        do {
          const Token& v = expectIdent("vertex name");
          freshName(v);
          d.quiver.addVertex(v.text);
        } while (isSymbol(",") && (next(), true));
        expectSymbol(";");
      } else if (isIdent("arrows")) {
        next();
        do {
          const Token& a = expectIdent("arrow name");
          freshName(a);
          expectSymbol(":");
          const auto s = vertexRef(expectIdent("vertex name"));
          expectSymbol("->");
          const auto t = vertexRef(expectIdent("vertex name"));
          d.quiver.addArrow(a.text, s, t);
        } while (isSymbol(",") && (next(), true));
        expectSymbol(";");
      } else {
        fail(peek(), "unexpected " + show(peek()), {"vertices", "arrows", "'}'"});
      }
    }
    next();
    if (d.quiver.vertexCount() == 0) fail(name, "quiver '" + name.text + "' has no vertices");
    ws_.order.emplace_back(DeclKind::Quiver, ws_.quivers.size());
    ws_.quivers.push_back(std::move(d));
  }

  void group() {
    const Location at = next().at;
    const Token& name = expectIdent("group name");
    checkFresh(ws_.groups, name, "group");
    expectSymbol("=");
    const Token& first = peek();
    std::optional<Group> g;
    if (isIdent("free")) {
      next();
      expectSymbol("(");
      const auto r = expectNumber("rank");
      expectSymbol(")");
      g = Group::free(r);
    } else if (isIdent("trivial")) {
      next();
      g = Group::trivial();
    } else {
      std::size_t rank = 0;
      std::vector<std::int64_t> torsion;
      while (true) {
        if (!isIdent("Z")) fail(peek(), "unexpected " + show(peek()), {"Z", "Z^k", "Z/n", "free(r)", "trivial"});
        next();
        if (isSymbol("^")) {
          next();
          rank += expectNumber("exponent");
        } else if (isSymbol("/")) {
          next();
          const Token& nt = peek();
          const auto n = expectNumber("order");
          if (n < 2) fail(nt, "cyclic order must be at least 2");
          torsion.push_back(static_cast<std::int64_t>(n));
        } else {
          rank += 1;
        }
        if (!isIdent("x")) break;
        next();
      }
      try {
        g = Group::abelian(rank, torsion);
      } catch (const std::exception& e) {
        fail(first, e.what());
      }
    }
    expectSymbol(";");
    ws_.order.emplace_back(DeclKind::Group, ws_.groups.size());
    ws_.groups.push_back({name.text, *g, at});
  }

  void weighting() {
    const Location at = next().at;
    const Token& name = expectIdent("weighting name");
    checkFresh(ws_.weightings, name, "weighting");
    expectKeyword("on");
    const Token& qn = expectIdent("quiver name");
    const QuiverDecl* q = ws_.findQuiver(qn.text);
    if (!q) fail(qn, "unknown quiver '" + qn.text + "'");
    expectKeyword("into");
    const Token& gn = expectIdent("group name");
    const GroupDecl* g = ws_.findGroup(gn.text);
    if (!g) fail(gn, "unknown group '" + gn.text + "'");
    WeightingDecl d{name.text, qn.text, gn.text, {g->group, {}}, at};
    std::vector<std::optional<GroupElement>> values(q->quiver.arrowCount());
    expectSymbol("{");
    while (!isSymbol("}")) {
      const Token& an = expectIdent("arrow name");
      const auto a = q->quiver.findArrow(an.text);
      if (!a) fail(an, "unknown arrow '" + an.text + "'");
      if (values[*a]) fail(an, "arrow '" + an.text + "' weighted twice");
      expectSymbol("=");
      const Token& start = peek();
      while (!isSymbol(";") && peek().kind != Tok::End) next();
      if (start.offset == peek().offset) fail(start, "unexpected " + show(start), {"group element"});
      std::string text(src_.substr(start.offset, peek().offset - start.offset));
      text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }),
                 text.end());
      try {
        values[*a] = g->group.parse(text);
      } catch (const std::exception& e) {
        fail(start, std::string("bad group element: ") + e.what());
      }
      expectSymbol(";");
    }
    const Token& close = next();
    for (std::size_t a = 0; a < values.size(); ++a) {
      if (!values[a]) fail(close, "arrow '" + q->quiver.arrow(a).name + "' has no weight");
      d.weighting.values.push_back(*values[a]);
    }
    ws_.order.emplace_back(DeclKind::Weighting, ws_.weightings.size());
    ws_.weightings.push_back(std::move(d));
  }

  Rational coefficient() {
    const Token& num = next();
    Rational r = parseRational(num.text);
    if (isSymbol("/")) {
      next();
      const Token& den = peek();
      if (expectNumber("denominator") == 0) fail(den, "zero denominator");
      r /= parseRational(den.text);
    }
    return r;
  }

  std::size_t path(const PathIndex& index) {
    const auto& q = index.quiver();
    std::vector<Token> names{expectIdent("path")};
    std::vector<Token> dots;
    while (isSymbol(".")) {
      dots.push_back(next());
      names.push_back(expectIdent("arrow name"));
    }
    if (names.size() == 1)
      if (auto v = q.findVertex(names[0].text)) return *v;
    std::vector<std::size_t> arrows;
    for (const auto& n : names) {
      const auto a = q.findArrow(n.text);
      if (!a) fail(n, "unknown arrow '" + n.text + "'");
      arrows.push_back(*a);
    }
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
      if (q.arrow(arrows[i]).source != q.arrow(arrows[i + 1]).target)
        fail(dots[i], "endpoint mismatch: " + names[i].text + " starts at " +
                          q.vertexName(q.arrow(arrows[i]).source) + " but " + names[i + 1].text + " ends at " +
                          q.vertexName(q.arrow(arrows[i + 1]).target));
    if (arrows.size() > index.maxLength())
      fail(names[0], "path longer than the truncation " + std::to_string(index.maxLength()));
    std::reverse(arrows.begin(), arrows.end());
    return *index.findArrows(arrows);
  }

  SparseVector sum(const PathIndex& index) {
    SparseVector v;
    bool firstTerm = true;
    while (true) {
      Rational sign = 1;
      if (isSymbol("+") || isSymbol("-")) {
        sign = next().text == "-" ? -1 : 1;
      } else if (!firstTerm) {
        break;
      }
      Rational c = 1;
      if (peek().kind == Tok::Number) {
        c = coefficient();
        expectSymbol("*");
      }
      v.add(path(index), sign * c);
      firstTerm = false;
    }
    return v;
  }

  void subcoalgebra() {
    const Location at = next().at;
    const Token& name = expectIdent("subcoalgebra name");
    checkFresh(ws_.subcoalgebras, name, "subcoalgebra");
    expectKeyword("of");
    const Token& qn = expectIdent("quiver name");
    const QuiverDecl* q = ws_.findQuiver(qn.text);
    if (!q) fail(qn, "unknown quiver '" + qn.text + "'");
    SubcoalgebraDecl d{name.text, qn.text, 0, nullptr, {}, at};
    expectSymbol("{");
    expectKeyword("truncate");
    d.truncation = expectNumber("truncation length");
    d.index = makePathIndex(q->quiver, d.truncation);
    expectSymbol(";");
    if (isIdent("generators")) {
      next();
      expectSymbol(":");
      do {
        auto g = sum(*d.index);
        if (!g.empty()) d.generators.push_back(std::move(g));
      } while (isSymbol(",") && (next(), true));
      expectSymbol(";");
    }
    expectSymbol("}");
    ws_.order.emplace_back(DeclKind::Subcoalgebra, ws_.subcoalgebras.size());
    ws_.subcoalgebras.push_back(std::move(d));
  }

  void comodule() {
    const Location at = next().at;
    const Token& name = expectIdent("comodule name");
    checkFresh(ws_.comodules, name, "comodule");
    expectKeyword("of");
    const Token& bn = expectIdent("subcoalgebra name");
    const SubcoalgebraDecl* b = ws_.findSubcoalgebra(bn.text);
    if (!b) fail(bn, "unknown subcoalgebra '" + bn.text + "'");
    expectSymbol("{");
    expectKeyword("basis");
    std::vector<std::string> labels;
    std::map<std::string, std::size_t> byName;
    do {
      const Token& l = expectIdent("basis label");
      if (byName.count(l.text)) fail(l, "duplicate basis label '" + l.text + "'");
      byName[l.text] = labels.size();
      labels.push_back(l.text);
    } while (isSymbol(",") && (next(), true));
    expectSymbol(";");
    ComoduleDecl d{name.text, bn.text, Comodule(labels), at};
    std::set<std::pair<std::size_t, std::size_t>> seen;
    auto label = [&]() {
      const Token& t = expectIdent("basis label");
      auto it = byName.find(t.text);
      if (it == byName.end()) fail(t, "unknown basis label '" + t.text + "'");
      return it->second;
    };
    while (!isSymbol("}")) {
      if (!isIdent("coeff")) fail(peek(), "unexpected " + show(peek()), {"coeff", "'}'"});
      const Token& kw = next();
      const auto i = label();
      expectSymbol(",");
      const auto j = label();
      if (!seen.insert({i, j}).second) fail(kw, "coefficient (" + labels[i] + ", " + labels[j] + ") given twice");
      expectSymbol("=");
      d.module.setCoefficient(i, j, sum(*b->index));
      expectSymbol(";");
    }
    next();
    ws_.order.emplace_back(DeclKind::Comodule, ws_.comodules.size());
    ws_.comodules.push_back(std::move(d));
  }
};

template <typename Decl>
const Decl* findIn(const std::vector<Decl>& v, std::string_view name) {
  for (const auto& d : v)
    if (d.name == name) return &d;
  return nullptr;
}

}  // namespace

ParseError::ParseError(Location at, std::string message, std::vector<std::string> expected)
    : std::runtime_error(describeError(at, message, expected)),
      at_(at),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

const QuiverDecl* Workspace::findQuiver(std::string_view name) const { return findIn(quivers, name); }
const GroupDecl* Workspace::findGroup(std::string_view name) const { return findIn(groups, name); }
const WeightingDecl* Workspace::findWeighting(std::string_view name) const { return findIn(weightings, name); }
const SubcoalgebraDecl* Workspace::findSubcoalgebra(std::string_view name) const {
  return findIn(subcoalgebras, name);
}
const ComoduleDecl* Workspace::findComodule(std::string_view name) const { return findIn(comodules, name); }

bool operator==(const Workspace& a, const Workspace& b) {
  if (a.order != b.order) return false;
  for (std::size_t i = 0; i < a.quivers.size(); ++i)
    if (a.quivers[i].name != b.quivers[i].name || !(a.quivers[i].quiver == b.quivers[i].quiver)) return false;
  for (std::size_t i = 0; i < a.groups.size(); ++i)
    if (a.groups[i].name != b.groups[i].name || !(a.groups[i].group == b.groups[i].group)) return false;
  for (std::size_t i = 0; i < a.weightings.size(); ++i) {
    const auto& x = a.weightings[i];
    const auto& y = b.weightings[i];
    if (x.name != y.name || x.quiver != y.quiver || x.group != y.group || !(x.weighting == y.weighting)) return false;
  }
  for (std::size_t i = 0; i < a.subcoalgebras.size(); ++i) {
    const auto& x = a.subcoalgebras[i];
    const auto& y = b.subcoalgebras[i];
    if (x.name != y.name || x.quiver != y.quiver || x.truncation != y.truncation || x.generators != y.generators)
      return false;
  }
  for (std::size_t i = 0; i < a.comodules.size(); ++i) {
    const auto& x = a.comodules[i];
    const auto& y = b.comodules[i];
    if (x.name != y.name || x.subcoalgebra != y.subcoalgebra || !(x.module == y.module)) return false;
  }
  return true;
}

Workspace parse(std::string_view text) { return Parser(text).run(); }

Workspace parseFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string groupSpec(const Group& g) {
  if (g.backend() == Backend::FiniteTable) throw std::invalid_argument("finite table groups have no workspace syntax");
  return g.describe();
}

std::string pathText(const PathIndex& index, std::size_t p) {
  const auto& q = index.quiver();
  const auto& path = index.path(p);
  if (path.arrows.empty()) return q.vertexName(path.source);
  std::string s;
  for (auto it = path.arrows.rbegin(); it != path.arrows.rend(); ++it) {
    if (!s.empty()) s += ".";
    s += q.arrow(*it).name;
  }
  return s;
}

std::string sumText(const PathIndex& index, const SparseVector& v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [p, c] : v) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (s.empty())
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    if (mag != 1) s += toString(mag) + "*";
    s += pathText(index, p);
  }
  return s;
}

std::string emit(const Workspace& w) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [kind, i] : w.order) {
    if (!first) os << "\n";
    first = false;
    switch (kind) {
      case DeclKind::Quiver: {
        const auto& d = w.quivers[i];
        os << "quiver " << d.name << " {\n  vertices ";
        for (std::size_t v = 0; v < d.quiver.vertexCount(); ++v) os << (v ? ", " : "") << d.quiver.vertexName(v);
        os << ";\n";
        for (const auto& a : d.quiver.arrows())
          os << "  arrows " << a.name << ": " << d.quiver.vertexName(a.source) << " -> "
             << d.quiver.vertexName(a.target) << ";\n";
        os << "}\n";
        break;
      }
      case DeclKind::Group: {
        const auto& d = w.groups[i];
        os << "group " << d.name << " = " << groupSpec(d.group) << ";\n";
        break;
      }
      case DeclKind::Weighting: {
        const auto& d = w.weightings[i];
        const auto& q = w.findQuiver(d.quiver)->quiver;
        os << "weighting " << d.name << " on " << d.quiver << " into " << d.group << " {\n";
        for (std::size_t a = 0; a < q.arrowCount(); ++a)
          os << "  " << q.arrow(a).name << " = " << d.weighting.group.format(d.weighting[a]) << ";\n";
        os << "}\n";
        break;
      }
      case DeclKind::Subcoalgebra: {
        const auto& d = w.subcoalgebras[i];
        os << "subcoalgebra " << d.name << " of " << d.quiver << " {\n  truncate " << d.truncation << ";\n";
        if (!d.generators.empty()) {
          os << "  generators: ";
          for (std::size_t g = 0; g < d.generators.size(); ++g)
            os << (g ? ", " : "") << sumText(*d.index, d.generators[g]);
          os << ";\n";
        }
        os << "}\n";
        break;
      }
      case DeclKind::Comodule: {
        const auto& d = w.comodules[i];
        const auto& index = *w.findSubcoalgebra(d.subcoalgebra)->index;
        const auto& m = d.module;
        os << "comodule " << d.name << " of " << d.subcoalgebra << " {\n  basis ";
        for (std::size_t k = 0; k < m.dimension(); ++k) os << (k ? ", " : "") << m.labels()[k];
        os << ";\n";
        for (std::size_t r = 0; r < m.dimension(); ++r)
          for (std::size_t c = 0; c < m.dimension(); ++c)
            if (!m.coefficient(r, c).empty())
              os << "  coeff " << m.labels()[r] << ", " << m.labels()[c] << " = "
                 << sumText(index, m.coefficient(r, c)) << ";\n";
        os << "}\n";
        break;
      }
    }
  }
  return os.str();
}

}  // namespace covol::cli

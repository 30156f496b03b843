#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kaschlab/algebra.hpp"

namespace kaschlab {

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// A diagnostic tied to a position in the source text.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, SourceSpan span, std::string message, std::vector<std::string> expected = {})
      : Error(code, format(span, message, expected)),
        span_(span),
        message_(std::move(message)),
        expected_(std::move(expected)) {}

  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(const SourceSpan& s, const std::string& msg, const std::vector<std::string>& expected) {
    std::string out = std::to_string(s.line) + ":" + std::to_string(s.column) + ": " + msg;
    if (!expected.empty()) {
      out += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) out += (i ? ", " : "") + expected[i];
      out += ")";
    }
    return out;
  }

  SourceSpan span_;
  std::string message_;
  std::vector<std::string> expected_;
};

struct Term {
  mpq_class coeff;
  std::string symbol;
  SourceSpan span;
};

/// Linear combination of paths; a path is a sequence of arrows, or a single
/// vertex for a trivial path.
struct PathTerm {
  mpq_class coeff;
  std::vector<std::string> path;
  SourceSpan span;
};

struct StructureForm {
  struct Product {
    std::size_t i = 0;
    std::size_t j = 0;
    std::vector<Term> value;
  };
  std::vector<std::string> labels;
  std::optional<std::vector<Term>> unit;
  std::vector<Product> products;
};

struct QuiverPresentation {
  struct Arrow {
    std::string label;
    std::string source;
    std::string target;
  };
  struct Relation {
    /// lhs − rhs.
    std::vector<PathTerm> terms;
    SourceSpan span;
  };
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
  std::size_t nilpotency = 0;
};

struct AlgebraDocument {
  std::string name;
  FieldSpec field;
  std::variant<StructureForm, QuiverPresentation> body;

  bool is_quiver() const { return std::holds_alternative<QuiverPresentation>(body); }
};

struct ParseResult {
  std::optional<AlgebraDocument> document;
  std::vector<ParseError> errors;
};

namespace detail {

enum class Tok { Ident, Int, Slash, LBrace, RBrace, LParen, RParen, Semi, Comma, Eq, Star, Plus, Minus, Colon, Arrow, End };

inline std::string tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Slash: return "'/'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Eq: return "'='";
    case Tok::Star: return "'*'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      const auto start = here();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", start});
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) advance();
        out.push_back(token(Tok::Ident, start));
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        out.push_back(token(Tok::Int, start));
        continue;
      }
      if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        advance();
        advance();
        out.push_back(token(Tok::Arrow, start));
        continue;
      }
      Tok k;
      switch (c) {
        case '/': k = Tok::Slash; break;
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ';': k = Tok::Semi; break;
        case ',': k = Tok::Comma; break;
        case '=': k = Tok::Eq; break;
        case '*': k = Tok::Star; break;
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case ':': k = Tok::Colon; break;
        default: {
          advance();
          auto span = start;
          span.end = pos_;
          throw ParseError(ErrorCode::ParseError, span, "unexpected character '" + std::string(1, c) + "'");
        }
      }
      advance();
      out.push_back(token(k, start));
    }
  }

 private:
  SourceSpan here() const { return {pos_, pos_, line_, col_}; }

  Token token(Tok k, SourceSpan start) const {
    start.end = pos_;
    return {k, std::string(src_.substr(start.begin, pos_ - start.begin)), start};
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' || (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParseResult run() {
    ParseResult result;
    try {
      result.document = document();
    } catch (const ParseError& e) {
      errors_.push_back(e);
    }
    result.errors = std::move(errors_);
    if (!result.errors.empty()) result.document.reset();
    return result;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }

  [[noreturn]] void error(std::string message, std::vector<std::string> expected, ErrorCode code = ErrorCode::ParseError) const {
    throw ParseError(code, peek().span, std::move(message), std::move(expected));
  }
  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    const auto& t = peek();
    error(t.kind == Tok::End ? "unexpected end of input" : "unexpected " + tok_name(t.kind) + " '" + t.text + "'",
          std::move(expected));
  }

  const Token& expect(Tok k) {
    if (!at(k)) unexpected({tok_name(k)});
    return take();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) unexpected({"'" + std::string(w) + "'"});
    take();
  }
  std::string ident(const std::string& what) {
    if (!at(Tok::Ident)) unexpected({what});
    return take().text;
  }

  FieldSpec field() {
    if (at_word("QQ")) {
      take();
      return FieldSpec::rationals();
    }
    if (!at_word("GF")) unexpected({"'GF'", "'QQ'"});
    take();
    expect(Tok::LParen);
    if (!at(Tok::Int)) unexpected({"prime"});
    const auto& t = take();
    if (t.text.size() > 10 || std::stoull(t.text) >= (1ull << 31) || !is_prime(std::stoull(t.text)))
      throw ParseError(ErrorCode::ParseError, t.span, "GF(p) needs a prime p < 2^31, got " + t.text);
    expect(Tok::RParen);
    return FieldSpec::prime(static_cast<std::uint32_t>(std::stoull(t.text)));
  }

  AlgebraDocument document() {
    AlgebraDocument doc;
    const bool quiver = at_word("quiver");
    if (!quiver && !at_word("algebra")) unexpected({"'algebra'", "'quiver'"});
    take();
    doc.name = ident("algebra name");
    expect_word("over");
    doc.field = field();
    expect(Tok::LBrace);
    if (quiver) doc.body = quiver_body();
    else doc.body = structure_body();
    expect(Tok::RBrace);
    if (!at(Tok::End)) unexpected({tok_name(Tok::End)});
    return doc;
  }

  /// Skips to the end of the current statement after an error.
  void recover(const ParseError& e) {
    errors_.push_back(e);
    while (!at(Tok::Semi) && !at(Tok::RBrace) && !at(Tok::End)) take();
    if (at(Tok::Semi)) take();
  }

  mpq_class coefficient() {
    const auto& t = expect(Tok::Int);
    mpq_class q(mpz_class(t.text), 1);
    if (at(Tok::Slash)) {
      take();
      if (!at(Tok::Int)) unexpected({"denominator"});
      const auto& d = take();
      const mpz_class den(d.text);
      if (den == 0) throw ParseError(ErrorCode::ParseError, d.span, "zero denominator");
      q = mpq_class(mpz_class(t.text), den);
      q.canonicalize();
    }
    return q;
  }

  /// [sign] [coef ["*"]] item { ("+"|"-") [coef ["*"]] item } | "0"
  template <class Item>
  auto linear(Item item, const std::string& what) {
    using T = decltype(item(mpq_class{}, SourceSpan{}));
    std::vector<T> terms;
    const std::vector<std::string> expected{what};
    if (at(Tok::Int) && peek().text.find_first_not_of('0') == std::string::npos && pos_ + 1 < toks_.size() &&
        (toks_[pos_ + 1].kind == Tok::Semi || toks_[pos_ + 1].kind == Tok::Comma || toks_[pos_ + 1].kind == Tok::RBrace ||
         toks_[pos_ + 1].kind == Tok::Eq)) {
      take();
      return terms;
    }
    bool first = true;
    for (;;) {
      mpq_class sign = 1;
      if (at(Tok::Plus) || at(Tok::Minus)) {
        if (first && at(Tok::Plus)) unexpected(expected);
        if (at(Tok::Minus)) sign = -1;
        take();
      } else if (!first) {
        break;
      }
      const auto start = peek().span;
      mpq_class c = 1;
      if (at(Tok::Int)) {
        c = coefficient();
        if (at(Tok::Star)) take();
      }
      if (!at(Tok::Ident)) unexpected(expected);
      terms.push_back(item(sign * c, start));
      first = false;
    }
    return terms;
  }

  StructureForm structure_body() {
    StructureForm s;
    std::map<std::string, std::size_t> index;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    bool have_basis = false;
    auto lookup = [&](const Token& t) {
      auto it = index.find(t.text);
      if (it == index.end()) throw ParseError(ErrorCode::UnknownSymbol, t.span, "unknown basis label '" + t.text + "'");
      return it->second;
    };
    auto term = [&](mpq_class c, SourceSpan start) {
      const auto& t = take();
      lookup(t);
      start.end = t.span.end;
      return Term{c, t.text, start};
    };
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      try {
        if (at_word("basis")) {
          if (have_basis) error("basis declared twice", {});
          take();
          for (;;) {
            if (!at(Tok::Ident)) unexpected({"basis label"});
            const auto& t = take();
            if (index.count(t.text))
              throw ParseError(ErrorCode::DuplicateBasisLabel, t.span, "duplicate basis label '" + t.text + "'");
            index[t.text] = s.labels.size();
            s.labels.push_back(t.text);
            if (!at(Tok::Comma)) break;
            take();
          }
          have_basis = true;
          expect(Tok::Semi);
        } else if (at_word("unit")) {
          if (!have_basis) error("unit before basis", {"'basis'"});
          if (s.unit) error("unit declared twice", {});
          take();
          expect(Tok::Eq);
          s.unit = linear(term, "linear expression");
          expect(Tok::Semi);
        } else if (at_word("mult")) {
          if (!have_basis) error("mult before basis", {"'basis'"});
          take();
          if (!at(Tok::Ident)) unexpected({"basis label"});
          const auto& a = take();
          expect(Tok::Star);
          if (!at(Tok::Ident)) unexpected({"basis label"});
          const auto& b = take();
          const auto i = lookup(a), j = lookup(b);
          if (!seen.insert({i, j}).second)
            throw ParseError(ErrorCode::ParseError, a.span, "product " + a.text + "*" + b.text + " defined twice");
          expect(Tok::Eq);
          s.products.push_back({i, j, linear(term, "linear expression")});
          expect(Tok::Semi);
        } else {
          unexpected({"'basis'", "'unit'", "'mult'", "'}'"});
        }
      } catch (const ParseError& e) {
        recover(e);
      }
    }
    if (!have_basis && errors_.empty()) error("missing basis declaration", {"'basis'"});
    return s;
  }

  QuiverPresentation quiver_body() {
    QuiverPresentation q;
    std::set<std::string> vertices, arrows;
    std::map<std::string, std::pair<std::string, std::string>> ends;
    bool have_n = false;
    auto vertex = [&]() -> std::string {
      if (!at(Tok::Ident) && !at(Tok::Int)) unexpected({"vertex"});
      return take().text;
    };
    auto path_term = [&](mpq_class c, SourceSpan start) {
      PathTerm t{c, {}, start};
      for (;;) {
        const auto& tok = take();
        if (!arrows.count(tok.text) && !vertices.count(tok.text))
          throw ParseError(ErrorCode::UnknownSymbol, tok.span, "unknown arrow or vertex '" + tok.text + "'");
        t.path.push_back(tok.text);
        t.span.end = tok.span.end;
        if (!at(Tok::Star)) break;
        take();
        if (!at(Tok::Ident)) unexpected({"arrow"});
      }
      return t;
    };
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      try {
        if (at_word("vertices")) {
          take();
          for (;;) {
            const auto start = peek().span;
            const auto v = vertex();
            if (!vertices.insert(v).second)
              throw ParseError(ErrorCode::DuplicateBasisLabel, start, "duplicate vertex '" + v + "'");
            q.vertices.push_back(v);
            if (!at(Tok::Comma)) break;
            take();
          }
          expect(Tok::Semi);
        } else if (at_word("arrow")) {
          take();
          if (!at(Tok::Ident)) unexpected({"arrow label"});
          const auto& a = take();
          if (arrows.count(a.text) || vertices.count(a.text))
            throw ParseError(ErrorCode::DuplicateBasisLabel, a.span, "duplicate label '" + a.text + "'");
          expect(Tok::Colon);
          auto check_vertex = [&]() {
            const auto span = peek().span;
            const auto v = vertex();
            if (!vertices.count(v)) throw ParseError(ErrorCode::UnknownSymbol, span, "unknown vertex '" + v + "'");
            return v;
          };
          const auto s = check_vertex();
          expect(Tok::Arrow);
          const auto t = check_vertex();
          arrows.insert(a.text);
          ends[a.text] = {s, t};
          q.arrows.push_back({a.text, s, t});
          expect(Tok::Semi);
        } else if (at_word("relations")) {
          take();
          for (;;) {
            const auto start = peek().span;
            QuiverPresentation::Relation rel;
            rel.terms = linear(path_term, "path expression");
            expect(Tok::Eq);
            auto rhs = linear(path_term, "path expression");
            for (auto& t : rhs) {
              t.coeff = -t.coeff;
              rel.terms.push_back(std::move(t));
            }
            rel.span = start;
            rel.span.end = toks_[pos_ > 0 ? pos_ - 1 : 0].span.end;
            check_relation(rel, ends);
            q.relations.push_back(std::move(rel));
            if (!at(Tok::Comma)) break;
            take();
          }
          expect(Tok::Semi);
        } else if (at_word("nilpotency")) {
          take();
          const auto& t = expect(Tok::Int);
          if (t.text.size() > 4 || std::stoul(t.text) < 2)
            throw ParseError(ErrorCode::RelationInvariant, t.span, "nilpotency bound must be between 2 and 9999");
          q.nilpotency = std::stoul(t.text);
          have_n = true;
          expect(Tok::Semi);
        } else {
          unexpected({"'vertices'", "'arrow'", "'relations'", "'nilpotency'", "'}'"});
        }
      } catch (const ParseError& e) {
        recover(e);
      }
    }
    if (errors_.empty() && q.vertices.empty()) error("quiver without vertices", {"'vertices'"});
    if (errors_.empty() && !have_n) error("missing nilpotency bound", {"'nilpotency'"});
    return q;
  }

  /// Every path in a relation runs between the same pair of vertices.
  static void check_relation(const QuiverPresentation::Relation& rel,
                             const std::map<std::string, std::pair<std::string, std::string>>& ends) {
    std::optional<std::pair<std::string, std::string>> common;
    for (const auto& t : rel.terms) {
      std::string s, e;
      for (std::size_t k = 0; k < t.path.size(); ++k) {
        const auto it = ends.find(t.path[k]);
        const auto st = it == ends.end() ? std::make_pair(t.path[k], t.path[k]) : it->second;
        if (it == ends.end() && t.path.size() > 1)
          throw ParseError(ErrorCode::RelationInvariant, t.span, "vertex '" + t.path[k] + "' inside a composite path");
        if (k == 0) s = st.first;
        else if (st.first != e)
          throw ParseError(ErrorCode::RelationInvariant, t.span,
                           "path does not compose: '" + t.path[k - 1] + "' ends at " + e + " but '" + t.path[k] +
                               "' starts at " + st.first);
        e = st.second;
      }
      if (!common) common = std::make_pair(s, e);
      else if (*common != std::make_pair(s, e))
        throw ParseError(ErrorCode::RelationInvariant, t.span,
                         "relation mixes paths " + common->first + "->" + common->second + " and " + s + "->" + e);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<ParseError> errors_;
};

inline std::string vertex_label(const std::string& v) {
  return std::isdigit(static_cast<unsigned char>(v[0])) ? "e" + v : v;
}

}  // namespace detail

/// Parses a document, collecting every diagnostic found with statement-level
/// recovery.
inline ParseResult parse_document(std::string_view text) {
  try {
    return detail::Parser(detail::Lexer(text).run()).run();
  } catch (const ParseError& e) {
    return {std::nullopt, {e}};
  }
}

/// Parses a document or throws its first diagnostic.
inline AlgebraDocument parse(std::string_view text) {
  auto r = parse_document(text);
  if (!r.errors.empty()) throw r.errors.front();
  return std::move(*r.document);
}

/// Path algebra kQ/I truncated at the nilpotency bound. Basis: the paths of
/// length < N outside the pivots of the relation ideal, longer paths being
/// eliminated first.
template <ExactField F>
Algebra<F> flatten(const std::string& name, const QuiverPresentation& q, const F& f) {
  require(!q.vertices.empty(), ErrorCode::NonUnitalResult, "quiver '" + name + "' has no vertices");
  require(q.nilpotency >= 2, ErrorCode::RelationInvariant, "nilpotency bound must be at least 2");
  constexpr std::size_t budget = 100000;
  const std::size_t nv = q.vertices.size();
  std::map<std::string, std::size_t> vidx, aidx;
  for (std::size_t v = 0; v < nv; ++v) vidx[q.vertices[v]] = v;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) aidx[q.arrows[a].label] = a;

  // A path is (source, arrows, target).
  struct Path {
    std::size_t source, target;
    std::vector<std::size_t> arrows;
  };
  std::vector<Path> paths;
  std::map<std::vector<std::size_t>, std::size_t> nontrivial;
  for (std::size_t v = 0; v < nv; ++v) paths.push_back({v, v, {}});
  std::size_t layer_begin = 0, layer_end = nv;
  for (std::size_t len = 1; len < q.nilpotency; ++len) {
    for (std::size_t p = layer_begin; p < layer_end; ++p)
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const auto s = vidx.at(q.arrows[a].source), t = vidx.at(q.arrows[a].target);
        if (paths[p].target != s) continue;
        Path next{paths[p].source, t, paths[p].arrows};
        next.arrows.push_back(a);
        nontrivial[next.arrows] = paths.size();
        paths.push_back(std::move(next));
        require(paths.size() <= budget, ErrorCode::IdealClosureOverflow,
                "quiver '" + name + "' has more than " + std::to_string(budget) + " paths below the nilpotency bound");
      }
    layer_begin = layer_end;
    layer_end = paths.size();
  }
  const std::size_t np = paths.size();

  // Concatenation p·r: index of the path, or nullopt when zero.
  auto concat = [&](std::size_t x, std::size_t y) -> std::optional<std::size_t> {
    const auto& a = paths[x];
    const auto& b = paths[y];
    if (a.target != b.source) return std::nullopt;
    if (a.arrows.empty()) return y;
    if (b.arrows.empty()) return x;
    if (a.arrows.size() + b.arrows.size() >= q.nilpotency) return std::nullopt;
    auto joined = a.arrows;
    joined.insert(joined.end(), b.arrows.begin(), b.arrows.end());
    return nontrivial.at(joined);
  };
  auto path_index = [&](const std::vector<std::string>& labels) -> std::optional<std::size_t> {
    if (labels.size() == 1 && vidx.count(labels[0])) return vidx.at(labels[0]);
    if (labels.size() >= q.nilpotency) return std::nullopt;
    std::vector<std::size_t> arrows;
    for (const auto& l : labels) {
      const auto it = aidx.find(l);
      require(it != aidx.end(), ErrorCode::UnknownSymbol, "unknown arrow '" + l + "' in a relation of '" + name + "'");
      arrows.push_back(it->second);
    }
    const auto it = nontrivial.find(arrows);
    require(it != nontrivial.end(), ErrorCode::RelationInvariant, "relation path does not compose in '" + name + "'");
    return it->second;
  };

  // Columns ordered longest path first so that pivots fall on long paths.
  std::vector<std::size_t> column_of(np), path_at(np);
  for (std::size_t i = 0; i < np; ++i) path_at[i] = np - 1 - i;
  std::stable_sort(path_at.begin(), path_at.end(),
                   [&](std::size_t x, std::size_t y) { return paths[x].arrows.size() > paths[y].arrows.size(); });
  for (std::size_t c = 0; c < np; ++c) column_of[path_at[c]] = c;

  EchelonBasis<F> ideal(f, np);
  std::size_t work = 0;
  for (const auto& rel : q.relations) {
    std::vector<std::pair<std::size_t, typename F::Element>> r;
    std::optional<std::size_t> src, dst;
    for (const auto& t : rel.terms) {
      const auto p = path_index(t.path);
      if (!p) continue;
      const auto c = f.from_rational(t.coeff);
      if (f.is_zero(c)) continue;
      require(!src || (*src == paths[*p].source && *dst == paths[*p].target), ErrorCode::RelationInvariant,
              "relation mixes paths with different endpoints in '" + name + "'");
      src = paths[*p].source;
      dst = paths[*p].target;
      r.emplace_back(*p, c);
    }
    if (r.empty()) continue;
    for (std::size_t x = 0; x < np; ++x) {
      if (paths[x].target != *src) continue;
      for (std::size_t y = 0; y < np; ++y) {
        if (paths[y].source != *dst) continue;
        require(++work <= 50 * budget, ErrorCode::IdealClosureOverflow, "relation ideal closure of '" + name + "' exceeds its budget");
        Vector<F> v(np, f.zero());
        bool any = false;
        for (const auto& [p, c] : r) {
          const auto xp = concat(x, p);
          if (!xp) continue;
          const auto xpy = concat(*xp, y);
          if (!xpy) continue;
          v[column_of[*xpy]] = f.add(v[column_of[*xpy]], c);
          any = true;
        }
        if (any) ideal.insert(std::move(v));
      }
    }
  }

  const auto rr = rref(ideal.basis());
  std::vector<bool> is_pivot(np, false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  // Basis = non-pivot paths in path order.
  std::vector<std::size_t> basis;
  std::vector<std::size_t> basis_pos(np, np);
  for (std::size_t p = 0; p < np; ++p)
    if (!is_pivot[column_of[p]]) {
      basis_pos[p] = basis.size();
      basis.push_back(p);
    }
  std::vector<std::size_t> pivot_row(np, np);
  for (std::size_t r = 0; r < rr.pivots.size(); ++r) pivot_row[rr.pivots[r]] = r;
  const std::size_t d = basis.size();
  auto reduce = [&](std::size_t p) {
    Vector<F> out(d, f.zero());
    const auto c = column_of[p];
    if (!is_pivot[c]) {
      out[basis_pos[p]] = f.one();
      return out;
    }
    const auto row = rr.reduced.row(pivot_row[c]);
    for (std::size_t k = 0; k < np; ++k)
      if (!f.is_zero(row[k]) && k != c) out[basis_pos[path_at[k]]] = f.neg(row[k]);
    return out;
  };

  std::vector<std::string> labels;
  std::set<std::string> used;
  for (auto p : basis) {
    std::string l;
    if (paths[p].arrows.empty()) {
      l = detail::vertex_label(q.vertices[paths[p].source]);
    } else {
      for (std::size_t k = 0; k < paths[p].arrows.size(); ++k) l += (k ? "_" : "") + q.arrows[paths[p].arrows[k]].label;
    }
    while (!used.insert(l).second) l += "_";
    labels.push_back(l);
  }
  auto data = AlgebraData<F>::zeros(f, name, labels);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto c = concat(basis[i], basis[j]);
      if (!c) continue;
      const auto v = reduce(*c);
      for (std::size_t k = 0; k < d; ++k) data.at(i, j, k) = v[k];
    }
  for (std::size_t v = 0; v < nv; ++v) {
    const auto r = reduce(v);
    for (std::size_t k = 0; k < d; ++k) data.unit[k] = f.add(data.unit[k], r[k]);
  }
  require(!is_zero_vector<F>(f, data.unit), ErrorCode::NonUnitalResult, "relations of '" + name + "' kill the unit");
  return Algebra<F>(std::move(data));
}

/// Builds the algebra of a document over the given field.
template <ExactField F>
Algebra<F> to_algebra(const AlgebraDocument& doc, const F& f) {
  if (const auto* q = std::get_if<QuiverPresentation>(&doc.body)) return flatten(doc.name, *q, f);
  const auto& s = std::get<StructureForm>(doc.body);
  auto data = AlgebraData<F>::zeros(f, doc.name, s.labels);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < s.labels.size(); ++i) index[s.labels[i]] = i;
  auto accumulate = [&](const std::vector<Term>& terms, auto&& slot) {
    for (const auto& t : terms) {
      auto& x = slot(index.at(t.symbol));
      x = f.add(x, f.from_rational(t.coeff));
    }
  };
  for (const auto& p : s.products)
    accumulate(p.value, [&](std::size_t k) -> typename F::Element& { return data.at(p.i, p.j, k); });
  if (!s.unit) return Algebra<F>::with_detected_unit(std::move(data));
  accumulate(*s.unit, [&](std::size_t k) -> typename F::Element& { return data.unit[k]; });
  return Algebra<F>(std::move(data));
}

/// Builds the algebra over the document's own field and hands it to fn.
template <class Fn>
decltype(auto) with_algebra(const AlgebraDocument& doc, Fn&& fn, std::optional<FieldSpec> override_field = std::nullopt) {
  return visit_field(override_field.value_or(doc.field),
                     [&](const auto& f) -> decltype(auto) { return std::forward<Fn>(fn)(to_algebra(doc, f)); });
}

namespace detail {

template <ExactField F>
std::string linear_text(const F& f, std::span<const typename F::Element> v, const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (f.is_zero(v[k])) continue;
    std::string c = f.to_string(v[k]);
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c = c.substr(1);
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    out += (c == "1" ? "" : c + " ") + labels[k];
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

/// Canonical text: basis in order, unit, then every non-zero product in
/// (i, j) order.
template <ExactField F>
std::string serialize(const Algebra<F>& a) {
  const F& f = a.field();
  const auto& labels = a.labels();
  std::ostringstream out;
  out << "algebra " << a.name() << " over " << f.spec().to_string() << " {\n";
  out << "  basis ";
  for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? ", " : "") << labels[i];
  out << ";\n";
  out << "  unit = " << detail::linear_text<F>(f, a.unit(), labels) << ";\n";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const auto v = a.multiply(a.basis_vector(i), a.basis_vector(j));
      if (is_zero_vector<F>(f, v)) continue;
      out << "  mult " << labels[i] << "*" << labels[j] << " = " << detail::linear_text<F>(f, v, labels) << ";\n";
    }
  out << "}\n";
  return out.str();
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot read '" + path.string() + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::Io, "cannot write '" + path.string() + "'");
  out << text;
  require(static_cast<bool>(out), ErrorCode::Io, "write to '" + path.string() + "' failed");
}

}  // namespace kaschlab

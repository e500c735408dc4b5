#include "graphivm/cypher/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace graphivm::cypher {

namespace {

// -- lexer -----------------------------------------------------------------

enum class Tok {
  Ident,       // bare identifier or keyword
  QuotedIdent, // `...`
  Integer,
  Float,
  String,
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Colon, Comma, Dot, DotDot, Pipe, Star, Plus, Minus, Slash, Percent, Caret,
  Lt, Gt, Le, Ge, Ne, Eq, RegexMatch, Dollar, Semicolon,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier text / decoded string / number spelling
  SourcePos pos;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message, SourcePos pos) {
  throw Error(kind, message, pos);
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.pos = {line_, col_};
      if (at_end()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
          t.text += advance();
        }
      } else if (c == '`') {
        t.kind = Tok::QuotedIdent;
        advance();
        while (true) {
          if (at_end()) fail(ErrorKind::SyntaxError, "unterminated quoted identifier", t.pos);
          char d = advance();
          if (d == '`') {
            if (!at_end() && peek() == '`') {
              t.text += advance();
              continue;
            }
            break;
          }
          t.text += d;
        }
        if (t.text.empty()) fail(ErrorKind::SyntaxError, "empty quoted identifier", t.pos);
        if (t.text.rfind(kAnonymousPrefix, 0) == 0) {
          fail(ErrorKind::SyntaxError, "identifiers may not start with '#'", t.pos);
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_number(t);
      } else if (c == '\'' || c == '"') {
        lex_string(t);
      } else {
        lex_symbol(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek(size_t ahead = 0) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }
  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (peek() == '/' && peek(1) == '*') {
        SourcePos start{line_, col_};
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (at_end()) fail(ErrorKind::SyntaxError, "unterminated comment", start);
          advance();
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  void lex_number(Token& t) {
    t.kind = Tok::Integer;
    while (std::isdigit(static_cast<unsigned char>(peek()))) t.text += advance();
    // "1..3" is a range, not a float
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      t.kind = Tok::Float;
      t.text += advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) t.text += advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      size_t k = 1;
      if (peek(1) == '+' || peek(1) == '-') k = 2;
      if (std::isdigit(static_cast<unsigned char>(peek(k)))) {
        t.kind = Tok::Float;
        for (size_t j = 0; j < k; ++j) t.text += advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) t.text += advance();
      }
    }
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
      fail(ErrorKind::SyntaxError, "malformed number '" + t.text + peek() + "'", t.pos);
    }
  }

  void lex_string(Token& t) {
    t.kind = Tok::String;
    const char quote = advance();
    while (true) {
      if (at_end()) fail(ErrorKind::SyntaxError, "unterminated string literal", t.pos);
      char c = advance();
      if (c == quote) return;
      if (c == '\\') {
        if (at_end()) fail(ErrorKind::SyntaxError, "unterminated string literal", t.pos);
        char e = advance();
        switch (e) {
          case 'n': t.text += '\n'; break;
          case 't': t.text += '\t'; break;
          case 'r': t.text += '\r'; break;
          case '\\':
          case '\'':
          case '"': t.text += e; break;
          default:
            fail(ErrorKind::SyntaxError, std::string("unknown escape '\\") + e + "'", t.pos);
        }
        continue;
      }
      t.text += c;
    }
  }

  void lex_symbol(Token& t) {
    const char c = advance();
    t.text = std::string(1, c);
    switch (c) {
      case '(': t.kind = Tok::LParen; return;
      case ')': t.kind = Tok::RParen; return;
      case '[': t.kind = Tok::LBracket; return;
      case ']': t.kind = Tok::RBracket; return;
      case '{': t.kind = Tok::LBrace; return;
      case '}': t.kind = Tok::RBrace; return;
      case ':': t.kind = Tok::Colon; return;
      case ',': t.kind = Tok::Comma; return;
      case '|': t.kind = Tok::Pipe; return;
      case '*': t.kind = Tok::Star; return;
      case '+': t.kind = Tok::Plus; return;
      case '-': t.kind = Tok::Minus; return;
      case '/': t.kind = Tok::Slash; return;
      case '%': t.kind = Tok::Percent; return;
      case '^': t.kind = Tok::Caret; return;
      case '$': t.kind = Tok::Dollar; return;
      case ';': t.kind = Tok::Semicolon; return;
      case '.':
        if (peek() == '.') {
          advance();
          t.kind = Tok::DotDot;
          t.text = "..";
        } else {
          t.kind = Tok::Dot;
        }
        return;
      case '=':
        if (peek() == '~') {
          advance();
          t.kind = Tok::RegexMatch;
        } else {
          t.kind = Tok::Eq;
        }
        return;
      case '<':
        if (peek() == '=') {
          advance();
          t.kind = Tok::Le;
        } else if (peek() == '>') {
          advance();
          t.kind = Tok::Ne;
        } else {
          t.kind = Tok::Lt;
        }
        return;
      case '>':
        if (peek() == '=') {
          advance();
          t.kind = Tok::Ge;
        } else {
          t.kind = Tok::Gt;
        }
        return;
      case '!':
        if (peek() == '=') {
          advance();
          t.kind = Tok::Ne;
          return;
        }
        break;
      default: break;
    }
    fail(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "'", t.pos);
  }

  std::string_view src_;
  size_t i_ = 0;
  uint32_t line_ = 1;
  uint32_t col_ = 1;
};

// -- parser ----------------------------------------------------------------

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

const char* const kWriteClauses[] = {"CREATE", "MERGE", "DELETE", "DETACH", "SET", "REMOVE",
                                     "CALL", "FOREACH", "LOAD", "UNION"};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  QueryAst query() {
    QueryAst q;
    bool returned = false;
    while (!returned) {
      const Token& t = cur();
      if (t.kind == Tok::End || t.kind == Tok::Semicolon) {
        fail(ErrorKind::SyntaxError, "query must end with RETURN", t.pos);
      }
      if (is_kw("MATCH") || is_kw("OPTIONAL")) {
        q.clauses.emplace_back(match_clause());
        where_clause(q);
      } else if (is_kw("WITH")) {
        q.clauses.emplace_back(with_clause());
        if (is_kw("ORDER") || is_kw("SKIP") || is_kw("LIMIT")) {
          fail(ErrorKind::UnsupportedFeature, "ORDER BY/SKIP/LIMIT after WITH is not supported",
               cur().pos);
        }
        where_clause(q);
      } else if (is_kw("UNWIND")) {
        q.clauses.emplace_back(unwind_clause());
      } else if (is_kw("RETURN")) {
        q.clauses.emplace_back(return_clause());
        if (is_kw("ORDER") || is_kw("SKIP") || is_kw("LIMIT")) {
          q.clauses.emplace_back(order_clause());
        }
        returned = true;
      } else if (is_kw("WHERE")) {
        fail(ErrorKind::SyntaxError, "WHERE must follow MATCH, OPTIONAL MATCH or WITH", t.pos);
      } else {
        reject_unsupported_clause();
        fail(ErrorKind::SyntaxError, "expected a clause, found '" + describe(t) + "'", t.pos);
      }
    }
    if (cur().kind == Tok::Semicolon) next();
    if (cur().kind != Tok::End) {
      reject_unsupported_clause();
      fail(ErrorKind::SyntaxError, "unexpected '" + describe(cur()) + "' after RETURN", cur().pos);
    }
    return q;
  }

  ExprPtr standalone_expression() {
    ExprPtr e = expression();
    if (cur().kind != Tok::End) {
      fail(ErrorKind::SyntaxError, "unexpected '" + describe(cur()) + "'", cur().pos);
    }
    return e;
  }

 private:
  // -- token helpers -------------------------------------------------------
  const Token& cur() const { return toks_[i_]; }
  const Token& look(size_t ahead) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    return t;
  }
  bool is_kw(const char* kw) const { return is_kw_at(cur(), kw); }
  static bool is_kw_at(const Token& t, const char* kw) {
    return t.kind == Tok::Ident && upper(t.text) == kw;
  }
  bool accept(Tok kind) {
    if (cur().kind != kind) return false;
    next();
    return true;
  }
  bool accept_kw(const char* kw) {
    if (!is_kw(kw)) return false;
    next();
    return true;
  }
  const Token& expect(Tok kind, const char* what) {
    if (cur().kind != kind) {
      fail(ErrorKind::SyntaxError,
           std::string("expected ") + what + ", found '" + describe(cur()) + "'", cur().pos);
    }
    return next();
  }
  void expect_kw(const char* kw) {
    if (!accept_kw(kw)) {
      fail(ErrorKind::SyntaxError,
           std::string("expected ") + kw + ", found '" + describe(cur()) + "'", cur().pos);
    }
  }
  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    if (t.kind == Tok::String) return "'" + t.text + "'";
    return t.text;
  }

  void reject_unsupported_clause() const {
    for (const char* kw : kWriteClauses) {
      if (is_kw(kw)) {
        fail(ErrorKind::UnsupportedFeature, std::string(kw) + " is not supported", cur().pos);
      }
    }
  }

  std::string identifier(const char* what) {
    const Token& t = cur();
    if (t.kind == Tok::Ident || t.kind == Tok::QuotedIdent) {
      next();
      return t.text;
    }
    fail(ErrorKind::SyntaxError,
         std::string("expected ") + what + ", found '" + describe(t) + "'", t.pos);
  }

  bool at_identifier() const {
    return cur().kind == Tok::Ident || cur().kind == Tok::QuotedIdent;
  }

  std::string fresh_name() { return kAnonymousPrefix + std::to_string(anon_++); }

  // -- clauses -------------------------------------------------------------
  MatchClause match_clause() {
    MatchClause m;
    m.pos = cur().pos;
    if (accept_kw("OPTIONAL")) m.optional = true;
    expect_kw("MATCH");
    do {
      if (at_identifier() && look(1).kind == Tok::Eq) {
        fail(ErrorKind::UnsupportedFeature, "named paths are not supported", cur().pos);
      }
      m.patterns.push_back(pattern());
    } while (accept(Tok::Comma));
    return m;
  }

  void where_clause(QueryAst& q) {
    if (!is_kw("WHERE")) return;
    WhereClause w;
    w.pos = next().pos;
    w.condition = expression();
    q.clauses.emplace_back(std::move(w));
  }

  std::vector<ReturnItem> items() {
    if (cur().kind == Tok::Star) {
      fail(ErrorKind::UnsupportedFeature, "'*' projections are not supported", cur().pos);
    }
    std::vector<ReturnItem> out;
    do {
      ReturnItem item;
      item.expr = expression();
      if (accept_kw("AS")) {
        item.alias = identifier("alias");
        item.explicit_alias = true;
      }
      out.push_back(std::move(item));
    } while (accept(Tok::Comma));
    return out;
  }

  WithClause with_clause() {
    WithClause w;
    w.pos = next().pos;
    w.distinct = accept_kw("DISTINCT");
    w.items = items();
    return w;
  }

  UnwindClause unwind_clause() {
    UnwindClause u;
    u.pos = next().pos;
    u.expr = expression();
    expect_kw("AS");
    u.alias = identifier("alias");
    return u;
  }

  ReturnClause return_clause() {
    ReturnClause r;
    r.pos = next().pos;
    r.distinct = accept_kw("DISTINCT");
    r.items = items();
    return r;
  }

  int64_t count_literal(const char* what) {
    const Token& t = cur();
    if (t.kind == Tok::Dollar) fail(ErrorKind::UnsupportedFeature, "parameters are not supported", t.pos);
    if (t.kind != Tok::Integer) {
      fail(ErrorKind::SyntaxError, std::string(what) + " expects a non-negative integer", t.pos);
    }
    next();
    return parse_int(t);
  }

  OrderSkipLimitClause order_clause() {
    OrderSkipLimitClause o;
    o.pos = cur().pos;
    if (accept_kw("ORDER")) {
      expect_kw("BY");
      do {
        SortItem s;
        s.expr = expression();
        if (accept_kw("DESC") || accept_kw("DESCENDING")) {
          s.descending = true;
        } else if (!accept_kw("ASC")) {
          accept_kw("ASCENDING");
        }
        o.keys.push_back(std::move(s));
      } while (accept(Tok::Comma));
    }
    if (accept_kw("SKIP")) o.skip = count_literal("SKIP");
    if (accept_kw("LIMIT")) o.limit = count_literal("LIMIT");
    return o;
  }

  // -- patterns ------------------------------------------------------------
  NodePattern node_pattern() {
    NodePattern n;
    n.pos = expect(Tok::LParen, "'('").pos;
    if (at_identifier()) {
      n.var = identifier("variable");
    } else {
      n.var = fresh_name();
      n.anonymous = true;
    }
    while (accept(Tok::Colon)) n.labels.push_back(identifier("label"));
    if (cur().kind == Tok::LBrace) {
      fail(ErrorKind::UnsupportedFeature, "inline property maps are not supported; use WHERE",
           cur().pos);
    }
    expect(Tok::RParen, "')'");
    return n;
  }

  uint32_t bound(const Token& t) {
    const int64_t v = parse_int(t);
    if (v > UINT32_MAX) fail(ErrorKind::SyntaxError, "hop bound too large", t.pos);
    return static_cast<uint32_t>(v);
  }

  Range range() {
    Range r;
    const SourcePos pos = cur().pos;
    if (cur().kind == Tok::Integer) {
      r.low = bound(next());
      if (accept(Tok::DotDot)) {
        if (cur().kind == Tok::Integer) r.up = bound(next());
      } else {
        r.up = r.low;
      }
    } else if (accept(Tok::DotDot)) {
      if (cur().kind != Tok::Integer) {
        fail(ErrorKind::SyntaxError, "expected an upper bound after '..'", cur().pos);
      }
      r.up = bound(next());
    }
    if (r.up && *r.up < r.low) fail(ErrorKind::SyntaxError, "upper hop bound below lower bound", pos);
    return r;
  }

  RelPattern rel_pattern() {
    RelPattern r;
    r.pos = cur().pos;
    bool left_arrow = false;
    if (accept(Tok::Lt)) left_arrow = true;
    expect(Tok::Minus, "'-'");
    bool named = false;
    if (accept(Tok::LBracket)) {
      if (at_identifier()) {
        r.var = identifier("variable");
        named = true;
      }
      if (accept(Tok::Colon)) {
        r.types.push_back(identifier("relationship type"));
        while (accept(Tok::Pipe)) {
          accept(Tok::Colon);
          r.types.push_back(identifier("relationship type"));
        }
      }
      if (accept(Tok::Star)) r.range = range();
      if (cur().kind == Tok::LBrace) {
        fail(ErrorKind::UnsupportedFeature, "inline property maps are not supported; use WHERE",
             cur().pos);
      }
      expect(Tok::RBracket, "']'");
    }
    if (!named) {
      r.var = fresh_name();
      r.anonymous = true;
    }
    expect(Tok::Minus, "'-'");
    bool right_arrow = accept(Tok::Gt);
    if (left_arrow && right_arrow) {
      fail(ErrorKind::SyntaxError, "relationship cannot point both ways", r.pos);
    }
    r.direction = left_arrow ? Direction::In : right_arrow ? Direction::Out : Direction::Both;
    return r;
  }

  bool at_relationship() const {
    if (cur().kind == Tok::Minus) {
      return look(1).kind == Tok::LBracket || look(1).kind == Tok::Minus;
    }
    return cur().kind == Tok::Lt && look(1).kind == Tok::Minus &&
           (look(2).kind == Tok::LBracket || look(2).kind == Tok::Minus);
  }

  PatternAst pattern() {
    PatternAst p;
    p.pos = cur().pos;
    p.nodes.push_back(node_pattern());
    while (at_relationship()) {
      p.rels.push_back(rel_pattern());
      p.nodes.push_back(node_pattern());
    }
    return p;
  }

  // True if the tokens at the cursor spell "(var? (:Label)*)" followed by a
  // relationship, i.e. a pattern predicate rather than a parenthesized expression.
  bool at_pattern_predicate() const {
    size_t k = 0;
    if (look(k).kind != Tok::LParen) return false;
    ++k;
    if (look(k).kind == Tok::Ident || look(k).kind == Tok::QuotedIdent) ++k;
    while (look(k).kind == Tok::Colon) {
      if (look(k + 1).kind != Tok::Ident && look(k + 1).kind != Tok::QuotedIdent) return false;
      k += 2;
    }
    if (look(k).kind != Tok::RParen) return false;
    ++k;
    if (look(k).kind == Tok::Minus) {
      return look(k + 1).kind == Tok::LBracket || look(k + 1).kind == Tok::Minus;
    }
    return look(k).kind == Tok::Lt && look(k + 1).kind == Tok::Minus &&
           (look(k + 2).kind == Tok::LBracket || look(k + 2).kind == Tok::Minus);
  }

  // -- expressions ---------------------------------------------------------
  ExprPtr expression() { return or_expr(); }

  ExprPtr or_expr() {
    ExprPtr lhs = and_expr();
    while (true) {
      if (is_kw("XOR")) fail(ErrorKind::UnsupportedFeature, "XOR is not supported", cur().pos);
      if (!is_kw("OR")) return lhs;
      SourcePos pos = next().pos;
      lhs = make_or(lhs, and_expr(), pos);
    }
  }

  ExprPtr and_expr() {
    ExprPtr lhs = not_expr();
    while (is_kw("AND")) {
      SourcePos pos = next().pos;
      lhs = make_and(lhs, not_expr(), pos);
    }
    return lhs;
  }

  ExprPtr not_expr() {
    if (!is_kw("NOT")) return comparison();
    SourcePos pos = next().pos;
    ExprPtr arg = not_expr();
    if (arg->kind == Expr::Kind::PatternPredicate && !arg->negated) {
      auto neg = std::make_shared<Expr>(*arg);
      neg->negated = true;
      neg->pos = pos;
      return neg;
    }
    return make_not(arg, pos);
  }

  void reject_predicate_keywords() const {
    static const char* const kws[] = {"IS", "IN", "STARTS", "ENDS", "CONTAINS"};
    for (const char* kw : kws) {
      if (is_kw(kw)) {
        fail(ErrorKind::UnsupportedFeature, std::string(kw) + " predicates are not supported",
             cur().pos);
      }
    }
    if (cur().kind == Tok::RegexMatch) {
      fail(ErrorKind::UnsupportedFeature, "regular expression matching is not supported", cur().pos);
    }
  }

  std::optional<CompareOp> compare_op() const {
    switch (cur().kind) {
      case Tok::Eq: return CompareOp::Eq;
      case Tok::Ne: return CompareOp::Ne;
      case Tok::Lt: return CompareOp::Lt;
      case Tok::Le: return CompareOp::Le;
      case Tok::Gt: return CompareOp::Gt;
      case Tok::Ge: return CompareOp::Ge;
      default: return std::nullopt;
    }
  }

  ExprPtr comparison() {
    ExprPtr lhs = additive();
    while (true) {
      reject_predicate_keywords();
      auto op = compare_op();
      if (!op) return lhs;
      SourcePos pos = next().pos;
      lhs = make_compare(*op, lhs, additive(), pos);
    }
  }

  ExprPtr additive() {
    ExprPtr lhs = multiplicative();
    while (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
      const Token& t = next();
      lhs = make_arith(t.kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub, lhs, multiplicative(), t.pos);
    }
    return lhs;
  }

  ExprPtr multiplicative() {
    ExprPtr lhs = unary();
    while (true) {
      if (cur().kind == Tok::Percent || cur().kind == Tok::Caret) {
        fail(ErrorKind::UnsupportedFeature, "operator '" + cur().text + "' is not supported",
             cur().pos);
      }
      if (cur().kind != Tok::Star && cur().kind != Tok::Slash) return lhs;
      const Token& t = next();
      lhs = make_arith(t.kind == Tok::Star ? ArithOp::Mul : ArithOp::Div, lhs, unary(), t.pos);
    }
  }

  ExprPtr unary() {
    if (cur().kind == Tok::Plus) {
      next();
      return unary();
    }
    if (cur().kind != Tok::Minus) return postfix();
    SourcePos pos = next().pos;
    ExprPtr arg = unary();
    if (arg->kind == Expr::Kind::Literal && arg->literal.is<double>()) {
      return make_literal(Value{-arg->literal.as<double>()}, pos);
    }
    if (arg->kind == Expr::Kind::Literal && arg->literal.is<int64_t>() &&
        arg->literal.as<int64_t>() != INT64_MIN) {
      return make_literal(Value{-arg->literal.as<int64_t>()}, pos);
    }
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Negate;
    e->pos = pos;
    e->args = {arg};
    return e;
  }

  ExprPtr postfix() {
    ExprPtr base = atom();
    if (cur().kind == Tok::Dot) {
      const SourcePos pos = next().pos;
      if (base->kind != Expr::Kind::Variable) {
        fail(ErrorKind::UnsupportedFeature, "property access is only supported on variables", pos);
      }
      std::string key = identifier("property key");
      if (cur().kind == Tok::Dot) {
        fail(ErrorKind::UnsupportedFeature, "nested property access is not supported", cur().pos);
      }
      return make_property(base->name, key, base->pos);
    }
    if (cur().kind == Tok::Colon) {
      if (base->kind != Expr::Kind::Variable) {
        fail(ErrorKind::SyntaxError, "label predicates apply to variables", cur().pos);
      }
      std::vector<std::string> labels;
      while (accept(Tok::Colon)) labels.push_back(identifier("label"));
      return make_labels(base->name, std::move(labels), base->pos);
    }
    if (cur().kind == Tok::LBracket) {
      fail(ErrorKind::UnsupportedFeature, "subscripts are not supported", cur().pos);
    }
    return base;
  }

  static int64_t parse_int(const Token& t) {
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      fail(ErrorKind::SyntaxError, "integer literal out of range: " + t.text, t.pos);
    }
    return v;
  }

  ExprPtr aggregate_call(AggregateFn fn, SourcePos pos) {
    expect(Tok::LParen, "'('");
    if (is_kw("DISTINCT")) {
      fail(ErrorKind::UnsupportedFeature, "DISTINCT inside aggregates is not supported", cur().pos);
    }
    ExprPtr arg;
    if (cur().kind == Tok::Star) {
      if (fn != AggregateFn::Count) {
        fail(ErrorKind::SyntaxError, "only count accepts '*'", cur().pos);
      }
      next();
    } else {
      arg = expression();
    }
    expect(Tok::RParen, "')'");
    return make_aggregate(fn, arg, pos);
  }

  ExprPtr atom() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Integer: next(); return make_literal(Value{parse_int(t)}, t.pos);
      case Tok::Float: {
        next();
        double d = std::strtod(t.text.c_str(), nullptr);
        return make_literal(Value{d}, t.pos);
      }
      case Tok::String: next(); return make_literal(Value{t.text}, t.pos);
      case Tok::Dollar: fail(ErrorKind::UnsupportedFeature, "parameters are not supported", t.pos);
      case Tok::LBracket: fail(ErrorKind::UnsupportedFeature, "list literals are not supported", t.pos);
      case Tok::LBrace: fail(ErrorKind::UnsupportedFeature, "map literals are not supported", t.pos);
      case Tok::LParen: {
        if (at_pattern_predicate()) {
          auto e = std::make_shared<Expr>();
          e->kind = Expr::Kind::PatternPredicate;
          e->pos = t.pos;
          e->pattern = std::make_shared<PatternAst>(pattern());
          return e;
        }
        next();
        ExprPtr inner = expression();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::QuotedIdent: next(); return make_variable(t.text, t.pos);
      case Tok::Ident: break;
      default:
        fail(ErrorKind::SyntaxError, "expected an expression, found '" + describe(t) + "'", t.pos);
    }
    const std::string kw = upper(t.text);
    if (kw == "TRUE" || kw == "FALSE") {
      next();
      return make_literal(Value{kw == "TRUE"}, t.pos);
    }
    if (kw == "NULL") {
      next();
      return make_literal(Value{}, t.pos);
    }
    if (kw == "CASE") fail(ErrorKind::UnsupportedFeature, "CASE is not supported", t.pos);
    if (kw == "EXISTS") fail(ErrorKind::UnsupportedFeature, "EXISTS is not supported", t.pos);
    if (look(1).kind == Tok::LParen) {
      static const std::pair<const char*, AggregateFn> fns[] = {
          {"COUNT", AggregateFn::Count}, {"SUM", AggregateFn::Sum}, {"AVG", AggregateFn::Avg},
          {"MIN", AggregateFn::Min},     {"MAX", AggregateFn::Max}, {"COLLECT", AggregateFn::Collect}};
      for (const auto& [name, fn] : fns) {
        if (kw == name) {
          next();
          return aggregate_call(fn, t.pos);
        }
      }
      fail(ErrorKind::UnsupportedFeature, "unknown function '" + t.text + "'", t.pos);
    }
    next();
    return make_variable(t.text, t.pos);
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
  uint32_t anon_ = 0;
};

}  // namespace

QueryAst parse_query(std::string_view text) { return Parser(text).query(); }

ExprPtr parse_expression(std::string_view text) { return Parser(text).standalone_expression(); }

}  // namespace graphivm::cypher

#include <cctype>
#include <set>

#include "sigforge/surface.hpp"

namespace sigforge::surface {

RawPtr mk(RawKind k, Span sp, RawPtr a, RawPtr b, RawPtr c) {
  auto e = std::make_shared<RawExpr>();
  e->kind = k;
  e->span = sp;
  e->a = std::move(a);
  e->b = std::move(b);
  e->c = std::move(c);
  return e;
}

RawPtr mk_var(std::string name, Span sp) {
  auto e = std::make_shared<RawExpr>();
  e->kind = RawKind::Var;
  e->name = std::move(name);
  e->span = sp;
  return e;
}

RawPtr mk_binder(RawKind k, std::string name, RawPtr dom, RawPtr cod, Span sp) {
  auto e = std::make_shared<RawExpr>();
  e->kind = k;
  e->name = std::move(name);
  e->a = std::move(dom);
  e->b = std::move(cod);
  e->span = sp;
  return e;
}

namespace {

enum class Tok { Ident, LParen, RParen, Colon, Comma, Dot, Arrow, ExtArrow, SmallExtArrow, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
  int col = 0;
  bool first_on_line = false;
};

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}
bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int col = 1;
  bool line_start = true;
  auto push = [&](Tok k, std::size_t b, std::size_t e, int c) {
    Token t;
    t.kind = k;
    t.text = std::string(src.substr(b, e - b));
    t.span = {b, e};
    t.col = c;
    t.first_on_line = line_start;
    line_start = false;
    out.push_back(std::move(t));
  };
  auto is_unicode_arrow = [&](std::size_t at) {
    return src.substr(at, 3) == "\xE2\x86\x92";
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '\n') {
      ++i;
      col = 1;
      line_start = true;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    std::size_t b = i;
    int c0 = col;
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      i += 2;
      col += 2;
      push(Tok::Arrow, b, i, c0);
      continue;
    }
    if (is_unicode_arrow(i)) {
      i += 3;
      col += 1;
      push(Tok::Arrow, b, i, c0);
      continue;
    }
    if (c == '*' && i + 1 < src.size() && src[i + 1] == '>') {
      i += 2;
      col += 2;
      push(Tok::ExtArrow, b, i, c0);
      continue;
    }
    if (c == '~' && i + 1 < src.size() && src[i + 1] == '>') {
      i += 2;
      col += 2;
      push(Tok::SmallExtArrow, b, i, c0);
      continue;
    }
    Tok single = Tok::End;
    switch (c) {
      case '(': single = Tok::LParen; break;
      case ')': single = Tok::RParen; break;
      case ':': single = Tok::Colon; break;
      case ',': single = Tok::Comma; break;
      case '.': single = Tok::Dot; break;
      default: break;
    }
    if (single != Tok::End) {
      ++i;
      ++col;
      push(single, b, i, c0);
      continue;
    }
    if (ident_start(c)) {
      while (i < src.size() && ident_char(static_cast<unsigned char>(src[i])) && !is_unicode_arrow(i)) {
        if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) ++col;
        ++i;
      }
      if ((static_cast<unsigned char>(src[b]) & 0xC0) == 0x80)
        fail(Code::Lex, "invalid UTF-8 sequence", {b, i});
      // profile names are the only identifiers containing a dash
      if (src.substr(b, i - b) == "hiit" && i + 1 < src.size() && src[i] == '-' &&
          std::isalpha(static_cast<unsigned char>(src[i + 1]))) {
        ++i;
        ++col;
        while (i < src.size() && ident_char(static_cast<unsigned char>(src[i]))) {
          ++i;
          ++col;
        }
      }
      push(Tok::Ident, b, i, c0);
      continue;
    }
    std::string shown(1, static_cast<char>(c));
    fail(Code::Lex, "unexpected character '" + shown + "'", {b, b + 1});
  }
  Token end;
  end.kind = Tok::End;
  end.span = {src.size(), src.size()};
  end.first_on_line = true;
  end.col = 0;
  out.push_back(end);
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {
      "profile", "signature", "where", "extern", "iota", "ι", "U", "El", "Id", "ID", "refl",
      "J", "Jbeta", "Top", "tt", "Sg", "proj1", "proj2", "reflect", "Type"};
  return k;
}

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SigFile file() {
    SigFile f;
    if (!is_word("profile")) fail(Code::ProfileMissing, "file must start with a 'profile' header", peek().span);
    next();
    Token pn = expect_ident("profile name");
    std::string pname = pn.text;
    if (!parse_profile_name(pname, f.profile)) {
      fail(Code::Parse, "unknown profile '" + pname + "' (expected simple, fqii, hiit-strict, hiit-weak)", pn.span);
    }
    std::set<std::string> names;
    while (is_word("extern")) {
      Token kw = next();
      Token nm = expect_ident("extern name");
      expect(Tok::Colon, "':'");
      ExternDecl d;
      d.name = nm.text;
      if (is_word("Type")) {
        next();
        d.is_type = true;
      } else {
        d.is_type = false;
        std::vector<std::string> parts;
        parts.push_back(expect_ident("extern type").text);
        while (peek().kind == Tok::Arrow) {
          next();
          parts.push_back(expect_ident("extern type").text);
        }
        d.result_type = parts.back();
        parts.pop_back();
        d.arg_types = std::move(parts);
      }
      d.span = {kw.span.begin, toks_[pos_ - 1].span.end};
      if (!names.insert(d.name).second) fail(Code::DupName, "duplicate name '" + d.name + "'", nm.span);
      f.externs.push_back(std::move(d));
    }
    if (!is_word("signature")) fail(Code::Parse, "expected 'signature'", peek().span);
    next();
    f.name = expect_ident("signature name").text;
    if (!is_word("where")) fail(Code::Parse, "expected 'where'", peek().span);
    next();
    if (peek().kind == Tok::End) return f;
    decl_col_ = peek().col;
    while (peek().kind != Tok::End) {
      Token first = peek();
      if (!first.first_on_line || first.col != decl_col_)
        fail(Code::Parse, "declaration must start a new line at the block's indentation", first.span);
      in_decl_ = false;
      Token nm = expect_ident("entry name");
      if (keywords().count(nm.text)) fail(Code::Parse, "keyword '" + nm.text + "' cannot name an entry", nm.span);
      in_decl_ = true;
      expect(Tok::Colon, "':'");
      RawPtr ty = expr();
      if (!stop()) fail(Code::Parse, "unexpected token '" + peek().text + "'", peek().span);
      Entry e;
      e.name = nm.text;
      e.ty = ty;
      e.span = {nm.span.begin, ty->span.end};
      if (!names.insert(e.name).second) fail(Code::DupName, "duplicate name '" + e.name + "'", nm.span);
      f.entries.push_back(std::move(e));
    }
    return f;
  }

  RawPtr whole_expr() {
    RawPtr e = expr();
    if (peek().kind != Tok::End) fail(Code::Parse, "unexpected token '" + peek().text + "'", peek().span);
    return e;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int decl_col_ = 0;
  bool in_decl_ = false;

  // A token belongs to the current declaration unless it starts a line at or
  // left of the declaration column.
  bool stop() const {
    const Token& t = toks_[pos_];
    if (t.kind == Tok::End) return true;
    return in_decl_ && t.first_on_line && t.col <= decl_col_;
  }
  const Token& peek(std::size_t k = 0) const {
    std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  Token next() { return toks_[pos_++]; }
  bool is_word(std::string_view w) const {
    return peek().kind == Tok::Ident && peek().text == w;
  }
  [[noreturn]] void unexpected(std::string_view what) {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    fail(Code::Parse, "expected " + std::string(what) + ", got " + got, t.span);
  }
  Token expect(Tok k, std::string_view what) {
    if (stop() && in_decl_) unexpected(what);
    if (peek().kind != k) unexpected(what);
    return next();
  }
  Token expect_ident(std::string_view what) {
    if (peek().kind != Tok::Ident) unexpected(what);
    if (in_decl_ && stop()) unexpected(what);
    return next();
  }
  bool at(Tok k) const { return !stop() && peek().kind == k; }
  bool at_word(std::string_view w) const { return !stop() && is_word(w); }

  bool is_arrow() const {
    return at(Tok::Arrow) || at(Tok::ExtArrow) || at(Tok::SmallExtArrow);
  }
  static RawKind arrow_kind(Tok t) {
    switch (t) {
      case Tok::Arrow: return RawKind::PiInt;
      case Tok::ExtArrow: return RawKind::PiExt;
      default: return RawKind::PiSmallExt;
    }
  }

  // '(' ident+ ':' ...
  bool binder_ahead() const {
    if (!at(Tok::LParen)) return false;
    std::size_t k = 1;
    if (peek(k).kind != Tok::Ident || keywords().count(peek(k).text)) return false;
    while (peek(k).kind == Tok::Ident && !keywords().count(peek(k).text)) ++k;
    return peek(k).kind == Tok::Colon;
  }

  RawPtr expr() {
    if (binder_ahead()) {
      Token lp = next();
      std::vector<Token> names;
      while (peek().kind == Tok::Ident) names.push_back(next());
      expect(Tok::Colon, "':'");
      RawPtr dom = expr();
      expect(Tok::RParen, "')'");
      if (!is_arrow()) unexpected("'->', '*>' or '~>' after binder");
      Tok ak = next().kind;
      RawPtr cod = expr();
      RawPtr out = cod;
      for (std::size_t i = names.size(); i-- > 0;) {
        Span sp{i == 0 ? lp.span.begin : names[i].span.begin, cod->span.end};
        out = mk_binder(arrow_kind(ak), names[i].text, dom, out, sp);
      }
      return out;
    }
    RawPtr lhs = app();
    if (is_arrow()) {
      Tok ak = next().kind;
      RawPtr cod = expr();
      Span sp{lhs->span.begin, cod->span.end};
      if (ak == Tok::Arrow && lhs->kind == RawKind::Iota) return mk(RawKind::SArr, sp, cod);
      return mk_binder(arrow_kind(ak), "_", lhs, cod, sp);
    }
    return lhs;
  }

  bool atom_ahead() const {
    if (stop()) return false;
    const Token& t = peek();
    if (t.kind == Tok::LParen) return true;
    if (t.kind != Tok::Ident) return false;
    static const std::set<std::string> heads = {"El", "Id", "ID", "proj1", "proj2", "reflect", "Sg", "J", "Jbeta",
                                                "profile", "signature", "where", "extern", "Type"};
    return !heads.count(t.text);
  }

  RawPtr app() {
    RawPtr h = head();
    while (atom_ahead()) {
      RawPtr arg = atom();
      h = mk(RawKind::App, {h->span.begin, arg->span.end}, h, arg);
    }
    return h;
  }

  RawPtr head() {
    if (stop()) unexpected("expression");
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      std::size_t b = t.span.begin;
      auto one = [&](RawKind k) {
        next();
        RawPtr x = atom();
        return mk(k, {b, x->span.end}, x);
      };
      auto two = [&](RawKind k) {
        next();
        RawPtr x = atom();
        RawPtr y = atom();
        return mk(k, {b, y->span.end}, x, y);
      };
      if (t.text == "El") return one(RawKind::El);
      if (t.text == "proj1") return one(RawKind::Proj1);
      if (t.text == "proj2") return one(RawKind::Proj2);
      if (t.text == "reflect") return one(RawKind::Reflect);
      if (t.text == "Id") return two(RawKind::Id);
      if (t.text == "ID") return two(RawKind::ID);
      if (t.text == "Sg") {
        next();
        expect(Tok::LParen, "'('");
        Token nm = expect_ident("binder name");
        expect(Tok::Colon, "':'");
        RawPtr dom = expr();
        expect(Tok::RParen, "')'");
        RawPtr body = atom();
        return mk_binder(RawKind::Sg, nm.text, dom, body, {b, body->span.end});
      }
      if (t.text == "J" || t.text == "Jbeta") {
        RawKind k = t.text == "J" ? RawKind::J : RawKind::JBeta;
        next();
        expect(Tok::LParen, "'('");
        Token x = expect_ident("motive binder");
        Token p = expect_ident("motive binder");
        expect(Tok::Dot, "'.'");
        RawPtr mot = expr();
        expect(Tok::RParen, "')'");
        RawPtr pr = atom();
        RawPtr q = atom();
        auto e = std::make_shared<RawExpr>();
        e->kind = k;
        e->name = x.text;
        e->name2 = p.text;
        e->a = mot;
        e->b = pr;
        e->c = q;
        e->span = {b, q->span.end};
        return e;
      }
    }
    return atom();
  }

  RawPtr atom() {
    if (stop()) unexpected("expression");
    Token t = peek();
    if (t.kind == Tok::LParen) {
      next();
      RawPtr e = expr();
      if (at(Tok::Comma)) {
        next();
        RawPtr u = expr();
        Token rp = expect(Tok::RParen, "')'");
        return mk(RawKind::Pair, {t.span.begin, rp.span.end}, e, u);
      }
      Token rp = expect(Tok::RParen, "')'");
      // keep the parenthesised node but widen nothing: spans stay on the inner node
      (void)rp;
      return e;
    }
    if (t.kind != Tok::Ident) unexpected("expression");
    next();
    if (t.text == "iota" || t.text == "ι") return mk(RawKind::Iota, t.span);
    if (t.text == "U") return mk(RawKind::U, t.span);
    if (t.text == "Top") return mk(RawKind::Top, t.span);
    if (t.text == "tt") return mk(RawKind::Tt, t.span);
    if (t.text == "refl") return mk(RawKind::Refl, t.span);
    if (keywords().count(t.text)) fail(Code::Parse, "unexpected keyword '" + t.text + "'", t.span);
    return mk_var(t.text, t.span);
  }
};

}  // namespace

SigFile parse_file(std::string_view source) {
  Parser p(lex(source));
  return p.file();
}

RawPtr parse_expr(std::string_view source) {
  Parser p(lex(source));
  return p.whole_expr();
}

}  // namespace sigforge::surface

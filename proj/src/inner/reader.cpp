#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "sigforge/inner.hpp"

namespace sigforge::inner {

namespace {

struct Tok {
  std::string text;  // empty at end of input
  std::size_t pos = 0;
  bool ident = false;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"Set",  "Set1",   "Ty0",    "U0",  "U1",    "Top",   "tt",
                                          "refl", "tr",     "ap",     "apd", "J",     "funext", "happly",
                                          "inv",  "the",  "proj1",  "proj2",  "def", "postulate"};
  return k;
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Tok> lex(std::string_view s, std::string* title) {
  std::vector<Tok> out;
  std::size_t i = 0;
  bool first_comment = true;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (s.substr(i, 2) == "--" && (i + 2 >= s.size() || s[i + 2] != '>')) {
      std::size_t e = s.find('\n', i);
      if (e == std::string_view::npos) e = s.size();
      if (title && first_comment && out.empty()) {
        std::string_view body = s.substr(i + 2, e - i - 2);
        if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
        *title = std::string(body);
        first_comment = false;
      }
      i = e;
      continue;
    }
    if (ident_char(c)) {
      std::size_t b = i;
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({std::string(s.substr(b, i - b)), b, true});
      continue;
    }
    static const char* multi[] = {"->", "==", ":="};
    bool done = false;
    for (const char* m : multi) {
      if (s.substr(i, 2) == m) {
        out.push_back({m, i, false});
        i += 2;
        done = true;
        break;
      }
    }
    if (done) continue;
    if (std::string_view("(){}:*\\,=@").find(c) == std::string_view::npos)
      fail(Code::Parse, std::string("unexpected character '") + c + "'", {i, i + 1});
    out.push_back({std::string(1, c), i, false});
    ++i;
  }
  out.push_back({"", s.size(), false});
  return out;
}

struct Reader {
  std::vector<Tok> toks;
  std::size_t i = 0;

  const Tok& peek(std::size_t k = 0) const { return toks[std::min(i + k, toks.size() - 1)]; }
  bool is(const char* s, std::size_t k = 0) const { return peek(k).text == s; }
  bool at_end() const { return peek().text.empty(); }

  [[noreturn]] void error(const std::string& what) const {
    const Tok& t = peek();
    fail(Code::Parse, what + (t.text.empty() ? " at end of input" : " at '" + t.text + "'"),
         {t.pos, t.pos + t.text.size()});
  }

  void expect(const char* s) {
    if (!is(s)) error(std::string("expected '") + s + "'");
    ++i;
  }

  bool is_name(std::size_t k = 0) const { return peek(k).ident && !keywords().count(peek(k).text); }

  std::string name() {
    if (!is_name()) error("expected a name");
    return toks[i++].text;
  }

  // '(' name ':' opens a binder
  bool binder_ahead(const char* open) const { return is(open) && is_name(1) && is(":", 2); }

  T expr() {
    if (is("\\")) {
      ++i;
      bool imp = false;
      std::string x;
      T dom;
      if (binder_ahead("(")) {
        ++i;
        x = name();
        expect(":");
        dom = expr();
        expect(")");
      } else if (is("{")) {
        ++i;
        x = name();
        expect("}");
        imp = true;
      } else {
        x = name();
      }
      expect("->");
      return lam(x, expr(), dom, imp);
    }
    if (binder_ahead("{")) {
      ++i;
      std::string x = name();
      expect(":");
      T A = expr();
      expect("}");
      expect("->");
      return pi(x, A, expr(), true);
    }
    if (binder_ahead("(")) {
      ++i;
      std::string x = name();
      expect(":");
      T A = expr();
      expect(")");
      if (is("->")) {
        ++i;
        return pi(x, A, expr());
      }
      expect("*");
      return sigma(x, A, sigma_rhs());
    }
    T lhs = eqn();
    if (is("->")) {
      ++i;
      return arrow(lhs, expr());
    }
    return lhs;
  }

  T sigma_rhs() {
    if (binder_ahead("(")) {
      std::size_t save = i;
      ++i;
      std::string x = name();
      expect(":");
      T A = expr();
      expect(")");
      if (is("*")) {
        ++i;
        return sigma(x, A, sigma_rhs());
      }
      i = save;
    }
    return comp_level();
  }

  T eqn() {
    T l = comp_level();
    if (is("=") || is("==")) {
      EqKind k = is("==") ? EqKind::Strict : EqKind::Path;
      ++i;
      T r = comp_level();
      return eq(k, nullptr, l, r);
    }
    return l;
  }

  T comp_level() {
    T l = app_level();
    while (is("@")) {
      ++i;
      l = comp(l, app_level());
    }
    return l;
  }

  bool atom_start() const {
    const Tok& t = peek();
    if (t.text.empty()) return false;
    if (t.text == "(") return true;
    if (t.ident) {
      static const std::set<std::string> atoms = {"Set", "Set1", "Ty0", "U0", "U1", "Top", "tt", "refl"};
      return !keywords().count(t.text) || atoms.count(t.text);
    }
    return false;
  }

  T app_level() {
    const std::string& w = peek().text;
    auto args = [&](int n) {
      ++i;
      std::vector<T> xs;
      for (int k = 0; k < n; ++k) xs.push_back(atom());
      return xs;
    };
    T f;
    if (w == "proj1") f = proj1(args(1)[0]);
    else if (w == "proj2") f = proj2(args(1)[0]);
    else if (w == "tr") { auto x = args(3); f = tr(x[0], x[1], x[2]); }
    else if (w == "ap") { auto x = args(2); f = ap(x[0], x[1]); }
    else if (w == "apd") { auto x = args(2); f = apd(x[0], x[1]); }
    else if (w == "J") { auto x = args(3); f = jay(x[0], x[1], x[2]); }
    else if (w == "funext") f = funext(args(1)[0]);
    else if (w == "happly") { auto x = args(2); f = happly(x[0], x[1]); }
    else if (w == "inv") f = inv(args(1)[0]);
    else if (w == "the") { auto x = args(2); f = the(x[0], x[1]); }
    else f = atom();
    for (;;) {
      if (is("{") && !binder_ahead("{")) {
        ++i;
        T a = expr();
        expect("}");
        f = app(f, a, true);
      } else if (atom_start()) {
        f = app(f, atom());
      } else {
        return f;
      }
    }
  }

  T atom() {
    const Tok& t = peek();
    if (t.text == "(") {
      ++i;
      T a = expr();
      if (is(",")) {
        ++i;
        T b = expr();
        expect(")");
        return pair(a, b);
      }
      expect(")");
      return a;
    }
    if (!t.ident) error("expected a term");
    static const std::pair<const char*, Sort> sorts[] = {
        {"Set", Sort::Set}, {"Set1", Sort::Set1}, {"Ty0", Sort::Ty0}, {"U0", Sort::U0}, {"U1", Sort::U1}};
    for (const auto& [n, s] : sorts)
      if (t.text == n) {
        ++i;
        return sort(s);
      }
    if (t.text == "Top") { ++i; return unit(); }
    if (t.text == "tt") { ++i; return tt(); }
    if (t.text == "refl") { ++i; return refl(EqKind::Unknown); }
    return var(name());
  }

  Sort sort_name() {
    T s = atom();
    if (s->k != K::Sort) error("expected a sort");
    return s->sort;
  }

  std::vector<Param> params() {
    std::vector<Param> ps;
    while (binder_ahead("(") || binder_ahead("{")) {
      bool imp = is("{");
      ++i;
      std::string x = name();
      expect(":");
      T A = expr();
      expect(imp ? "}" : ")");
      ps.push_back({x, A, imp});
    }
    return ps;
  }
};

}  // namespace

T read_term(std::string_view src) {
  Reader r{lex(src, nullptr)};
  T t = r.expr();
  if (!r.at_end()) r.error("unexpected trailing input");
  return t;
}

Unit read_unit(std::string_view src) {
  Unit u;
  Reader r{lex(src, &u.title)};
  while (!r.at_end()) {
    if (r.is("postulate")) {
      ++r.i;
      std::string x = r.name();
      r.expect(":");
      u.postulates.push_back({x, r.expr(), false});
    } else if (r.is("def")) {
      ++r.i;
      Def d;
      d.name = r.name();
      d.params = r.params();
      r.expect(":");
      d.sort = r.sort_name();
      r.expect(":=");
      d.body = r.expr();
      u.defs.push_back(std::move(d));
    } else {
      r.error("expected 'postulate' or 'def'");
    }
  }
  return u;
}

}  // namespace sigforge::inner

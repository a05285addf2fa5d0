#include <string>

#include "sigforge/inner.hpp"

namespace sigforge::inner {

namespace {

// 0 binders, 1 equations, 2 composition, 3 application, 4 atoms
int level_of(const Term& t) {
  switch (t.k) {
    case K::Pi:
    case K::Lam:
    case K::Sigma:
      return 0;
    case K::Eq: return 1;
    case K::Comp: return 2;
    case K::App:
    case K::Proj1:
    case K::Proj2:
    case K::Tr:
    case K::Ap:
    case K::Apd:
    case K::J:
    case K::Funext:
    case K::Happly:
    case K::Inv:
    case K::The:
      return 3;
    default: return 4;
  }
}

const char* sort_name(Sort s, Style st) {
  bool a = st == Style::Ascii;
  switch (s) {
    case Sort::U0: return a ? "U0" : "U₀";
    case Sort::U1: return a ? "U1" : "U₁";
    case Sort::Ty0: return a ? "Ty0" : "Ty₀";
    case Sort::Set: return "Set";
    case Sort::Set1: return a ? "Set1" : "Set₁";
  }
  return "?";
}

struct Printer {
  Style st;
  const std::map<std::string, std::string>* display;
  std::string out;

  bool ascii() const { return st == Style::Ascii; }

  std::string name(const std::string& n) const {
    if (!ascii() && display) {
      auto it = display->find(n);
      if (it != display->end()) return it->second;
    }
    return n;
  }

  void at(const T& t, int lvl) {
    if (level_of(*t) < lvl) {
      out += "(";
      go(t);
      out += ")";
    } else {
      go(t);
    }
  }

  void kw(const char* a, const char* u, std::initializer_list<T> args) {
    out += ascii() ? a : u;
    for (const auto& x : args) {
      out += " ";
      at(x, 4);
    }
  }

  const char* arrow() const { return ascii() ? " -> " : " → "; }

  void go(const T& t) {
    switch (t->k) {
      case K::Var: out += name(t->name); return;
      case K::Sort: out += sort_name(t->sort, st); return;
      case K::Unit: out += ascii() ? "Top" : "⊤"; return;
      case K::Tt: out += "tt"; return;
      case K::Refl: out += "refl"; return;
      case K::Pi:
        if (t->implicit) {
          out += "{" + name(t->name) + " : ";
          go(t->a);
          out += "}";
        } else if (t->name == "_" || !occurs(t->name, t->b)) {
          at(t->a, 1);
        } else {
          out += "(" + name(t->name) + " : ";
          go(t->a);
          out += ")";
        }
        out += arrow();
        at(t->b, 0);
        return;
      case K::Lam:
        out += ascii() ? "\\" : "λ ";
        if (t->implicit) {
          out += "{" + name(t->name) + "}";
        } else if (t->a) {
          out += "(" + name(t->name) + " : ";
          go(t->a);
          out += ")";
        } else {
          out += name(t->name);
        }
        out += arrow();
        at(t->b, 0);
        return;
      case K::Sigma:
        if (ascii()) {
          out += "(" + name(t->name) + " : ";
          go(t->a);
          out += ") * ";
          if (t->b->k == K::Sigma) go(t->b);
          else at(t->b, 2);
        } else {
          out += "Σ ";
          at(t->a, 4);
          out += " λ " + name(t->name) + " → ";
          at(t->b, t->b->k == K::Sigma ? 0 : 1);
        }
        return;
      case K::Pair:
        out += "(";
        go(t->a);
        out += " , ";
        go(t->b);
        out += ")";
        return;
      case K::Eq:
        at(t->b, 2);
        if (t->eq == EqKind::Strict) out += ascii() ? " == " : " ≡ ";
        else out += " = ";
        at(t->c, 2);
        return;
      case K::Comp:
        at(t->a, 2);
        out += ascii() ? " @ " : " ∙ ";
        at(t->b, 3);
        return;
      case K::App:
        at(t->a, 3);
        if (t->implicit) {
          out += " {";
          go(t->b);
          out += "}";
        } else {
          out += " ";
          at(t->b, 4);
        }
        return;
      case K::Proj1: kw("proj1", "proj₁", {t->a}); return;
      case K::Proj2: kw("proj2", "proj₂", {t->a}); return;
      case K::Tr: kw("tr", "tr", {t->a, t->b, t->c}); return;
      case K::Ap: kw("ap", "ap", {t->a, t->b}); return;
      case K::Apd: kw("apd", "apd", {t->a, t->b}); return;
      case K::J: kw("J", "J", {t->a, t->b, t->c}); return;
      case K::Funext: kw("funext", "funext", {t->a}); return;
      case K::Happly: kw("happly", "happly", {t->a, t->b}); return;
      case K::The: kw("the", "the", {t->a, t->b}); return;
      case K::Inv:
        if (ascii()) {
          kw("inv", "inv", {t->a});
        } else {
          at(t->a, 4);
          out += " ⁻¹";
        }
        return;
    }
  }
};

}  // namespace

std::string print(const T& t, Style s, const std::map<std::string, std::string>* display) {
  Printer p{s, display, {}};
  p.go(t);
  return p.out;
}

std::string print_unit(const Unit& u, Style s) {
  const auto* d = &u.display;
  auto nm = [&](const std::string& n) {
    if (s == Style::Agda) {
      auto it = d->find(n);
      if (it != d->end()) return it->second;
    }
    return n;
  };
  std::string out = "-- " + u.title + "\n";
  if (!u.postulates.empty()) {
    out += "\n";
    if (s == Style::Ascii) {
      for (const auto& p : u.postulates) out += "postulate " + p.name + " : " + print(p.type, s, d) + "\n";
    } else {
      out += "postulate\n";
      for (const auto& p : u.postulates) out += "  " + nm(p.name) + " : " + print(p.type, s, d) + "\n";
    }
  }
  for (const auto& def : u.defs) {
    out += "\n";
    if (s == Style::Ascii) {
      out += "def " + def.name;
      for (const auto& p : def.params) {
        out += p.implicit ? " {" : " (";
        out += p.name + " : " + print(p.type, s, d);
        out += p.implicit ? "}" : ")";
      }
      out += std::string(" : ") + sort_name(def.sort, s) + " :=\n  " + print(def.body, s, d) + "\n";
    } else {
      out += nm(def.name) + " :";
      for (const auto& p : def.params) {
        out += p.implicit ? " {" : " (";
        out += nm(p.name) + " : " + print(p.type, s, d);
        out += p.implicit ? "} →" : ") →";
      }
      out += std::string(" ") + sort_name(def.sort, s) + "\n";
      out += nm(def.name);
      for (const auto& p : def.params) out += p.implicit ? " {" + nm(p.name) + "}" : " " + nm(p.name);
      out += " = " + print(def.body, s, d) + "\n";
    }
  }
  return out;
}

}  // namespace sigforge::inner

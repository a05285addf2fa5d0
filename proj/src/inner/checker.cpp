#include <functional>
#include <optional>
#include <unordered_map>
#include <string>
#include <vector>

#include "sigforge/inner.hpp"

namespace sigforge::inner {

namespace {

struct Val;
using V = std::shared_ptr<const Val>;

struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;

struct EnvNode {
  std::string name;
  V val;
  V type;
  Env next;
};

Env extend(Env e, std::string name, V val, V type) {
  return std::make_shared<const EnvNode>(EnvNode{std::move(name), std::move(val), std::move(type), std::move(e)});
}

const EnvNode* lookup(const Env& e, const std::string& n) {
  for (const EnvNode* p = e.get(); p; p = p->next.get())
    if (p->name == n) return p;
  return nullptr;
}

// Either a syntactic body under an environment or a host function.
struct Clo {
  Env env;
  std::string name;
  T body;
  std::function<V(V)> fn;
};

enum class VK { Ne, Sort, Pi, Lam, Sigma, Pair, Unit, Tt, Eq, Refl, Funext };
enum class EK { App, Proj1, Proj2, Tr, J, Ap, Apd, Happly, Inv, Comp };

struct Elim {
  EK k;
  V a, b;  // App: a arg; Tr: a motive, b element; J: a motive, b method; Ap/Apd: a function;
           // Happly: a argument; Comp: a left proof
};

struct Val {
  VK k = VK::Ne;
  int level = -1;  // Ne: variable head, or -1 with a stuck head value
  V head;
  std::vector<Elim> spine;
  Sort sort = Sort::Set;
  EqKind eq = EqKind::Path;
  bool implicit = false;
  std::string name;
  V a, b, c;  // Pi/Sigma: a domain; Eq: a type, b lhs, c rhs; Pair: a b; Funext: a
  Clo clo;
};

V mkv(Val v) { return std::make_shared<const Val>(std::move(v)); }

V vsort(Sort s) {
  Val v;
  v.k = VK::Sort;
  v.sort = s;
  return mkv(std::move(v));
}

V vsimple(VK k) {
  Val v;
  v.k = k;
  return mkv(std::move(v));
}

V vvar(int level) {
  Val v;
  v.k = VK::Ne;
  v.level = level;
  return mkv(std::move(v));
}

V veq(EqKind k, V A, V l, V r) {
  Val v;
  v.k = VK::Eq;
  v.eq = k;
  v.a = std::move(A);
  v.b = std::move(l);
  v.c = std::move(r);
  return mkv(std::move(v));
}

V vrefl(EqKind k) {
  Val v;
  v.k = VK::Refl;
  v.eq = k;
  return mkv(std::move(v));
}

V vbind(VK k, std::string name, V dom, Clo c, bool implicit = false) {
  Val v;
  v.k = k;
  v.name = std::move(name);
  v.a = std::move(dom);
  v.clo = std::move(c);
  v.implicit = implicit;
  return mkv(std::move(v));
}

Clo host(std::string name, std::function<V(V)> f) { return Clo{nullptr, std::move(name), nullptr, std::move(f)}; }

bool kinds_match(EqKind a, EqKind b) { return a == b || a == EqKind::Unknown || b == EqKind::Unknown; }

bool sort_le(Sort a, Sort b) { return static_cast<int>(a) <= static_cast<int>(b); }

class Checker {
public:
  std::vector<V> level_types;
  std::vector<std::string> level_names;
  std::vector<std::string> where;
  Env env;
  // Carrier types inferred for unannotated equations, as terms in their scope.
  std::unordered_map<const Term*, T> eq_types;

  // ------------------------------------------------------------ evaluation
  V eval(const Env& e, const T& t) {
    switch (t->k) {
      case K::Var: {
        const EnvNode* n = lookup(e, t->name);
        if (!n) error("unknown name '" + t->name + "'", t);
        return n->val;
      }
      case K::Sort: return vsort(t->sort);
      case K::Unit: return vsimple(VK::Unit);
      case K::Tt: return vsimple(VK::Tt);
      case K::Pi: return vbind(VK::Pi, t->name, eval(e, t->a), Clo{e, t->name, t->b, nullptr}, t->implicit);
      case K::Sigma: return vbind(VK::Sigma, t->name, eval(e, t->a), Clo{e, t->name, t->b, nullptr});
      case K::Lam: return vbind(VK::Lam, t->name, nullptr, Clo{e, t->name, t->b, nullptr}, t->implicit);
      case K::App: return apply(eval(e, t->a), eval(e, t->b));
      case K::Pair: {
        Val v;
        v.k = VK::Pair;
        v.a = eval(e, t->a);
        v.b = eval(e, t->b);
        return mkv(std::move(v));
      }
      case K::Proj1: return proj(eval(e, t->a), true);
      case K::Proj2: return proj(eval(e, t->a), false);
      case K::Eq: {
        V A;
        if (t->a) {
          A = eval(e, t->a);
        } else if (auto it = eq_types.find(t.get()); it != eq_types.end()) {
          A = eval(e, it->second);
        }
        return veq(t->eq, A, eval(e, t->b), eval(e, t->c));
      }
      case K::Refl: return vrefl(t->eq);
      case K::Tr: return do_tr(eval(e, t->a), eval(e, t->b), eval(e, t->c));
      case K::J: return do_j(eval(e, t->a), eval(e, t->b), eval(e, t->c));
      case K::Ap: return on_proof(eval(e, t->b), Elim{EK::Ap, eval(e, t->a), nullptr});
      case K::Apd: return on_proof(eval(e, t->b), Elim{EK::Apd, eval(e, t->a), nullptr});
      case K::Funext: {
        Val v;
        v.k = VK::Funext;
        v.a = eval(e, t->a);
        return mkv(std::move(v));
      }
      case K::Happly: {
        V p = eval(e, t->a);
        V x = eval(e, t->b);
        if (p->k == VK::Funext) return apply(p->a, x);
        return on_proof(p, Elim{EK::Happly, x, nullptr});
      }
      case K::Inv: return on_proof(eval(e, t->a), Elim{EK::Inv, nullptr, nullptr});
      case K::The: return eval(e, t->b);
      case K::Comp: {
        V p = eval(e, t->a);
        V q = eval(e, t->b);
        if (q->k == VK::Refl) return p;
        return stuck(q, Elim{EK::Comp, p, nullptr});
      }
    }
    error("unhandled term", t);
  }

  V inst(const Clo& c, V v) {
    if (c.fn) return c.fn(std::move(v));
    return eval(extend(c.env, c.name, std::move(v), nullptr), c.body);
  }

  static V stuck(const V& v, Elim e) {
    Val n;
    n.k = VK::Ne;
    if (v->k == VK::Ne) {
      n = *v;
    } else {
      n.head = v;
    }
    n.spine.push_back(std::move(e));
    return mkv(std::move(n));
  }

  V apply(const V& f, const V& x) {
    if (f->k == VK::Lam) return inst(f->clo, x);
    if (f->k == VK::Ne) return stuck(f, Elim{EK::App, x, nullptr});
    fail(Code::InnerType, "applying a value that is not a function");
  }

  V proj(const V& p, bool first) {
    if (p->k == VK::Pair) return first ? p->a : p->b;
    if (p->k == VK::Ne) return stuck(p, Elim{first ? EK::Proj1 : EK::Proj2, nullptr, nullptr});
    fail(Code::InnerType, "projecting from a value that is not a pair");
  }

  static V on_proof(const V& p, Elim e) {
    if (p->k == VK::Refl) return vrefl(p->eq);
    return stuck(p, std::move(e));
  }

  static V do_tr(const V& P, const V& p, const V& x) {
    if (p->k == VK::Refl) return x;
    return stuck(p, Elim{EK::Tr, P, x});
  }

  static V do_j(const V& P, const V& pr, const V& p) {
    if (p->k == VK::Refl) return pr;
    return stuck(p, Elim{EK::J, P, pr});
  }

  // ------------------------------------------------------------ read back
  std::string level_name(int l) const {
    if (l >= 0 && static_cast<std::size_t>(l) < level_names.size()) return level_names[static_cast<std::size_t>(l)];
    return "x" + std::to_string(l);
  }

  T quote(const V& v, int n) {
    auto under = [&](const Clo& c, const std::function<T(V)>& f) {
      std::string nm = c.name.empty() || c.name == "_" ? "x" : c.name;
      std::vector<std::string> saved = level_names;
      while (level_names.size() < static_cast<std::size_t>(n)) level_names.push_back("x" + std::to_string(level_names.size()));
      level_names.resize(static_cast<std::size_t>(n));
      level_names.push_back(nm);
      T r = f(vvar(n));
      level_names = std::move(saved);
      return std::make_pair(nm, r);
    };
    switch (v->k) {
      case VK::Sort: return sort(v->sort);
      case VK::Unit: return unit();
      case VK::Tt: return tt();
      case VK::Refl: return refl(v->eq);
      case VK::Pi:
      case VK::Sigma: {
        T dom = quote(v->a, n);
        auto [x, cod] = under(v->clo, [&](V var) { return quote(inst(v->clo, var), n + 1); });
        return v->k == VK::Pi ? pi(x, dom, cod, v->implicit) : sigma(x, dom, cod);
      }
      case VK::Lam: {
        auto [x, body] = under(v->clo, [&](V var) { return quote(inst(v->clo, var), n + 1); });
        return lam(x, body, nullptr, v->implicit);
      }
      case VK::Pair: return pair(quote(v->a, n), quote(v->b, n));
      case VK::Funext: return funext(quote(v->a, n));
      case VK::Eq:
        return eq(v->eq, v->a ? quote(v->a, n) : nullptr, v->b ? quote(v->b, n) : var("?"),
                  v->c ? quote(v->c, n) : var("?"));
      case VK::Ne: {
        T h = v->head ? quote(v->head, n) : var(level_name(v->level));
        for (const auto& e : v->spine) {
          switch (e.k) {
            case EK::App: h = app(h, quote(e.a, n)); break;
            case EK::Proj1: h = proj1(h); break;
            case EK::Proj2: h = proj2(h); break;
            case EK::Tr: h = tr(quote(e.a, n), h, quote(e.b, n)); break;
            case EK::J: h = jay(quote(e.a, n), quote(e.b, n), h); break;
            case EK::Ap: h = ap(quote(e.a, n), h); break;
            case EK::Apd: h = apd(quote(e.a, n), h); break;
            case EK::Happly: h = happly(h, quote(e.a, n)); break;
            case EK::Inv: h = inv(h); break;
            case EK::Comp: h = comp(quote(e.a, n), h); break;
          }
        }
        return h;
      }
    }
    return var("?");
  }

  std::string show(const V& v) { return print(quote(v, static_cast<int>(level_types.size())), Style::Ascii); }

  // ------------------------------------------------------------ neutral typing
  V ne_type(const V& v) {
    V ty;
    if (v->head) {
      if (v->head->k == VK::Refl) ty = veq(v->head->eq, nullptr, nullptr, nullptr);
      else return nullptr;
    } else if (v->level >= 0 && static_cast<std::size_t>(v->level) < level_types.size()) {
      ty = level_types[static_cast<std::size_t>(v->level)];
    } else {
      return nullptr;
    }
    Val cur = *v;
    cur.spine.clear();
    for (const auto& e : v->spine) {
      if (!ty) return nullptr;
      V here = mkv(cur);
      switch (e.k) {
        case EK::App: ty = ty->k == VK::Pi ? inst(ty->clo, e.a) : nullptr; break;
        case EK::Proj1: ty = ty->k == VK::Sigma ? ty->a : nullptr; break;
        case EK::Proj2: ty = ty->k == VK::Sigma ? inst(ty->clo, proj(here, true)) : nullptr; break;
        default:
          if (ty->k != VK::Eq) return nullptr;
          switch (e.k) {
            case EK::Tr: ty = ty->c ? apply(e.a, ty->c) : nullptr; break;
            case EK::J: ty = ty->c ? apply(apply(e.a, ty->c), here) : nullptr; break;
            case EK::Ap:
              ty = veq(ty->eq, nullptr, ty->b ? apply(e.a, ty->b) : nullptr, ty->c ? apply(e.a, ty->c) : nullptr);
              break;
            case EK::Happly:
              ty = veq(ty->eq, ty->a && ty->a->k == VK::Pi ? inst(ty->a->clo, e.a) : nullptr,
                       ty->b ? apply(ty->b, e.a) : nullptr, ty->c ? apply(ty->c, e.a) : nullptr);
              break;
            case EK::Inv: ty = veq(ty->eq, ty->a, ty->c, ty->b); break;
            case EK::Comp: ty = veq(ty->eq, ty->a, nullptr, ty->c); break;
            default: ty = veq(ty->eq, nullptr, nullptr, nullptr); break;
          }
      }
      cur.spine.push_back(e);
    }
    return ty;
  }

  bool strict_proof(const V& v) {
    if (v->k == VK::Refl) return v->eq == EqKind::Strict;
    if (v->k != VK::Ne) return false;
    V ty = ne_type(v);
    return ty && ty->k == VK::Eq && ty->eq == EqKind::Strict;
  }

  std::optional<Sort> sort_of_type(const V& A) {
    switch (A->k) {
      case VK::Sort: return sort_succ(A->sort);
      case VK::Unit: return Sort::U0;
      case VK::Pi:
      case VK::Sigma: {
        auto d = sort_of_type(A->a);
        if (!d) return std::nullopt;
        int l = push_level(A->clo.name, A->a);
        auto c = sort_of_type(inst(A->clo, vvar(l)));
        pop_level();
        if (!c) return std::nullopt;
        return sort_max(*d, *c);
      }
      case VK::Eq: {
        Sort s = Sort::Set;
        if (A->a) {
          auto sa = sort_of_type(A->a);
          if (sa) s = *sa;
        }
        return A->eq == EqKind::Strict ? sort_max(s, Sort::Set) : s;
      }
      case VK::Ne: {
        V ty = ne_type(A);
        if (ty && ty->k == VK::Sort) return ty->sort;
        return std::nullopt;
      }
      default: return std::nullopt;
    }
  }

  // ------------------------------------------------------------ conversion
  // Both sides are assumed to inhabit the same type.
  bool conv(const V& a, const V& b, int n) {
    if (!a || !b) return true;
    if (a->k == VK::Tt || b->k == VK::Tt) return true;
    if (strict_proof(a) || strict_proof(b)) return true;
    if (a->k == VK::Lam || b->k == VK::Lam) {
      V x = vvar(n);
      V fa = a->k == VK::Lam ? inst(a->clo, x) : apply(a, x);
      V fb = b->k == VK::Lam ? inst(b->clo, x) : apply(b, x);
      return conv(fa, fb, n + 1);
    }
    if (a->k == VK::Pair || b->k == VK::Pair) {
      if (a->k != VK::Pair && a->k != VK::Ne) return false;
      if (b->k != VK::Pair && b->k != VK::Ne) return false;
      return conv(proj(a, true), proj(b, true), n) && conv(proj(a, false), proj(b, false), n);
    }
    if (a->k != b->k) return false;
    switch (a->k) {
      case VK::Sort: return a->sort == b->sort;
      case VK::Unit:
      case VK::Refl:
        return true;
      case VK::Pi:
      case VK::Sigma: {
        if (!conv(a->a, b->a, n)) return false;
        V x = vvar(n);
        return conv(inst(a->clo, x), inst(b->clo, x), n + 1);
      }
      case VK::Eq:
        return kinds_match(a->eq, b->eq) && conv(a->a, b->a, n) && conv(a->b, b->b, n) && conv(a->c, b->c, n);
      case VK::Funext: return conv(a->a, b->a, n);
      case VK::Ne: {
        if (a->level != b->level || a->spine.size() != b->spine.size()) return false;
        if (a->head || b->head) {
          if (!a->head || !b->head || !conv(a->head, b->head, n)) return false;
        }
        for (std::size_t i = 0; i < a->spine.size(); ++i) {
          const Elim& x = a->spine[i];
          const Elim& y = b->spine[i];
          if (x.k != y.k || !conv(x.a, y.a, n) || !conv(x.b, y.b, n)) return false;
        }
        return true;
      }
      default: return false;
    }
  }

  bool conv(const V& a, const V& b) { return conv(a, b, static_cast<int>(level_types.size())); }

  // ------------------------------------------------------------ context
  int push_level(const std::string& name, V type) {
    int l = static_cast<int>(level_types.size());
    level_types.push_back(std::move(type));
    level_names.resize(static_cast<std::size_t>(l));
    level_names.push_back(name);
    return l;
  }

  void pop_level() {
    level_types.pop_back();
    if (level_names.size() > level_types.size()) level_names.resize(level_types.size());
  }

  struct Bind {
    Checker& c;
    Env saved;
    bool level;
    Bind(Checker& c, const std::string& name, V type) : c(c), saved(c.env), level(true) {
      int l = c.push_level(name, type);
      c.env = extend(c.env, name, vvar(l), std::move(type));
    }
    Bind(Checker& c, const std::string& name, V val, V type) : c(c), saved(c.env), level(false) {
      c.env = extend(c.env, name, std::move(val), std::move(type));
    }
    ~Bind() {
      c.env = saved;
      if (level) c.pop_level();
    }
  };

  struct At {
    Checker& c;
    At(Checker& c, std::string w) : c(c) { c.where.push_back(std::move(w)); }
    ~At() { c.where.pop_back(); }
  };

  [[noreturn]] void error(const std::string& msg, const T& t, const V& expected = nullptr, const V& actual = nullptr) {
    std::string path;
    for (const auto& w : where) path += (path.empty() ? "" : " / ") + w;
    Diagnostic d;
    d.code = Code::InnerType;
    d.message = (path.empty() ? "" : path + ": ") + msg + (t ? " in '" + print(t, Style::Ascii) + "'" : "");
    if (expected) d.expected = show(expected);
    if (actual) d.actual = show(actual);
    throw Error(std::move(d));
  }

  // ------------------------------------------------------------ checking
  Sort check_type(const T& A) {
    V s = infer(A);
    if (s->k != VK::Sort) error("expected a type", A, nullptr, s);
    return s->sort;
  }

  V eval(const T& t) { return eval(env, t); }

  // The type of f applied to a, for f inferable or an unannotated lambda.
  V infer_fun_at(const T& f, const V& A, const V& a) {
    if (f->k == K::Lam && !f->a) {
      Bind b(*this, f->name, a, A);
      return infer(f->b);
    }
    V F = infer(f);
    if (F->k != VK::Pi) error("expected a function", f, nullptr, F);
    if (!conv(F->a, A)) error("function domain does not match the path type", f, A, F->a);
    return inst(F->clo, a);
  }

  V expect_eq(const T& p) {
    V P = infer(p);
    if (P->k != VK::Eq) error("expected an equality proof", p, nullptr, P);
    return P;
  }

  V motive_type(const V& A, const std::string& x) {
    return vbind(VK::Pi, x, A, host(x, [](V) { return vsort(Sort::Set1); }));
  }

  V infer(const T& t) {
    switch (t->k) {
      case K::Var: {
        const EnvNode* n = lookup(env, t->name);
        if (!n) error("unknown name '" + t->name + "'", t);
        if (!n->type) error("name without a type '" + t->name + "'", t);
        return n->type;
      }
      case K::Sort: return vsort(sort_succ(t->sort));
      case K::Unit: return vsort(Sort::U0);
      case K::Tt: return vsimple(VK::Unit);
      case K::Pi:
      case K::Sigma: {
        Sort sa, sb;
        {
          At w(*this, "domain of " + t->name);
          sa = check_type(t->a);
        }
        Bind b(*this, t->name, eval(t->a));
        At w(*this, "under " + t->name);
        sb = check_type(t->b);
        return vsort(sort_max(sa, sb));
      }
      case K::Lam: {
        if (!t->a) error("cannot infer the type of an unannotated lambda", t);
        check_type(t->a);
        V A = eval(t->a);
        {
          Bind b(*this, t->name, A);
          infer(t->b);
        }
        Env saved = env;
        return vbind(VK::Pi, t->name, A, host(t->name, [this, saved, t, A](V v) {
                       Env keep = env;
                       env = saved;
                       V r;
                       {
                         Bind b(*this, t->name, v, A);
                         r = infer(t->b);
                       }
                       env = keep;
                       return r;
                     }),
                     t->implicit);
      }
      case K::App: {
        V F = infer(t->a);
        if (F->k != VK::Pi) error("applying a term that is not a function", t->a, nullptr, F);
        {
          At w(*this, "argument");
          check(t->b, F->a);
        }
        return inst(F->clo, eval(t->b));
      }
      case K::Proj1:
      case K::Proj2: {
        V S = infer(t->a);
        if (S->k != VK::Sigma) error("projecting from a term that is not a pair", t->a, nullptr, S);
        if (t->k == K::Proj1) return S->a;
        return inst(S->clo, proj(eval(t->a), true));
      }
      case K::Eq: {
        V A;
        Sort s;
        if (t->a) {
          s = check_type(t->a);
          A = eval(t->a);
          check(t->b, A);
          check(t->c, A);
        } else {
          bool lhs_checks_only = (t->b->k == K::Lam && !t->b->a) || t->b->k == K::Pair || t->b->k == K::Refl;
          if (lhs_checks_only) {
            A = infer(t->c);
            check(t->b, A);
          } else {
            A = infer(t->b);
            check(t->c, A);
          }
          s = sort_of_type(A).value_or(Sort::Set);
          eq_types[t.get()] = quote(A, static_cast<int>(level_types.size()));
        }
        if (t->eq == EqKind::Strict) s = sort_max(s, Sort::Set);
        return vsort(s);
      }
      case K::Refl: {
        if (!t->b) error("cannot infer the type of refl", t);
        V A = t->a ? eval(t->a) : infer(t->b);
        V x = eval(t->b);
        return veq(t->eq, A, x, x);
      }
      case K::Tr: {
        V E = expect_eq(t->b);
        if (!E->a) error("equality type unknown", t->b);
        {
          At w(*this, "motive");
          check(t->a, motive_type(E->a, "x"));
        }
        V P = eval(t->a);
        {
          At w(*this, "transported element");
          check(t->c, apply(P, E->b));
        }
        return apply(P, E->c);
      }
      case K::J: {
        V E = expect_eq(t->c);
        if (!E->a) error("equality type unknown", t->c);
        V A = E->a, a = E->b;
        EqKind k = E->eq;
        V mt = vbind(VK::Pi, "y", A, host("y", [k, A, a](V y) {
                       return vbind(VK::Pi, "_", veq(k, A, a, y), host("_", [](V) { return vsort(Sort::Set1); }));
                     }));
        {
          At w(*this, "motive");
          check(t->a, mt);
        }
        V P = eval(t->a);
        {
          At w(*this, "method");
          check(t->b, apply(apply(P, a), vrefl(k)));
        }
        return apply(apply(P, E->c), eval(t->c));
      }
      case K::Ap: {
        V E = expect_eq(t->b);
        if (!E->a) error("equality type unknown", t->b);
        V Ba = infer_fun_at(t->a, E->a, E->b);
        V Bb = infer_fun_at(t->a, E->a, E->c);
        if (!conv(Ba, Bb)) error("ap needs a non-dependent function", t->a, Ba, Bb);
        V f = eval(t->a);
        return veq(E->eq, Ba, apply(f, E->b), apply(f, E->c));
      }
      case K::Apd: {
        V E = expect_eq(t->b);
        if (!E->a) error("equality type unknown", t->b);
        V A = E->a;
        Env saved = env;
        const T& f = t->a;
        V B;
        if (f->k == K::Lam && !f->a) {
          B = vbind(VK::Lam, "x", nullptr, host("x", [this, saved, f, A](V v) {
                      Env keep = env;
                      env = saved;
                      V r;
                      {
                        Bind b(*this, f->name, v, A);
                        r = infer(f->b);
                      }
                      env = keep;
                      return r;
                    }));
        } else {
          V F = infer(f);
          if (F->k != VK::Pi) error("expected a function", f, nullptr, F);
          if (!conv(F->a, A)) error("function domain does not match the path type", f, A, F->a);
          B = vbind(VK::Lam, F->clo.name, nullptr, F->clo);
        }
        V fv = eval(f);
        V p = eval(t->b);
        return veq(E->eq, apply(B, E->c), do_tr(B, p, apply(fv, E->b)), apply(fv, E->c));
      }
      case K::Funext: {
        V H = infer(t->a);
        if (H->k != VK::Pi) error("funext expects a pointwise proof", t->a, nullptr, H);
        int l = push_level(H->clo.name, H->a);
        V body = inst(H->clo, vvar(l));
        pop_level();
        if (body->k != VK::Eq) error("funext expects a pointwise proof", t->a, nullptr, H);
        EqKind k = body->eq;
        Clo hc = H->clo;
        auto part = [this, hc](int which) {
          return host(hc.name, [this, hc, which](V v) {
            V e = inst(hc, v);
            return which == 0 ? e->a : which == 1 ? e->b : e->c;
          });
        };
        V dom = H->a;
        V pit = vbind(VK::Pi, hc.name, dom, part(0));
        return veq(k, pit, vbind(VK::Lam, hc.name, nullptr, part(1)), vbind(VK::Lam, hc.name, nullptr, part(2)));
      }
      case K::Happly: {
        V E = expect_eq(t->a);
        if (!E->a || E->a->k != VK::Pi) error("happly expects a proof of a function equation", t->a, nullptr, E);
        {
          At w(*this, "argument");
          check(t->b, E->a->a);
        }
        V x = eval(t->b);
        return veq(E->eq, inst(E->a->clo, x), apply(E->b, x), apply(E->c, x));
      }
      case K::Inv: {
        V E = expect_eq(t->a);
        return veq(E->eq, E->a, E->c, E->b);
      }
      case K::Comp: {
        V E1 = expect_eq(t->a);
        V E2 = expect_eq(t->b);
        if (!kinds_match(E1->eq, E2->eq)) error("composing equations of different kinds", t);
        if (!conv(E1->c, E2->b)) error("composed paths do not meet", t, E1->c, E2->b);
        return veq(E1->eq, E1->a ? E1->a : E2->a, E1->b, E2->c);
      }
      case K::Pair: error("cannot infer the type of a pair", t);
      case K::The: {
        check_type(t->a);
        V A = eval(t->a);
        check(t->b, A);
        return A;
      }
    }
    error("unhandled term", t);
  }

  void check(const T& t, const V& A) {
    switch (t->k) {
      case K::Lam:
        if (A->k == VK::Pi) {
          if (t->a) {
            check_type(t->a);
            if (!conv(eval(t->a), A->a)) error("lambda domain mismatch", t, A->a, eval(t->a));
          }
          Bind b(*this, t->name, A->a);
          At w(*this, "body of \\" + t->name);
          check(t->b, inst(A->clo, vvar(static_cast<int>(level_types.size()) - 1)));
          return;
        }
        error("lambda checked against a type that is not a function type", t, A);
      case K::Pair:
        if (A->k == VK::Sigma) {
          {
            At w(*this, "first component");
            check(t->a, A->a);
          }
          At w(*this, "second component");
          check(t->b, inst(A->clo, eval(t->a)));
          return;
        }
        error("pair checked against a type that is not a sigma type", t, A);
      case K::Refl:
        if (A->k == VK::Eq) {
          if (!kinds_match(t->eq, A->eq)) error("refl of the wrong equality kind", t, A);
          if (t->b) {
            V x = eval(t->b);
            if (!conv(x, A->b) || !conv(x, A->c)) error("refl point does not match", t, A);
          } else if (!conv(A->b, A->c)) {
            error("sides of the equation are not definitionally equal", t, A->b, A->c);
          }
          return;
        }
        error("refl checked against a type that is not an equation", t, A);
      case K::Funext:
        if (A->k == VK::Eq && A->a && A->a->k == VK::Pi) {
          V F = A->a;
          V l = A->b, r = A->c;
          EqKind k = A->eq;
          V want = vbind(VK::Pi, F->clo.name, F->a, host(F->clo.name, [this, F, l, r, k](V v) {
                           return veq(k, inst(F->clo, v), apply(l, v), apply(r, v));
                         }));
          At w(*this, "funext");
          check(t->a, want);
          return;
        }
        break;
      default: break;
    }
    V got = infer(t);
    if (!subtype(got, A, static_cast<int>(level_types.size()))) {
      if (got->k == VK::Sort && A->k == VK::Sort) error("universe too large", t, A, got);
      error("type mismatch", t, A, got);
    }
  }

  // Conversion up to universe cumulativity in positive positions.
  bool subtype(const V& a, const V& b, int n) {
    if (a->k == VK::Sort && b->k == VK::Sort) return sort_le(a->sort, b->sort);
    if (a->k == VK::Pi && b->k == VK::Pi) {
      if (!conv(a->a, b->a, n)) return false;
      V x = vvar(n);
      return subtype(inst(a->clo, x), inst(b->clo, x), n + 1);
    }
    return conv(a, b, n);
  }

  void bind_params(const std::vector<Param>& ps, std::vector<std::unique_ptr<Bind>>& scope, const char* what) {
    for (const auto& p : ps) {
      {
        At w(*this, std::string(what) + " " + p.name);
        check_type(p.type);
      }
      scope.push_back(std::make_unique<Bind>(*this, p.name, eval(p.type)));
    }
  }
};

T close_over(const std::vector<Param>& ps, T body, bool as_pi) {
  for (std::size_t i = ps.size(); i-- > 0;)
    body = as_pi ? pi(ps[i].name, ps[i].type, body, ps[i].implicit) : lam(ps[i].name, body, ps[i].type, ps[i].implicit);
  return body;
}

}  // namespace

void check_unit(const Unit& u) {
  Checker c;
  std::vector<std::unique_ptr<Checker::Bind>> scope;
  c.bind_params(u.postulates, scope, "postulate");
  for (const auto& d : u.defs) {
    Checker::At w(c, "def " + d.name);
    Sort s;
    {
      std::vector<std::unique_ptr<Checker::Bind>> inner;
      c.bind_params(d.params, inner, "parameter");
      s = c.check_type(d.body);
      while (!inner.empty()) inner.pop_back();
    }
    if (!sort_le(s, d.sort)) c.error("declared sort too small", d.body, vsort(d.sort), vsort(s));
    V val = c.eval(close_over(d.params, d.body, false));
    V ty = c.eval(close_over(d.params, sort(d.sort), true));
    scope.push_back(std::make_unique<Checker::Bind>(c, d.name, val, ty));
  }
  while (!scope.empty()) scope.pop_back();
}

Sort infer_sort(const std::vector<Param>& postulates, const std::vector<Param>& params, const T& body) {
  Checker c;
  std::vector<std::unique_ptr<Checker::Bind>> scope;
  c.bind_params(postulates, scope, "postulate");
  c.bind_params(params, scope, "parameter");
  Sort s = c.check_type(body);
  while (!scope.empty()) scope.pop_back();
  return s;
}

bool convertible(const std::vector<Param>& ctx, const T& a, const T& b) {
  Checker c;
  std::vector<std::unique_ptr<Checker::Bind>> scope;
  for (const auto& p : ctx) scope.push_back(std::make_unique<Checker::Bind>(c, p.name, c.eval(p.type)));
  bool r = c.conv(c.eval(a), c.eval(b));
  while (!scope.empty()) scope.pop_back();
  return r;
}

void check_term(const std::vector<Param>& ctx, const T& t, const T& A) {
  Checker c;
  std::vector<std::unique_ptr<Checker::Bind>> scope;
  c.bind_params(ctx, scope, "context");
  c.check_type(A);
  c.check(t, c.eval(A));
  while (!scope.empty()) scope.pop_back();
}

}  // namespace sigforge::inner

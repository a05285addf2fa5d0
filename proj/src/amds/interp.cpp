#include "sigforge/amds.hpp"

#include <utility>

namespace sigforge::amds {

namespace in = sigforge::inner;
using core::TmK;
using core::TyK;
using in::EqKind;
using in::K;
using in::T;

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::A: return "A";
    case Kind::M: return "M";
    case Kind::D: return "D";
    case Kind::S: return "S";
  }
  return "?";
}

namespace {

// Constructors that perform the computation rules on syntactic redexes, so
// emitted terms stay readable.
T A(const T& f, const T& x, bool imp = false) {
  if (f->k == K::Lam && f->implicit == imp) return in::subst(f->b, f->name, x);
  return in::app(f, x, imp);
}
T P1(const T& t) { return t->k == K::Pair ? t->a : in::proj1(t); }
T P2(const T& t) { return t->k == K::Pair ? t->b : in::proj2(t); }
bool is_refl(const T& p) { return p->k == K::Refl; }
T TR(const T& P, const T& p, const T& x) { return is_refl(p) ? x : in::tr(P, p, x); }
T JJ(const T& P, const T& pr, const T& p) { return is_refl(p) ? pr : in::jay(P, pr, p); }
T AP(const T& f, const T& p) { return is_refl(p) ? in::refl(p->eq) : in::ap(f, p); }
T APD(const T& f, const T& p) { return is_refl(p) ? in::refl(p->eq) : in::apd(f, p); }
T INV(const T& p) { return is_refl(p) ? p : in::inv(p); }
T COMP(const T& p, const T& q) {
  if (is_refl(q)) return p;
  if (is_refl(p)) return q;
  return in::comp(p, q);
}
T HAPPLY(const T& p, const T& x) {
  if (p->k == K::Funext) return A(p->a, x);
  if (is_refl(p)) return in::refl(p->eq);
  return in::happly(p, x);
}
T FUNEXT(const T& h) {
  if (h->k == K::Lam && is_refl(h->b)) return in::refl(h->b->eq);
  return in::funext(h);
}
T V(const std::string& n) { return in::var(n); }

// Equation whose sides are ascribed only when neither side is inferable.
T eq_a(EqKind k, const T& A, const T& l, const T& r) {
  if (in::inferable(l) || in::inferable(r)) return in::eq(k, nullptr, l, r);
  return in::eq(k, nullptr, in::the(A, l), r);
}

const Slot& at(const Env& env, int ix) {
  if (ix < 0 || static_cast<std::size_t>(ix) >= env.size()) fail(Code::InnerType, "variable out of scope");
  return env[env.size() - 1 - static_cast<std::size_t>(ix)];
}

Env plus(Env env, Slot s) {
  env.push_back(std::move(s));
  return env;
}

const std::set<std::string>& reserved() {
  static const std::set<std::string> r = {"Set", "Set1", "Ty0", "U0",     "U1",     "Top",   "tt",
                                          "refl", "tr",  "ap",  "apd",    "J",      "funext", "happly", "the",
                                          "inv",  "proj1", "proj2", "def", "postulate", "_"};
  return r;
}

}  // namespace

Interp::Interp(const core::Signature& sig) : sig_(sig), chk_(sig) {
  fixed_ = reserved();
  for (const auto& n : sig.ext.types) fixed_.insert(n);
  for (const auto& c : sig.ext.consts) fixed_.insert(c.name);
  used_ = fixed_;
}

void Interp::reset_names() { used_ = fixed_; }

std::string Interp::fresh(const std::string& base0, const std::string& suffix, const std::string& agda_suffix) {
  std::string base = base0.empty() || base0 == "_" ? "x" : base0;
  std::string cand = base + suffix;
  std::string shown = base + agda_suffix;
  for (int n = 1; used_.count(cand); ++n) {
    cand = base + suffix + "_" + std::to_string(n);
    shown = base + agda_suffix;
    shown += "_" + std::to_string(n);
  }
  used_.insert(cand);
  if (shown != cand) display_[cand] = shown;
  return cand;
}

EqKind Interp::el_eq() const {
  return sig_.profile == Profile::Fqii || sig_.profile == Profile::HiitStrict ? EqKind::Strict : EqKind::Path;
}

T Interp::universe() const { return in::sort(sig_.profile == Profile::HiitWeak ? in::Sort::U0 : in::Sort::Ty0); }

core::TyP Interp::type_of(const core::Ctx& G, const core::TmP& t) const {
  return chk_.norm().normalize(chk_.infer(G, t), G.size());
}

std::vector<in::Param> Interp::postulates() const {
  std::vector<in::Param> ps;
  for (const auto& n : sig_.ext.types) ps.push_back({n, universe(), false});
  for (const auto& c : sig_.ext.consts) {
    T ty = V(sig_.ext.types[static_cast<std::size_t>(c.result)]);
    for (std::size_t i = c.args.size(); i-- > 0;)
      ty = in::arrow(V(sig_.ext.types[static_cast<std::size_t>(c.args[i])]), ty);
    ps.push_back({c.name, ty, false});
  }
  return ps;
}

void Interp::unsupported(const core::Tm& t, Kind k) const {
  const char* what = t.k == TmK::JBeta ? "Jbeta" : "J on small Id";
  fail(Code::Unsupported, std::string(kind_name(k)) + " interpretation of " + what + " is not available in profile " +
                              std::string(profile_name(sig_.profile)));
}

std::pair<core::TyP, core::TyP> Interp::j_binders(const core::Tm& t) const {
  using core::shift;
  if (t.k == TmK::JLarge) return {t.A, core::mk::id_weak(shift(t.A, 1), shift(t.c, 1), core::mk::var(0))};
  return {core::mk::el(t.a), core::mk::el(core::mk::id_small(shift(t.a, 1), shift(t.c, 1), core::mk::var(0)))};
}

// ---------------------------------------------------------------- A

T Interp::ty_a(const core::Ctx& G, const Env& env, const core::TyP& ty, int side) {
  switch (ty->k) {
    case TyK::Iota: return V(sorts_.side[side]);
    case TyK::IotaArr: return in::pi(fresh("x"), V(sorts_.side[side]), ty_a(G, env, ty->B, side));
    case TyK::U: return universe();
    case TyK::El: return tm_a(G, env, ty->t, side);
    case TyK::Pi: {
      std::string x = fresh(ty->name);
      T dom = tm_a(G, env, ty->t, side);
      return in::pi(x, dom, ty_a(G.extended(ty->name, core::mk::el(ty->t)), plus(env, {V(x), V(x)}), ty->B, side));
    }
    case TyK::PiExt: {
      std::string i = fresh(ty->name);
      return in::pi(i, V(sig_.ext.types[static_cast<std::size_t>(ty->ext)]),
                    ty_a(G.extended(ty->name, core::mk::ext_sort(ty->ext)), plus(env, {V(i), V(i)}), ty->B, side));
    }
    case TyK::IdLarge:
    case TyK::IDLarge:
      return eq_a(ty->k == TyK::IdLarge ? EqKind::Strict : EqKind::Path, ty_a(G, env, ty->A, side),
                  tm_a(G, env, ty->t, side), tm_a(G, env, ty->u, side));
    case TyK::ExtSort: return V(sig_.ext.types[static_cast<std::size_t>(ty->ext)]);
  }
  fail(Code::InnerType, "unknown type former");
}

T Interp::tm_a(const core::Ctx& G, const Env& env, const core::TmP& t, int side) {
  auto rec = [&](const core::TmP& x) { return tm_a(G, env, x, side); };
  switch (t->k) {
    case TmK::Var: return var_a(at(env, t->ix), side);
    case TmK::App:
    case TmK::AppExt: return A(rec(t->a), rec(t->b));
    case TmK::Lam: {
      std::string x = fresh(t->name);
      return in::lam(x, tm_a(G.extended(t->name, core::mk::el(t->a)), plus(env, {V(x), V(x)}), t->b, side));
    }
    case TmK::LamExt:
    case TmK::PiSmallExt: {
      std::string i = fresh(t->name);
      T body = tm_a(G.extended(t->name, core::mk::ext_sort(t->ext)), plus(env, {V(i), V(i)}), t->b, side);
      if (t->k == TmK::LamExt) return in::lam(i, body);
      return in::pi(i, V(sig_.ext.types[static_cast<std::size_t>(t->ext)]), body);
    }
    case TmK::Top: return in::unit();
    case TmK::Tt: return in::tt();
    case TmK::Sg: {
      std::string x = fresh(t->name);
      T a = rec(t->a);
      return in::sigma(x, a, tm_a(G.extended(t->name, core::mk::el(t->a)), plus(env, {V(x), V(x)}), t->b, side));
    }
    case TmK::Pair: return in::pair(rec(t->c), rec(t->d));
    case TmK::Proj1: return P1(rec(t->c));
    case TmK::Proj2: return P2(rec(t->c));
    case TmK::IdSmall: return eq_a(EqKind::Path, rec(t->a), rec(t->c), rec(t->d));
    case TmK::Refl: return in::refl(EqKind::Path);
    case TmK::ReflLarge: return in::refl(t->weak ? EqKind::Path : EqKind::Strict);
    case TmK::JSmall:
    case TmK::JLarge: {
      auto [X, Id] = j_binders(*t);
      core::Ctx G2 = G.extended(t->name, X).extended(t->name2, Id);
      std::string y = fresh(t->name), q = fresh(t->name2);
      T mot = in::lam(y, in::lam(q, ty_a(G2, plus(plus(env, {V(y), V(y)}), {V(q), V(q)}), t->P, side)));
      return JJ(mot, rec(t->d), rec(t->b));
    }
    case TmK::JBeta: return in::refl(EqKind::Path);
    case TmK::ExtCall: {
      std::vector<T> args;
      for (const auto& x : t->args) args.push_back(rec(x));
      return in::apps(V(sig_.ext.consts[static_cast<std::size_t>(t->ext)].name), args);
    }
  }
  fail(Code::InnerType, "unknown term former");
}

// ---------------------------------------------------------------- M

T Interp::ty_m(const core::Ctx& G, const Env& env, const core::TyP& ty, const T& a0, const T& a1) {
  EqKind E = el_eq();
  switch (ty->k) {
    case TyK::Iota: return in::eq(E, nullptr, A(V(sorts_.xm), a0), a1);
    case TyK::IotaArr: {
      std::string x = fresh("x");
      return in::pi(x, V(sorts_.side[0]), ty_m(G, env, ty->B, A(a0, V(x)), A(a1, A(V(sorts_.xm), V(x)))));
    }
    case TyK::U: return in::arrow(a0, a1);
    case TyK::El: return in::eq(E, nullptr, A(tm_m(G, env, ty->t), a0), a1);
    case TyK::Pi: {
      T aM = tm_m(G, env, ty->t);
      std::string x = fresh(ty->name);
      T x1 = A(aM, V(x));
      return in::pi(x, tm_a(G, env, ty->t, 0),
                    ty_m(G.extended(ty->name, core::mk::el(ty->t)), plus(env, {V(x), x1, in::refl(E)}), ty->B,
                         A(a0, V(x)), A(a1, x1)));
    }
    case TyK::PiExt: {
      std::string i = fresh(ty->name);
      return in::pi(i, V(sig_.ext.types[static_cast<std::size_t>(ty->ext)]),
                    ty_m(G.extended(ty->name, core::mk::ext_sort(ty->ext)), plus(env, {V(i), V(i)}), ty->B,
                         A(a0, V(i)), A(a1, V(i))));
    }
    case TyK::IdLarge:
    case TyK::IDLarge: {
      EqKind k = ty->k == TyK::IdLarge ? EqKind::Strict : EqKind::Path;
      T t1 = tm_a(G, env, ty->t, 1), u0 = tm_a(G, env, ty->u, 0);
      T tM = tm_m(G, env, ty->t), uM = tm_m(G, env, ty->u);
      std::string x = fresh("x"), z = fresh("x");
      T in1 = TR(in::lam(x, ty_m(G, env, ty->A, V(x), t1)), a0, tM);
      T in2 = TR(in::lam(z, ty_m(G, env, ty->A, u0, V(z))), a1, in1);
      return in::eq(k, nullptr, in2, uM);
    }
    case TyK::ExtSort: break;
  }
  fail(Code::InnerType, "external sorts have no M interpretation");
}

T Interp::id_small_m(const T& aM, const T& t1, const T& tM, const T& u0, const T& u1, const T& uM, const T& p) {
  if (el_eq() == EqKind::Strict) {
    std::string y = fresh("y"), x = fresh("x");
    T inner = TR(in::lam(x, in::eq(EqKind::Path, nullptr, V(x), A(aM, u0))), tM, AP(aM, p));
    return TR(in::lam(y, in::eq(EqKind::Path, nullptr, t1, V(y))), uM, inner);
  }
  return COMP(COMP(INV(tM), AP(aM, p)), uM);
}

T Interp::pair_ms(const core::Ctx& G, const Env& env, const core::TmP& tp, Kind k) {
  const core::Tm& t = *tp;
  EqKind E = el_eq();
  bool m = k == Kind::M;
  core::TyP S = type_of(G, tp);
  T carrier = m ? ty_a(G, env, S, 1) : ty_d(G, env, S, tm_a(G, env, tp, 0));
  core::Ctx Gb = G.extended(t.name, core::mk::el(t.a));
  T f = m ? tm_m(G, env, t.a) : tm_s(G, env, t.a);
  T t0 = tm_a(G, env, t.c, 0), u0 = tm_a(G, env, t.d, 0);
  T t1 = m ? tm_a(G, env, t.c, 1) : tm_d(G, env, t.c);
  T u1 = m ? tm_a(G, env, t.d, 1) : tm_d(G, env, t.d);
  T tX = m ? tm_m(G, env, t.c) : tm_s(G, env, t.c);
  T uX = m ? tm_m(G, env, t.d) : tm_s(G, env, t.d);
  auto slot = [&](const T& y, const T& e) { return m ? Slot{t0, y, e} : Slot{t0, nullptr, nullptr, y, e}; };
  auto bX = [&](const T& y, const T& e) {
    return m ? tm_m(Gb, plus(env, slot(y, e)), t.b) : tm_s(Gb, plus(env, slot(y, e)), t.b);
  };
  T ft0 = A(f, t0);
  T lhs = in::pair(ft0, A(bX(ft0, in::refl(E)), u0));
  auto goal = [&](const T& y, const T& v) { return in::eq(E, nullptr, lhs, in::the(carrier, in::pair(y, v))); };
  std::string y = fresh("y"), e = fresh("e"), v = fresh("v");
  T vty = m ? tm_a(Gb, plus(env, slot(V(y), V(e))), t.b, 1) : A(tm_d(Gb, plus(env, slot(V(y), V(e))), t.b), u0);
  T mot = in::lam(
      y, in::lam(e, in::pi(v, vty, in::arrow(in::eq(E, nullptr, A(bX(V(y), V(e)), u0), V(v)), goal(V(y), V(v))))));
  std::string v2 = fresh("v"), q = fresh("q"), w = fresh("w"), r = fresh("r");
  T method = in::lam(v2, in::lam(q, JJ(in::lam(w, in::lam(r, goal(ft0, V(w)))), in::refl(E), V(q))));
  return A(A(JJ(mot, method, tX), u1), uX);
}

T Interp::proj2_ms(const core::Ctx& G, const Env& env, const core::Tm& t, Kind k) {
  EqKind E = el_eq();
  bool m = k == Kind::M;
  core::TyP S = type_of(G, t.c);
  const core::TmP& sg = S->t;
  core::Ctx Gb = G.extended(sg->name, core::mk::el(sg->a));
  core::TyP Bt = core::mk::el(sg->b);
  T c0 = tm_a(G, env, t.c, 0);
  T cX = m ? tm_m(G, env, t.c) : tm_s(G, env, t.c);
  std::string y = fresh("y"), e = fresh("e"), z = fresh("z");
  T pe = AP(in::lam(z, in::proj1(V(z))), V(e));
  T body = m ? ty_m(Gb, plus(env, {P1(c0), P1(V(y)), pe}), Bt, P2(c0), P2(V(y)))
             : ty_s(Gb, plus(env, {P1(c0), nullptr, nullptr, P1(V(y)), pe}), Bt, P2(c0), P2(V(y)));
  return JJ(in::lam(y, in::lam(e, body)), in::refl(E), cX);
}

T Interp::j_m(const core::Ctx& G, const Env& env, const core::Tm& t) {
  auto [X, Id] = j_binders(t);
  core::Ctx G2 = G.extended(t.name, X).extended(t.name2, Id);
  const core::TyP& Aty = t.A;
  T t0 = tm_a(G, env, t.c, 0), t1 = tm_a(G, env, t.c, 1), tM = tm_m(G, env, t.c);
  T u0 = tm_a(G, env, t.e, 0), u1 = tm_a(G, env, t.e, 1);
  T p0 = tm_a(G, env, t.b, 0), p1 = tm_a(G, env, t.b, 1), pM = tm_m(G, env, t.b);
  T pr0 = tm_a(G, env, t.d, 0), pr1 = tm_a(G, env, t.d, 1), prM = tm_m(G, env, t.d);
  T rf = in::refl(EqKind::Path);
  auto motA = [&](int side) {
    std::string y = fresh(t.name), q = fresh(t.name2);
    return in::lam(y, in::lam(q, ty_a(G2, plus(plus(env, {V(y), V(y)}), {V(q), V(q)}), t.P, side)));
  };
  T mot0 = motA(0), mot1 = motA(1);
  auto goal = [&](const T& U0, const T& U1, const T& UM, const T& Q0, const T& Q1, const T& QM) {
    return ty_m(G2, plus(plus(env, {U0, U1, UM}), {Q0, Q1, QM}), t.P, JJ(mot0, pr0, Q0), JJ(mot1, pr1, Q1));
  };
  auto Xt = [&](const T& U0, const T& Q0, const T& Q1) {
    std::string x = fresh("x"), z = fresh("x");
    T in1 = TR(in::lam(x, ty_m(G, env, Aty, V(x), t1)), Q0, tM);
    return TR(in::lam(z, ty_m(G, env, Aty, U0, V(z))), Q1, in1);
  };
  std::string y2 = fresh("y"), e2 = fresh("e");
  T M2 = JJ(in::lam(y2, in::lam(e2, goal(t0, V(y2), Xt(t0, rf, V(e2)), rf, V(e2), rf))), prM, p1);
  std::string y1 = fresh("y"), e1 = fresh("e");
  T M1 = JJ(in::lam(y1, in::lam(e1, goal(V(y1), u1, Xt(V(y1), V(e1), p1), V(e1), p1, rf))), M2, p0);
  std::string y = fresh("y"), e = fresh("e");
  return JJ(in::lam(y, in::lam(e, goal(u0, u1, V(y), p0, p1, V(e)))), M1, pM);
}

T Interp::tm_m(const core::Ctx& G, const Env& env, const core::TmP& t) {
  EqKind E = el_eq();
  auto rec = [&](const core::TmP& x) { return tm_m(G, env, x); };
  switch (t->k) {
    case TmK::Var: {
      const Slot& s = at(env, t->ix);
      if (!s.m) fail(Code::InnerType, "external variable has no M component");
      return s.m;
    }
    case TmK::App: {
      core::TyP F = type_of(G, t->a);
      T f0 = tm_a(G, env, t->a, 0), f1 = tm_a(G, env, t->a, 1);
      T x0 = tm_a(G, env, t->b, 0), xM = rec(t->b);
      T pr = A(rec(t->a), x0);
      std::string y = fresh("y"), e = fresh("e");
      T body = F->k == TyK::IotaArr
                   ? ty_m(G, env, F->B, A(f0, x0), A(f1, V(y)))
                   : ty_m(G.extended(F->name, core::mk::el(F->t)), plus(env, {x0, V(y), V(e)}), F->B, A(f0, x0),
                          A(f1, V(y)));
      return JJ(in::lam(y, in::lam(e, body)), pr, xM);
    }
    case TmK::AppExt: {
      T i = tm_a(G, env, t->b, 0);
      return t->small ? HAPPLY(rec(t->a), i) : A(rec(t->a), i);
    }
    case TmK::Lam: {
      T aM = rec(t->a);
      std::string x = fresh(t->name);
      return in::lam(x, tm_m(G.extended(t->name, core::mk::el(t->a)), plus(env, {V(x), A(aM, V(x)), in::refl(E)}),
                             t->b));
    }
    case TmK::LamExt: {
      std::string i = fresh(t->name);
      T body =
          in::lam(i, tm_m(G.extended(t->name, core::mk::ext_sort(t->ext)), plus(env, {V(i), V(i)}), t->b),
                 t->small ? V(sig_.ext.types[static_cast<std::size_t>(t->ext)]) : nullptr);
      return t->small ? FUNEXT(body) : body;
    }
    case TmK::Top: return in::lam(fresh("x"), in::tt());
    case TmK::Tt: return in::refl(E);
    case TmK::Sg: {
      T aM = rec(t->a);
      std::string s = fresh("s");
      T p1 = in::proj1(V(s));
      T bM = tm_m(G.extended(t->name, core::mk::el(t->a)), plus(env, {p1, A(aM, p1), in::refl(E)}), t->b);
      return in::lam(s, in::the(tm_a(G, env, t, 1), in::pair(A(aM, p1), A(bM, in::proj2(V(s))))));
    }
    case TmK::Pair: return pair_ms(G, env, t, Kind::M);
    case TmK::Proj1: {
      std::string z = fresh("z");
      return AP(in::lam(z, in::proj1(V(z))), rec(t->c));
    }
    case TmK::Proj2: return proj2_ms(G, env, *t, Kind::M);
    case TmK::IdSmall: {
      T aM = rec(t->a);
      std::string p = fresh("p");
      return in::lam(p, id_small_m(aM, tm_a(G, env, t->c, 1), rec(t->c), tm_a(G, env, t->d, 0),
                                   tm_a(G, env, t->d, 1), rec(t->d), V(p)));
    }
    case TmK::Refl: {
      T aM = rec(t->a);
      T t0 = tm_a(G, env, t->c, 0);
      std::string y = fresh("y"), e = fresh("e");
      T lhs = id_small_m(aM, V(y), V(e), t0, V(y), V(e), in::refl(EqKind::Path));
      T mot = in::lam(y, in::lam(e, in::eq(E, nullptr, lhs, in::refl(EqKind::Path))));
      return JJ(mot, in::refl(E), rec(t->c));
    }
    case TmK::ReflLarge: return in::refl(t->weak ? EqKind::Path : EqKind::Strict);
    case TmK::JLarge: return j_m(G, env, *t);
    case TmK::JSmall:
    case TmK::JBeta: unsupported(*t, Kind::M);
    case TmK::PiSmallExt: {
      std::string f = fresh("f"), i = fresh(t->name);
      T bM = tm_m(G.extended(t->name, core::mk::ext_sort(t->ext)), plus(env, {V(i), V(i)}), t->b);
      return in::lam(f, in::lam(i, A(bM, A(V(f), V(i))), V(sig_.ext.types[static_cast<std::size_t>(t->ext)])));
    }
    case TmK::ExtCall: break;
  }
  fail(Code::InnerType, "external terms have no M interpretation");
}

// ---------------------------------------------------------------- D

T Interp::ty_d(const core::Ctx& G, const Env& env, const core::TyP& ty, const T& a) {
  switch (ty->k) {
    case TyK::Iota: return A(V(sorts_.xd), a);
    case TyK::IotaArr: {
      std::string x = fresh("x"), xd = fresh("x", "D", "ᴰ");
      return in::pi(x, V(sorts_.side[0]),
                    in::pi(xd, A(V(sorts_.xd), V(x)), ty_d(G, env, ty->B, A(a, V(x)))));
    }
    case TyK::U: return in::arrow(a, universe());
    case TyK::El: return A(tm_d(G, env, ty->t), a);
    case TyK::Pi: {
      T aD = tm_d(G, env, ty->t);
      std::string x = fresh(ty->name), xd = fresh(ty->name, "D", "ᴰ");
      T body = ty_d(G.extended(ty->name, core::mk::el(ty->t)), plus(env, {V(x), V(x), nullptr, V(xd)}), ty->B,
                    A(a, V(x)));
      return in::pi(x, tm_a(G, env, ty->t), in::pi(xd, A(aD, V(x)), body), true);
    }
    case TyK::PiExt: {
      std::string i = fresh(ty->name);
      return in::pi(i, V(sig_.ext.types[static_cast<std::size_t>(ty->ext)]),
                    ty_d(G.extended(ty->name, core::mk::ext_sort(ty->ext)), plus(env, {V(i), V(i)}), ty->B,
                         A(a, V(i))));
    }
    case TyK::IdLarge:
    case TyK::IDLarge: {
      EqKind k = ty->k == TyK::IdLarge ? EqKind::Strict : EqKind::Path;
      std::string x = fresh("x");
      T tD = tm_d(G, env, ty->t), uD = tm_d(G, env, ty->u);
      return in::eq(k, nullptr, TR(in::lam(x, ty_d(G, env, ty->A, V(x))), a, tD), uD);
    }
    case TyK::ExtSort: break;
  }
  fail(Code::InnerType, "external sorts have no D interpretation");
}

T Interp::j_d(const core::Ctx& G, const Env& env, const core::Tm& t, const T& uA, const T& uD, const T& pA,
              const T& pD) {
  auto [X, Id] = j_binders(t);
  core::Ctx G2 = G.extended(t.name, X).extended(t.name2, Id);
  T tD = tm_d(G, env, t.c);
  T prA = tm_a(G, env, t.d), prD = tm_d(G, env, t.d);
  T rf = in::refl(EqKind::Path);
  T Dmot;
  if (t.k == TmK::JSmall) {
    Dmot = tm_d(G, env, t.a);
  } else {
    std::string x = fresh("x");
    Dmot = in::lam(x, ty_d(G, env, t.A, V(x)));
  }
  std::string ya = fresh(t.name), qa = fresh(t.name2);
  T motA = in::lam(ya, in::lam(qa, ty_a(G2, plus(plus(env, {V(ya), V(ya)}), {V(qa), V(qa)}), t.P)));
  auto goal = [&](const T& U, const T& UD, const T& Q, const T& QD) {
    return ty_d(G2, plus(plus(env, {U, U, nullptr, UD}), {Q, Q, nullptr, QD}), t.P, JJ(motA, prA, Q));
  };
  std::string y1 = fresh("y"), e1 = fresh("e");
  T M1 = JJ(in::lam(y1, in::lam(e1, goal(V(y1), TR(Dmot, V(e1), tD), V(e1), rf))), prD, pA);
  std::string y = fresh("y"), e = fresh("e");
  return JJ(in::lam(y, in::lam(e, goal(uA, V(y), pA, V(e)))), M1, pD);
}

T Interp::tm_d(const core::Ctx& G, const Env& env, const core::TmP& t) {
  auto rec = [&](const core::TmP& x) { return tm_d(G, env, x); };
  switch (t->k) {
    case TmK::Var: {
      const Slot& s = at(env, t->ix);
      if (!s.d) fail(Code::InnerType, "external variable has no D component");
      return s.d;
    }
    case TmK::App: {
      core::TyP F = type_of(G, t->a);
      return A(A(rec(t->a), tm_a(G, env, t->b), F->k == TyK::Pi), rec(t->b));
    }
    case TmK::AppExt: return A(rec(t->a), tm_a(G, env, t->b));
    case TmK::Lam: {
      std::string x = fresh(t->name), xd = fresh(t->name, "D", "ᴰ");
      T body = tm_d(G.extended(t->name, core::mk::el(t->a)), plus(env, {V(x), V(x), nullptr, V(xd)}), t->b);
      return in::lam(x, in::lam(xd, body), nullptr, true);
    }
    case TmK::LamExt: {
      std::string i = fresh(t->name);
      return in::lam(i, tm_d(G.extended(t->name, core::mk::ext_sort(t->ext)), plus(env, {V(i), V(i)}), t->b));
    }
    case TmK::Top: return in::lam(fresh("x"), in::unit());
    case TmK::Tt: return in::tt();
    case TmK::Sg: {
      T aD = rec(t->a);
      std::string s = fresh("s"), xd = fresh(t->name, "D", "ᴰ");
      T p1 = in::proj1(V(s));
      T bD = tm_d(G.extended(t->name, core::mk::el(t->a)), plus(env, {p1, p1, nullptr, V(xd)}), t->b);
      return in::lam(s, in::sigma(xd, A(aD, p1), A(bD, in::proj2(V(s)))));
    }
    case TmK::Pair: return in::pair(rec(t->c), rec(t->d));
    case TmK::Proj1: return P1(rec(t->c));
    case TmK::Proj2: return P2(rec(t->c));
    case TmK::IdSmall: {
      std::string p = fresh("p");
      return in::lam(p, in::eq(EqKind::Path, nullptr, TR(rec(t->a), V(p), rec(t->c)), rec(t->d)));
    }
    case TmK::Refl: return in::refl(EqKind::Path);
    case TmK::ReflLarge: return in::refl(t->weak ? EqKind::Path : EqKind::Strict);
    case TmK::JSmall:
    case TmK::JLarge: return j_d(G, env, *t, tm_a(G, env, t->e), rec(t->e), tm_a(G, env, t->b), rec(t->b));
    case TmK::JBeta: return in::refl(EqKind::Path);
    case TmK::PiSmallExt: {
      std::string f = fresh("f"), i = fresh(t->name);
      T bD = tm_d(G.extended(t->name, core::mk::ext_sort(t->ext)), plus(env, {V(i), V(i)}), t->b);
      return in::lam(f, in::pi(i, V(sig_.ext.types[static_cast<std::size_t>(t->ext)]), A(bD, A(V(f), V(i)))));
    }
    case TmK::ExtCall: break;
  }
  fail(Code::InnerType, "external terms have no D interpretation");
}

// ---------------------------------------------------------------- S

T Interp::ty_s(const core::Ctx& G, const Env& env, const core::TyP& ty, const T& a, const T& ad) {
  EqKind E = el_eq();
  switch (ty->k) {
    case TyK::Iota: return in::eq(E, nullptr, A(V(sorts_.xs), a), ad);
    case TyK::IotaArr: {
      std::string x = fresh("x");
      return in::pi(x, V(sorts_.side[0]), ty_s(G, env, ty->B, A(a, V(x)), A(A(ad, V(x)), A(V(sorts_.xs), V(x)))));
    }
    case TyK::U: {
      std::string x = fresh("x");
      return in::pi(x, a, A(ad, V(x)));
    }
    case TyK::El: return in::eq(E, nullptr, A(tm_s(G, env, ty->t), a), ad);
    case TyK::Pi: {
      T aS = tm_s(G, env, ty->t);
      std::string x = fresh(ty->name);
      T xd = A(aS, V(x));
      return in::pi(x, tm_a(G, env, ty->t),
                    ty_s(G.extended(ty->name, core::mk::el(ty->t)), plus(env, {V(x), V(x), nullptr, xd, in::refl(E)}),
                         ty->B, A(a, V(x)), A(A(ad, V(x), true), xd)));
    }
    case TyK::PiExt: {
      std::string i = fresh(ty->name);
      return in::pi(i, V(sig_.ext.types[static_cast<std::size_t>(ty->ext)]),
                    ty_s(G.extended(ty->name, core::mk::ext_sort(ty->ext)), plus(env, {V(i), V(i)}), ty->B,
                         A(a, V(i)), A(ad, V(i))));
    }
    case TyK::IdLarge:
    case TyK::IDLarge: {
      EqKind k = ty->k == TyK::IdLarge ? EqKind::Strict : EqKind::Path;
      T uA = tm_a(G, env, ty->u), tD = tm_d(G, env, ty->t), tS = tm_s(G, env, ty->t), uS = tm_s(G, env, ty->u);
      std::string y = fresh("y"), q = fresh("q"), x = fresh("x"), z = fresh("x");
      T trD = TR(in::lam(x, ty_d(G, env, ty->A, V(x))), V(q), tD);
      T inner = JJ(in::lam(y, in::lam(q, ty_s(G, env, ty->A, V(y), trD))), tS, a);
      T outer = TR(in::lam(z, ty_s(G, env, ty->A, uA, V(z))), ad, inner);
      return in::eq(k, nullptr, outer, uS);
    }
    case TyK::ExtSort: break;
  }
  fail(Code::InnerType, "external sorts have no S interpretation");
}

T Interp::id_small_s(const T& aS, const T& aD, const T& tA, const T& tD, const T& tS, const T& uD, const T& uS,
                     const T& p) {
  std::string z = fresh("z");
  auto trp = [&](const T& x) { return TR(aD, p, x); };
  if (el_eq() == EqKind::Strict) {
    std::string z2 = fresh("z");
    T inner = TR(in::lam(z2, in::eq(EqKind::Path, nullptr, trp(A(aS, tA)), V(z2))), uS, APD(aS, p));
    return TR(in::lam(z, in::eq(EqKind::Path, nullptr, trp(V(z)), uD)), tS, inner);
  }
  T f = in::lam(z, trp(V(z)));
  T head = AP(f, INV(tS));
  return COMP(COMP(head, APD(aS, p)), uS);
}

T Interp::j_s(const core::Ctx& G, const Env& env, const core::Tm& t) {
  auto [X, Id] = j_binders(t);
  core::Ctx G2 = G.extended(t.name, X).extended(t.name2, Id);
  const core::TyP& Aty = t.A;
  T tA = tm_a(G, env, t.c), tD = tm_d(G, env, t.c), tS = tm_s(G, env, t.c);
  T uA = tm_a(G, env, t.e), uD = tm_d(G, env, t.e);
  T pA = tm_a(G, env, t.b), pD = tm_d(G, env, t.b), pS = tm_s(G, env, t.b);
  T prA = tm_a(G, env, t.d), prS = tm_s(G, env, t.d);
  T rf = in::refl(EqKind::Path);
  std::string ya = fresh(t.name), qa = fresh(t.name2);
  T motA = in::lam(ya, in::lam(qa, ty_a(G2, plus(plus(env, {V(ya), V(ya)}), {V(qa), V(qa)}), t.P)));
  auto goal = [&](const T& U, const T& UD, const T& US, const T& Q, const T& QD, const T& QS) {
    return ty_s(G2, plus(plus(env, {U, U, nullptr, UD, US}), {Q, Q, nullptr, QD, QS}), t.P, JJ(motA, prA, Q),
                j_d(G, env, t, U, UD, Q, QD));
  };
  auto XD = [&](const T& Q) {
    std::string x = fresh("x");
    return TR(in::lam(x, ty_d(G, env, Aty, V(x))), Q, tD);
  };
  auto XS = [&](const T& U, const T& Q, const T& QD) {
    std::string y = fresh("y"), q = fresh("q"), z = fresh("x");
    T inner = JJ(in::lam(y, in::lam(q, ty_s(G, env, Aty, V(y), XD(V(q))))), tS, Q);
    return TR(in::lam(z, ty_s(G, env, Aty, U, V(z))), QD, inner);
  };
  std::string y2 = fresh("y"), e2 = fresh("e");
  T M2 = JJ(in::lam(y2, in::lam(e2, goal(V(y2), XD(V(e2)), XS(V(y2), V(e2), rf), V(e2), rf, rf))), prS, pA);
  std::string y1 = fresh("y"), e1 = fresh("e");
  T M1 = JJ(in::lam(y1, in::lam(e1, goal(uA, V(y1), XS(uA, pA, V(e1)), pA, V(e1), rf))), M2, pD);
  std::string y = fresh("y"), e = fresh("e");
  return JJ(in::lam(y, in::lam(e, goal(uA, uD, V(y), pA, pD, V(e)))), M1, pS);
}

T Interp::tm_s(const core::Ctx& G, const Env& env, const core::TmP& t) {
  EqKind E = el_eq();
  auto rec = [&](const core::TmP& x) { return tm_s(G, env, x); };
  switch (t->k) {
    case TmK::Var: {
      const Slot& s = at(env, t->ix);
      if (!s.s) fail(Code::InnerType, "external variable has no S component");
      return s.s;
    }
    case TmK::App: {
      core::TyP F = type_of(G, t->a);
      T fA = tm_a(G, env, t->a), fD = tm_d(G, env, t->a);
      T xA = tm_a(G, env, t->b), xS = rec(t->b);
      bool pi = F->k == TyK::Pi;
      std::string y = fresh("y"), e = fresh("e");
      T rhs = A(A(fD, xA, pi), V(y));
      T body = pi ? ty_s(G.extended(F->name, core::mk::el(F->t)), plus(env, {xA, xA, nullptr, V(y), V(e)}), F->B,
                         A(fA, xA), rhs)
                  : ty_s(G, env, F->B, A(fA, xA), rhs);
      return JJ(in::lam(y, in::lam(e, body)), A(rec(t->a), xA), xS);
    }
    case TmK::AppExt: {
      T i = tm_a(G, env, t->b);
      return t->small ? HAPPLY(rec(t->a), i) : A(rec(t->a), i);
    }
    case TmK::Lam: {
      T aS = rec(t->a);
      std::string x = fresh(t->name);
      return in::lam(x, tm_s(G.extended(t->name, core::mk::el(t->a)),
                             plus(env, {V(x), V(x), nullptr, A(aS, V(x)), in::refl(E)}), t->b));
    }
    case TmK::LamExt: {
      std::string i = fresh(t->name);
      T body = in::lam(i, tm_s(G.extended(t->name, core::mk::ext_sort(t->ext)), plus(env, {V(i), V(i)}), t->b),
                 t->small ? V(sig_.ext.types[static_cast<std::size_t>(t->ext)]) : nullptr);
      return t->small ? FUNEXT(body) : body;
    }
    case TmK::Top: return in::lam(fresh("x"), in::tt());
    case TmK::Tt: return in::refl(E);
    case TmK::Sg: {
      T aS = rec(t->a);
      std::string s = fresh("s");
      T p1 = in::proj1(V(s));
      T bS = tm_s(G.extended(t->name, core::mk::el(t->a)), plus(env, {p1, p1, nullptr, A(aS, p1), in::refl(E)}),
                  t->b);
      return in::lam(s, in::the(A(tm_d(G, env, t), V(s)), in::pair(A(aS, p1), A(bS, in::proj2(V(s))))));
    }
    case TmK::Pair: return pair_ms(G, env, t, Kind::S);
    case TmK::Proj1: {
      std::string z = fresh("z");
      return AP(in::lam(z, in::proj1(V(z))), rec(t->c));
    }
    case TmK::Proj2: return proj2_ms(G, env, *t, Kind::S);
    case TmK::IdSmall: {
      T aS = rec(t->a), aD = tm_d(G, env, t->a);
      std::string p = fresh("p");
      return in::lam(p, id_small_s(aS, aD, tm_a(G, env, t->c), tm_d(G, env, t->c), rec(t->c), tm_d(G, env, t->d),
                                   rec(t->d), V(p)));
    }
    case TmK::Refl: {
      T aS = rec(t->a), aD = tm_d(G, env, t->a);
      T tA = tm_a(G, env, t->c);
      std::string y = fresh("y"), e = fresh("e");
      T lhs = id_small_s(aS, aD, tA, V(y), V(e), V(y), V(e), in::refl(EqKind::Path));
      T mot = in::lam(y, in::lam(e, in::eq(E, nullptr, lhs, in::refl(EqKind::Path))));
      return JJ(mot, in::refl(E), rec(t->c));
    }
    case TmK::ReflLarge: return in::refl(t->weak ? EqKind::Path : EqKind::Strict);
    case TmK::JLarge: return j_s(G, env, *t);
    case TmK::JSmall:
    case TmK::JBeta: unsupported(*t, Kind::S);
    case TmK::PiSmallExt: {
      std::string f = fresh("f"), i = fresh(t->name);
      T bS = tm_s(G.extended(t->name, core::mk::ext_sort(t->ext)), plus(env, {V(i), V(i)}), t->b);
      return in::lam(f, in::lam(i, A(bS, A(V(f), V(i))), V(sig_.ext.types[static_cast<std::size_t>(t->ext)])));
    }
    case TmK::ExtCall: break;
  }
  fail(Code::InnerType, "external terms have no S interpretation");
}

bool clause_exists(Profile p, TmK former, Kind k) {
  if (p == Profile::HiitWeak && (former == TmK::JSmall || former == TmK::JBeta) && (k == Kind::M || k == Kind::S))
    return false;
  return true;
}

}  // namespace sigforge::amds

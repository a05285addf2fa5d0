#include <string>

#include "sigforge/core.hpp"

namespace sigforge::core {

namespace {

const char* ty_former_name(TyK k) {
  switch (k) {
    case TyK::Iota: return "iota";
    case TyK::IotaArr: return "iota ->";
    case TyK::U: return "U";
    case TyK::El: return "El";
    case TyK::Pi: return "internal Pi";
    case TyK::PiExt: return "external Pi";
    case TyK::IdLarge: return "Id on arbitrary types";
    case TyK::IDLarge: return "ID";
    case TyK::ExtSort: return "external sort";
  }
  return "?";
}

const char* tm_former_name(TmK k, bool flag) {
  switch (k) {
    case TmK::Var: return "variable";
    case TmK::App: return "application";
    case TmK::Lam: return "lambda";
    case TmK::AppExt: return flag ? "small external application" : "external application";
    case TmK::LamExt: return flag ? "small external lambda" : "external lambda";
    case TmK::Top: return "Top";
    case TmK::Tt: return "tt";
    case TmK::Sg: return "Sg";
    case TmK::Pair: return "pair";
    case TmK::Proj1: return "proj1";
    case TmK::Proj2: return "proj2";
    case TmK::IdSmall: return "Id in U";
    case TmK::Refl: return "refl";
    case TmK::ReflLarge: return flag ? "refl for ID" : "refl for Id";
    case TmK::JSmall: return "J on Id";
    case TmK::JLarge: return "J on ID";
    case TmK::JBeta: return "Jbeta";
    case TmK::PiSmallExt: return "small external Pi";
    case TmK::ExtCall: return "external constant";
  }
  return "?";
}

bool flag_of(const Tm& t) { return t.k == TmK::ReflLarge ? t.weak : t.small; }

}  // namespace

bool former_allowed_ty(Profile p, TyK k) {
  switch (p) {
    case Profile::Simple: return k == TyK::Iota || k == TyK::IotaArr;
    case Profile::Fqii:
      return k == TyK::U || k == TyK::El || k == TyK::Pi || k == TyK::PiExt || k == TyK::IdLarge ||
             k == TyK::ExtSort;
    case Profile::HiitStrict:
      return k == TyK::U || k == TyK::El || k == TyK::Pi || k == TyK::PiExt || k == TyK::ExtSort;
    case Profile::HiitWeak:
      return k == TyK::U || k == TyK::El || k == TyK::Pi || k == TyK::PiExt || k == TyK::IDLarge ||
             k == TyK::ExtSort;
  }
  return false;
}

bool former_allowed_tm(Profile p, TmK k, bool flag) {
  switch (k) {
    case TmK::Var:
    case TmK::App:
      return true;
    case TmK::Lam:
    case TmK::ExtCall:
      return p != Profile::Simple;
    case TmK::AppExt:
    case TmK::LamExt:
      if (p == Profile::Simple) return false;
      return !flag || p != Profile::Fqii;
    case TmK::ReflLarge:
      if (p == Profile::Fqii) return !flag;
      if (p == Profile::HiitWeak) return flag;
      return false;
    case TmK::Top:
    case TmK::Tt:
    case TmK::Sg:
    case TmK::Pair:
    case TmK::Proj1:
    case TmK::Proj2:
    case TmK::IdSmall:
    case TmK::Refl:
    case TmK::PiSmallExt:
      return p == Profile::HiitStrict || p == Profile::HiitWeak;
    case TmK::JSmall:
    case TmK::JLarge:
    case TmK::JBeta:
      return p == Profile::HiitWeak;
  }
  return false;
}

void Checker::gate_ty(const Ty& A) const {
  if (!former_allowed_ty(sig_.profile, A.k))
    fail(Code::Profile,
         std::string(ty_former_name(A.k)) + " is not available in profile " + std::string(profile_name(sig_.profile)));
}

void Checker::gate_tm(const Tm& t) const {
  if (!former_allowed_tm(sig_.profile, t.k, flag_of(t)))
    fail(Code::Profile, std::string(tm_former_name(t.k, flag_of(t))) + " is not available in profile " +
                            std::string(profile_name(sig_.profile)));
}

void type_mismatch(const Signature& sig, const Ctx& G, const std::string& what, const TyP& expected,
                   const TyP& actual) {
  Diagnostic d;
  d.code = Code::Type;
  d.expected = print_ty(sig, G, expected);
  d.actual = print_ty(sig, G, actual);
  d.message = what + ": expected " + d.expected + ", got " + d.actual;
  throw Error(std::move(d));
}

void Checker::check_ty(const Ctx& G, const TyP& A) const {
  gate_ty(*A);
  switch (A->k) {
    case TyK::Iota:
    case TyK::U:
      return;
    case TyK::IotaArr: check_ty(G, A->B); return;
    case TyK::El: check(G, A->t, mk::u()); return;
    case TyK::Pi:
      check(G, A->t, mk::u());
      check_ty(G.extended(A->name, mk::el(A->t)), A->B);
      return;
    case TyK::PiExt:
      if (A->ext < 0 || static_cast<std::size_t>(A->ext) >= sig_.ext.types.size())
        fail(Code::Extern, "unknown external type");
      check_ty(G.extended(A->name, mk::ext_sort(A->ext)), A->B);
      return;
    case TyK::IdLarge:
    case TyK::IDLarge:
      check_ty(G, A->A);
      check(G, A->t, A->A);
      check(G, A->u, A->A);
      return;
    case TyK::ExtSort:
      fail(Code::Extern, "an external type can only be the domain of an external Pi");
  }
}

void Checker::check(const Ctx& G, const TmP& t, const TyP& A) const {
  TyP T = infer(G, t);
  if (!norm_.conv(T, A, G.size())) type_mismatch(sig_, G, "type mismatch", A, T);
}

TyP Checker::infer(const Ctx& G, const TmP& t) const {
  gate_tm(*t);
  const std::size_t n = G.size();
  auto el_code = [&](const TyP& T, TmK want, const char* what) -> TmP {
    if (T->k != TyK::El) fail(Code::Type, std::string("expected an element of ") + what);
    TmP c = norm_.normalize(T->t, n);
    if (c->k != want) fail(Code::Type, std::string("expected an element of ") + what);
    return c;
  };
  switch (t->k) {
    case TmK::Var:
      if (t->ix < 0 || static_cast<std::size_t>(t->ix) >= n) fail(Code::Scope, "variable out of scope");
      return G.type_of(t->ix);
    case TmK::App: {
      TyP F = infer(G, t->a);
      if (F->k == TyK::Pi) {
        check(G, t->b, mk::el(F->t));
        return inst(F->B, t->b);
      }
      if (F->k == TyK::IotaArr) {
        check(G, t->b, mk::iota());
        return F->B;
      }
      fail(Code::Type, "applied term is not a function");
    }
    case TmK::Lam: {
      check(G, t->a, mk::u());
      TyP B = infer(G.extended(t->name, mk::el(t->a)), t->b);
      return mk::pi(t->name, t->a, B);
    }
    case TmK::AppExt: {
      TyP F = infer(G, t->a);
      TyP X = infer(G, t->b);
      if (!t->small) {
        if (F->k != TyK::PiExt) fail(Code::Type, "applied term is not an external function");
        if (X->k != TyK::ExtSort || X->ext != F->ext) fail(Code::Extern, "external argument has the wrong type");
        return inst(F->B, t->b);
      }
      TmP c = el_code(F, TmK::PiSmallExt, "a small external Pi");
      if (X->k != TyK::ExtSort || X->ext != c->ext) fail(Code::Extern, "external argument has the wrong type");
      return mk::el(inst(c->b, t->b));
    }
    case TmK::LamExt: {
      if (t->ext < 0 || static_cast<std::size_t>(t->ext) >= sig_.ext.types.size())
        fail(Code::Extern, "unknown external type");
      TyP B = infer(G.extended(t->name, mk::ext_sort(t->ext)), t->b);
      if (!t->small) return mk::pi_ext(t->name, t->ext, B);
      if (B->k != TyK::El) fail(Code::Type, "small external lambda must return an element of U");
      return mk::el(mk::pi_small_ext(t->name, t->ext, B->t));
    }
    case TmK::Top: return mk::u();
    case TmK::Tt: return mk::el(mk::top());
    case TmK::Sg:
      check(G, t->a, mk::u());
      check(G.extended(t->name, mk::el(t->a)), t->b, mk::u());
      return mk::u();
    case TmK::Pair:
      check(G, t->a, mk::u());
      check(G.extended(t->name, mk::el(t->a)), t->b, mk::u());
      check(G, t->c, mk::el(t->a));
      check(G, t->d, mk::el(inst(t->b, t->c)));
      return mk::el(mk::sg(t->name, t->a, t->b));
    case TmK::Proj1:
    case TmK::Proj2: {
      TmP s = el_code(infer(G, t->c), TmK::Sg, "a Sg type");
      if (t->k == TmK::Proj1) return mk::el(s->a);
      return mk::el(inst(s->b, mk::proj1(t->c)));
    }
    case TmK::IdSmall:
      check(G, t->a, mk::u());
      check(G, t->c, mk::el(t->a));
      check(G, t->d, mk::el(t->a));
      return mk::u();
    case TmK::Refl:
      check(G, t->a, mk::u());
      check(G, t->c, mk::el(t->a));
      return mk::el(mk::id_small(t->a, t->c, t->c));
    case TmK::ReflLarge:
      check_ty(G, t->A);
      check(G, t->c, t->A);
      return t->weak ? mk::id_weak(t->A, t->c, t->c) : mk::id_large(t->A, t->c, t->c);
    case TmK::JSmall:
    case TmK::JLarge: {
      TyP A;
      TyP pathTy;
      TmP reflT;
      if (t->k == TmK::JSmall) {
        check(G, t->a, mk::u());
        A = mk::el(t->a);
        pathTy = mk::el(mk::id_small(shift(t->a, 1), shift(t->c, 1), mk::var(0)));
        reflT = mk::refl(t->a, t->c);
      } else {
        check_ty(G, t->A);
        A = t->A;
        pathTy = mk::id_weak(shift(t->A, 1), shift(t->c, 1), mk::var(0));
        reflT = mk::refl_large(t->A, t->c, true);
      }
      check(G, t->c, A);
      check(G, t->e, A);
      Ctx GX = G.extended(t->name, A);
      check_ty(GX.extended(t->name2, pathTy), t->P);
      TyP closed = t->k == TmK::JSmall ? mk::el(mk::id_small(t->a, t->c, t->e)) : mk::id_weak(t->A, t->c, t->e);
      check(G, t->b, closed);
      check(G, t->d, inst2(t->P, t->c, reflT));
      return inst2(t->P, t->e, t->b);
    }
    case TmK::JBeta: {
      check(G, t->a, mk::u());
      TyP A = mk::el(t->a);
      check(G, t->c, A);
      TyP pathTy = mk::el(mk::id_small(shift(t->a, 1), shift(t->c, 1), mk::var(0)));
      check_ty(G.extended(t->name, A).extended(t->name2, pathTy), t->P);
      TyP at_refl = inst2(t->P, t->c, mk::refl(t->a, t->c));
      check(G, t->d, at_refl);
      return mk::id_weak(at_refl, mk::j_beta_lhs(*t), t->d);
    }
    case TmK::PiSmallExt:
      if (t->ext < 0 || static_cast<std::size_t>(t->ext) >= sig_.ext.types.size())
        fail(Code::Extern, "unknown external type");
      check(G.extended(t->name, mk::ext_sort(t->ext)), t->b, mk::u());
      return mk::u();
    case TmK::ExtCall: {
      if (t->ext < 0 || static_cast<std::size_t>(t->ext) >= sig_.ext.consts.size())
        fail(Code::Extern, "unknown external constant");
      const ExternConst& c = sig_.ext.consts[static_cast<std::size_t>(t->ext)];
      if (c.args.size() != t->args.size())
        fail(Code::Arity, "external constant " + c.name + " expects " + std::to_string(c.args.size()) +
                              " arguments, got " + std::to_string(t->args.size()));
      for (std::size_t i = 0; i < c.args.size(); ++i) {
        TyP X = infer(G, t->args[i]);
        if (X->k != TyK::ExtSort || X->ext != c.args[i])
          fail(Code::Extern, "argument " + std::to_string(i + 1) + " of " + c.name + " has the wrong type");
      }
      return mk::ext_sort(c.result);
    }
  }
  fail(Code::Type, "unknown term former");
}

void Checker::verify() const {
  Ctx G;
  for (const auto& e : sig_.ctx.entries) {
    check_ty(G, e.ty);
    G = G.extended(e.name, e.ty);
  }
}

// ---------------------------------------------------------------- builder

void Builder::push(std::string name, TyP ty) { ctx_ = ctx_.extended(std::move(name), std::move(ty)); }

void Builder::pop() { ctx_.entries.pop_back(); }

TyP Builder::whnf(const TyP& A) const { return chk_.norm().normalize(A, ctx_.size()); }

void Builder::expect(const Typed& t, const TyP& A, const std::string& what) const {
  if (!chk_.norm().conv(t.ty, A, ctx_.size())) type_mismatch(sig_, ctx_, what, A, t.ty);
}

Typed Builder::var(int ix) const { return {mk::var(ix), ctx_.type_of(ix)}; }

Typed Builder::app(const Typed& f, const Typed& x) const {
  TmP r = mk::app(f.tm, x.tm);
  gate(r);
  if (f.ty->k == TyK::Pi) {
    expect(x, mk::el(f.ty->t), "argument");
    return {r, inst(f.ty->B, x.tm)};
  }
  if (f.ty->k == TyK::IotaArr) {
    expect(x, mk::iota(), "argument");
    return {r, f.ty->B};
  }
  fail(Code::Type, "term of type " + print_ty(sig_, ctx_, f.ty) + " is not a function");
}

Typed Builder::app_ext(const Typed& f, const Typed& x) const {
  if (x.ty->k != TyK::ExtSort) fail(Code::Extern, "argument of an external function must be external");
  if (f.ty->k == TyK::PiExt) {
    TmP r = mk::app_ext(f.tm, x.tm, false);
    gate(r);
    if (x.ty->ext != f.ty->ext)
      fail(Code::Extern, "external argument should have type " + sig_.ext.types[static_cast<std::size_t>(f.ty->ext)]);
    return {r, inst(f.ty->B, x.tm)};
  }
  TyP F = whnf(f.ty);
  if (F->k == TyK::El && F->t->k == TmK::PiSmallExt) {
    TmP r = mk::app_ext(f.tm, x.tm, true);
    gate(r);
    if (x.ty->ext != F->t->ext)
      fail(Code::Extern, "external argument should have type " + sig_.ext.types[static_cast<std::size_t>(F->t->ext)]);
    return {r, mk::el(inst(F->t->b, x.tm))};
  }
  fail(Code::Type, "term of type " + print_ty(sig_, ctx_, f.ty) + " is not an external function");
}

Typed Builder::tt() const {
  gate(mk::tt());
  return {mk::tt(), mk::el(mk::top())};
}

Typed Builder::top() const {
  gate(mk::top());
  return {mk::top(), mk::u()};
}

Typed Builder::refl(const TyP& expected) const {
  TyP E = whnf(expected);
  const std::size_t n = ctx_.size();
  if (E->k == TyK::El && E->t->k == TmK::IdSmall) {
    TmP r = mk::refl(E->t->a, E->t->c);
    gate(r);
    if (!chk_.norm().conv(E->t->c, E->t->d, n))
      fail(Code::Type, "refl cannot prove " + print_ty(sig_, ctx_, expected));
    return {r, expected};
  }
  if (E->k == TyK::IdLarge || E->k == TyK::IDLarge) {
    TmP r = mk::refl_large(E->A, E->t, E->k == TyK::IDLarge);
    gate(r);
    if (!chk_.norm().conv(E->t, E->u, n)) fail(Code::Type, "refl cannot prove " + print_ty(sig_, ctx_, expected));
    return {r, expected};
  }
  fail(Code::Type, "refl checked against non-identity type " + print_ty(sig_, ctx_, expected));
}

Typed Builder::pair(const TyP& expected, const Typed& a, const Typed& b) const {
  TyP E = whnf(expected);
  if (E->k != TyK::El || E->t->k != TmK::Sg)
    fail(Code::Type, "pair checked against non-Sg type " + print_ty(sig_, ctx_, expected));
  const TmP& s = E->t;
  TmP r = mk::pair(s->name, s->a, s->b, a.tm, b.tm);
  gate(r);
  expect(a, mk::el(s->a), "first component");
  expect(b, mk::el(inst(s->b, a.tm)), "second component");
  return {r, expected};
}

Typed Builder::proj1(const Typed& t) const {
  TyP E = whnf(t.ty);
  TmP r = mk::proj1(t.tm);
  gate(r);
  if (E->k != TyK::El || E->t->k != TmK::Sg) fail(Code::Type, "proj1 of a non-pair " + print_ty(sig_, ctx_, t.ty));
  return {r, mk::el(E->t->a)};
}

Typed Builder::proj2(const Typed& t) const {
  TyP E = whnf(t.ty);
  TmP r = mk::proj2(t.tm);
  gate(r);
  if (E->k != TyK::El || E->t->k != TmK::Sg) fail(Code::Type, "proj2 of a non-pair " + print_ty(sig_, ctx_, t.ty));
  return {r, mk::el(inst(E->t->b, mk::proj1(t.tm)))};
}

Typed Builder::ext_call(int c, const std::vector<Typed>& args) const {
  std::vector<TmP> tms;
  for (const auto& a : args) tms.push_back(a.tm);
  TmP r = mk::ext_call(c, std::move(tms));
  gate(r);
  return {r, chk_.infer(ctx_, r)};
}

std::pair<TyP, TyP> Builder::j_binders(const Typed& path) const {
  TyP E = whnf(path.ty);
  if (E->k == TyK::El && E->t->k == TmK::IdSmall) {
    const TmP& id = E->t;
    return {mk::el(id->a), mk::el(mk::id_small(shift(id->a, 1), shift(id->c, 1), mk::var(0)))};
  }
  if (E->k == TyK::IDLarge) return {E->A, mk::id_weak(shift(E->A, 1), shift(E->t, 1), mk::var(0))};
  if (E->k == TyK::IdLarge) fail(Code::Profile, "J is not available for Id in profile " +
                                                    std::string(profile_name(sig_.profile)));
  fail(Code::Type, "J eliminates an identity proof, got " + print_ty(sig_, ctx_, path.ty));
}

TyP Builder::j_method_type(const Typed& path, const TyP& motive) const {
  TyP E = whnf(path.ty);
  if (E->k == TyK::El && E->t->k == TmK::IdSmall)
    return inst2(motive, E->t->c, mk::refl(E->t->a, E->t->c));
  if (E->k == TyK::IDLarge) return inst2(motive, E->t, mk::refl_large(E->A, E->t, true));
  j_binders(path);
  fail(Code::Type, "J eliminates an identity proof");
}

Typed Builder::j(const Typed& path, std::string x, std::string p, const TyP& motive, const Typed& pr) const {
  TyP E = whnf(path.ty);
  TmP r;
  TmP start, refl;
  if (E->k == TyK::El && E->t->k == TmK::IdSmall) {
    const TmP& id = E->t;
    start = id->c;
    refl = mk::refl(id->a, id->c);
    r = mk::j_small(id->a, id->c, std::move(x), std::move(p), motive, pr.tm, id->d, path.tm);
  } else if (E->k == TyK::IDLarge) {
    start = E->t;
    refl = mk::refl_large(E->A, E->t, true);
    r = mk::j_large(E->A, E->t, std::move(x), std::move(p), motive, pr.tm, E->u, path.tm);
  } else {
    j_binders(path);
    fail(Code::Type, "J eliminates an identity proof");
  }
  gate(r);
  expect(pr, inst2(motive, start, refl), "J method");
  return {r, inst2(motive, r->e, path.tm)};
}

Typed Builder::j_beta(const Typed& t, std::string x, std::string p, const TyP& motive, const Typed& pr) const {
  TyP E = whnf(t.ty);
  if (E->k != TyK::El) fail(Code::Type, "Jbeta needs a start point in a type of U");
  TmP r = mk::j_beta(E->t, t.tm, std::move(x), std::move(p), motive, pr.tm);
  gate(r);
  return {r, chk_.infer(ctx_, r)};
}

}  // namespace sigforge::core

#include <string>
#include <vector>

#include "sigforge/elab.hpp"

namespace sigforge::elab {

namespace {

using core::Builder;
using core::TmK;
using core::TmP;
using core::TyK;
using core::TyP;
using core::Typed;
namespace mk = core::mk;
using surface::RawExpr;
using surface::RawKind;

class Elab {
public:
  Elab(const core::Signature& sig) : sig_(sig), b_(sig) {}

  Builder& builder() { return b_; }

  TyP ty(const RawExpr& e) {
    return at(e, [&] { return ty_(e); });
  }

  Typed infer(const RawExpr& e) {
    return at(e, [&] { return infer_(e); });
  }

  Typed check(const RawExpr& e, const TyP& A) {
    return at(e, [&] { return check_(e, A); });
  }

private:
  const core::Signature& sig_;
  Builder b_;

  template <class F>
  auto at(const RawExpr& e, F f) -> decltype(f()) {
    try {
      return f();
    } catch (Error& err) {
      if (err.diag().span.end == 0) err.diag().span = e.span;
      throw;
    }
  }

  std::string pname() const { return std::string(profile_name(sig_.profile)); }

  void gate_ty(TyK k) const {
    core::Ty t;
    t.k = k;
    b_.checker().gate_ty(t);
  }

  void gate_tm(TmK k, bool flag = false) const {
    core::Tm t;
    t.k = k;
    t.small = flag;
    t.weak = flag;
    b_.checker().gate_tm(t);
  }

  int lookup(const std::string& n) const {
    const auto& es = b_.ctx().entries;
    for (std::size_t i = es.size(); i-- > 0;)
      if (es[i].name == n) return static_cast<int>(es.size() - 1 - i);
    return -1;
  }

  int extern_type(const RawExpr& e) const {
    if (e.kind != RawKind::Var) return -1;
    if (lookup(e.name) >= 0) return -1;
    return sig_.ext.find_type(e.name);
  }

  int require_extern_type(const RawExpr& e) const {
    int x = extern_type(e);
    if (x < 0) {
      if (e.kind == RawKind::Var && lookup(e.name) < 0 && sig_.ext.find_const(e.name) < 0)
        fail(Code::Scope, "unknown name " + e.name, e.span);
      fail(Code::Extern, "the domain of an external Pi must be an external type", e.span);
    }
    return x;
  }

  // ------------------------------------------------------------ types

  TyP ty_(const RawExpr& e) {
    switch (e.kind) {
      case RawKind::Iota: gate_ty(TyK::Iota); return mk::iota();
      case RawKind::SArr:
        gate_ty(TyK::IotaArr);
        return mk::iota_arr(ty(*e.a));
      case RawKind::U: gate_ty(TyK::U); return mk::u();
      case RawKind::El: {
        gate_ty(TyK::El);
        Typed t = check(*e.a, mk::u());
        return mk::el(t.tm);
      }
      case RawKind::PiInt: {
        if (e.a->kind == RawKind::Iota) {
          gate_ty(TyK::IotaArr);
          return mk::iota_arr(ty(*e.b));
        }
        gate_ty(TyK::Pi);
        if (extern_type(*e.a) >= 0)
          fail(Code::Extern, "external type " + e.a->name + " cannot be the domain of an internal Pi; use *>",
               e.a->span);
        Typed dom = check(*e.a, mk::u());
        b_.push(e.name, mk::el(dom.tm));
        TyP B = ty(*e.b);
        b_.pop();
        return mk::pi(e.name, dom.tm, B);
      }
      case RawKind::PiExt: {
        gate_ty(TyK::PiExt);
        int x = require_extern_type(*e.a);
        b_.push(e.name, mk::ext_sort(x));
        TyP B = ty(*e.b);
        b_.pop();
        return mk::pi_ext(e.name, x, B);
      }
      case RawKind::Id: {
        if (sig_.profile != Profile::Fqii) {
          if (sig_.profile == Profile::Simple) gate_ty(TyK::IdLarge);
          fail(Code::Profile, "Id on arbitrary types is not available in profile " + pname() + "; use El (Id a b)");
        }
        Typed t = infer(*e.a);
        Typed u = check(*e.b, t.ty);
        return mk::id_large(t.ty, t.tm, u.tm);
      }
      case RawKind::ID: {
        gate_ty(TyK::IDLarge);
        Typed t = infer(*e.a);
        Typed u = check(*e.b, t.ty);
        return mk::id_weak(t.ty, t.tm, u.tm);
      }
      case RawKind::Reflect: fail(Code::Profile, "equality reflection is not available in any profile");
      case RawKind::Var:
        if (extern_type(e) >= 0)
          fail(Code::Extern, "external type " + e.name + " can only be the domain of an external Pi");
        [[fallthrough]];
      default: {
        if (sig_.profile == Profile::Simple) fail(Code::Profile, "only iota and iota -> B are types in profile simple");
        Typed t = infer(e);
        if (t.ty->k == TyK::U)
          fail(Code::Type, "expected a type, got an element of U; write El (" + surface::pretty(e) + ")");
        fail(Code::Type, "expected a type, got a term of type " + core::print_ty(sig_, b_.ctx(), t.ty));
      }
    }
  }

  // ------------------------------------------------------------ terms

  Typed infer_(const RawExpr& e) {
    switch (e.kind) {
      case RawKind::Var: {
        int ix = lookup(e.name);
        if (ix >= 0) return b_.var(ix);
        int c = sig_.ext.find_const(e.name);
        if (c >= 0) return ext_call(e, c, {});
        if (sig_.ext.find_type(e.name) >= 0)
          fail(Code::Extern, "external type " + e.name + " is not an element of U");
        fail(Code::Scope, "unknown name " + e.name);
      }
      case RawKind::App: {
        std::vector<const RawExpr*> args;
        const RawExpr* h = &e;
        while (h->kind == RawKind::App) {
          args.insert(args.begin(), h->b.get());
          h = h->a.get();
        }
        if (h->kind == RawKind::Var && lookup(h->name) < 0) {
          int c = sig_.ext.find_const(h->name);
          if (c >= 0) return ext_call(e, c, args);
          if (sig_.ext.find_type(h->name) >= 0)
            fail(Code::Extern, "external type " + h->name + " cannot be applied", h->span);
        }
        Typed f = infer(*h);
        for (const RawExpr* a : args) f = at(*a, [&] { return apply(f, *a); });
        return f;
      }
      case RawKind::Top: return b_.top();
      case RawKind::Tt: return b_.tt();
      case RawKind::Sg: {
        gate_tm(TmK::Sg);
        Typed a = check(*e.a, mk::u());
        b_.push(e.name, mk::el(a.tm));
        Typed bb = check(*e.b, mk::u());
        b_.pop();
        return {mk::sg(e.name, a.tm, bb.tm), mk::u()};
      }
      case RawKind::Id: {
        gate_tm(TmK::IdSmall);
        Typed t = infer(*e.a);
        if (t.ty->k != TyK::El)
          fail(Code::Type, "Id in U relates elements of a type in U, got " + core::print_ty(sig_, b_.ctx(), t.ty),
               e.a->span);
        Typed u = check(*e.b, t.ty);
        return {mk::id_small(t.ty->t, t.tm, u.tm), mk::u()};
      }
      case RawKind::PiSmallExt: {
        gate_tm(TmK::PiSmallExt);
        int x = require_extern_type(*e.a);
        b_.push(e.name, mk::ext_sort(x));
        Typed body = check(*e.b, mk::u());
        b_.pop();
        return {mk::pi_small_ext(e.name, x, body.tm), mk::u()};
      }
      case RawKind::Proj1: gate_tm(TmK::Proj1); return b_.proj1(infer(*e.a));
      case RawKind::Proj2: gate_tm(TmK::Proj2); return b_.proj2(infer(*e.a));
      case RawKind::J: {
        gate_tm(TmK::JSmall);
        Typed path = infer(*e.c);
        auto [X, P] = at(*e.c, [&] { return b_.j_binders(path); });
        b_.push(e.name, X);
        b_.push(e.name2, P);
        TyP motive = ty(*e.a);
        b_.pop();
        b_.pop();
        Typed pr = check(*e.b, b_.j_method_type(path, motive));
        return b_.j(path, e.name, e.name2, motive, pr);
      }
      case RawKind::JBeta: {
        gate_tm(TmK::JBeta);
        Typed t = infer(*e.c);
        TyP E = b_.whnf(t.ty);
        if (E->k != TyK::El)
          fail(Code::Type, "Jbeta needs a start point in a type of U, got " + core::print_ty(sig_, b_.ctx(), t.ty),
               e.c->span);
        b_.push(e.name, t.ty);
        b_.push(e.name2, mk::el(mk::id_small(core::shift(E->t, 1), core::shift(t.tm, 1), mk::var(0))));
        TyP motive = ty(*e.a);
        b_.pop();
        b_.pop();
        Typed pr = check(*e.b, core::inst2(motive, t.tm, mk::refl(E->t, t.tm)));
        return b_.j_beta(t, e.name, e.name2, motive, pr);
      }
      case RawKind::Refl:
        gate_tm(TmK::Refl);
        fail(Code::Type, "cannot infer the type of refl here");
      case RawKind::Pair:
        gate_tm(TmK::Pair);
        fail(Code::Type, "cannot infer the type of a pair here");
      case RawKind::Reflect: fail(Code::Profile, "equality reflection is not available in any profile");
      case RawKind::Iota:
      case RawKind::SArr:
      case RawKind::U:
      case RawKind::El:
      case RawKind::PiInt:
      case RawKind::PiExt:
      case RawKind::ID:
        fail(Code::Type, "expected a term, got the type " + surface::pretty(e));
    }
    fail(Code::Type, "unknown expression");
  }

  Typed apply(const Typed& f, const RawExpr& a) {
    switch (f.ty->k) {
      case TyK::Pi: return b_.app(f, check(a, mk::el(f.ty->t)));
      case TyK::IotaArr: return b_.app(f, check(a, mk::iota()));
      case TyK::PiExt: return b_.app_ext(f, infer(a));
      default: break;
    }
    TyP F = b_.whnf(f.ty);
    if (F->k == TyK::El && F->t->k == TmK::PiSmallExt) return b_.app_ext(f, infer(a));
    fail(Code::Type, "term of type " + core::print_ty(sig_, b_.ctx(), f.ty) + " cannot be applied");
  }

  Typed ext_call(const RawExpr& e, int c, const std::vector<const RawExpr*>& args) {
    const core::ExternConst& k = sig_.ext.consts[static_cast<std::size_t>(c)];
    if (args.size() != k.args.size())
      fail(Code::Arity, "external constant " + k.name + " expects " + std::to_string(k.args.size()) +
                            " arguments, got " + std::to_string(args.size()));
    std::vector<Typed> xs;
    for (std::size_t i = 0; i < args.size(); ++i) {
      Typed x = infer(*args[i]);
      if (x.ty->k != TyK::ExtSort || x.ty->ext != k.args[i])
        fail(Code::Extern,
             "argument " + std::to_string(i + 1) + " of " + k.name + " must have external type " +
                 sig_.ext.types[static_cast<std::size_t>(k.args[i])],
             args[i]->span);
      xs.push_back(x);
    }
    return b_.ext_call(c, xs);
  }

  Typed check_(const RawExpr& e, const TyP& A) {
    if (e.kind == RawKind::Refl) return b_.refl(A);
    if (e.kind == RawKind::Pair) {
      gate_tm(TmK::Pair);
      TyP E = b_.whnf(A);
      if (E->k != TyK::El || E->t->k != TmK::Sg)
        fail(Code::Type, "pair checked against non-Sg type " + core::print_ty(sig_, b_.ctx(), A));
      Typed fst = check(*e.a, mk::el(E->t->a));
      Typed snd = check(*e.b, mk::el(core::inst(E->t->b, fst.tm)));
      return b_.pair(A, fst, snd);
    }
    Typed t = infer(e);
    b_.expect(t, A, "type mismatch");
    return t;
  }
};

}  // namespace

core::Signature elaborate(const surface::SigFile& f) {
  core::Signature sig;
  sig.profile = f.profile;
  sig.name = f.name;
  if (f.profile == Profile::Simple && !f.externs.empty())
    fail(Code::Profile, "external declarations are not available in profile simple", f.externs.front().span);
  for (const auto& x : f.externs) {
    if (x.is_type) {
      sig.ext.types.push_back(x.name);
      continue;
    }
    core::ExternConst c;
    c.name = x.name;
    for (const auto& a : x.arg_types) {
      int t = sig.ext.find_type(a);
      if (t < 0) fail(Code::Extern, "unknown external type " + a, x.span);
      c.args.push_back(t);
    }
    c.result = sig.ext.find_type(x.result_type);
    if (c.result < 0) fail(Code::Extern, "unknown external type " + x.result_type, x.span);
    sig.ext.consts.push_back(std::move(c));
  }
  for (const auto& entry : f.entries) {
    Elab el(sig);
    TyP A = el.ty(*entry.ty);
    sig.ctx = sig.ctx.extended(entry.name, A);
  }
  try {
    core::Checker(sig).verify();
  } catch (Error& e) {
    e.diag().message = "internal: elaborated signature failed verification: " + e.diag().message;
    throw;
  }
  return sig;
}

core::Signature elaborate_source(std::string_view source, std::string_view file) {
  try {
    surface::SigFile f = surface::parse_file(source);
    try {
      return elaborate(f);
    } catch (Error& e) {
      e.diag().profile = std::string(profile_name(f.profile));
      throw;
    }
  } catch (Error& e) {
    locate(e.diag(), source, file);
    throw;
  }
}

core::Typed elaborate_term(const core::Signature& sig, const surface::RawExpr& e) { return Elab(sig).infer(e); }

}  // namespace sigforge::elab

#include <string>
#include <vector>

#include "sigforge/core.hpp"

namespace sigforge::core {

Rules Rules::of(Profile p) {
  Rules r;
  switch (p) {
    case Profile::Simple:
    case Profile::Fqii:
      break;
    case Profile::HiitStrict:
      r.sigma_eta = true;
      r.ext_small_eta = true;
      break;
    case Profile::HiitWeak:
      r.pi_beta = false;
      r.pi_eta = false;
      r.sigma_beta = false;
      r.ext_small_beta = false;
      break;
  }
  return r;
}

namespace {

thread_local std::size_t g_steps = 0;
constexpr std::size_t kFuel = 20'000'000;

void tick() {
  if (++g_steps > kFuel) fail(Code::Unsupported, "evaluation fuel exhausted");
}

struct Val;
using V = std::shared_ptr<const Val>;
using Env = std::vector<V>;

struct Clo {
  Env env;
  TmP body;
};
struct TyClo {
  Env env;
  TyP ty;
};

enum class VK { Ne, Lam, LamExt, Top, Tt, Sg, Pair, IdSmall, Refl, ReflLarge, PiSmallExt, ExtCall, JBeta };
enum class SpK { App, AppExt, Proj1, Proj2, JSmall, JLarge };

struct Spine {
  SpK k = SpK::App;
  V arg;
  bool small = false;
  // J data; the spine's scrutinee is the path
  V a;
  TyClo A;
  V t, pr, u;
  TyClo P;
  std::string x, p;
};

struct Val {
  VK k = VK::Ne;
  int lvl = -1;  // variable head when >= 0
  V head;        // stuck non-variable head otherwise
  std::vector<Spine> sp;
  std::string name;
  int ext = -1;
  bool small = false, weak = false;
  Clo clo;
  V a, c, d;
  TyClo A;
  std::vector<V> args;
  std::string name2;
};

V vvar(int l) {
  auto v = std::make_shared<Val>();
  v->k = VK::Ne;
  v->lvl = l;
  return v;
}

V push_spine(const V& f, Spine s) {
  auto v = std::make_shared<Val>();
  v->k = VK::Ne;
  if (f->k == VK::Ne) {
    v->lvl = f->lvl;
    v->head = f->head;
    v->sp = f->sp;
  } else {
    v->head = f;
  }
  v->sp.push_back(std::move(s));
  return v;
}

Env extend(Env e, V v) {
  e.push_back(std::move(v));
  return e;
}

struct Machine {
  const Rules& r;

  V eval(const Env& env, const TmP& t) const {
    tick();
    switch (t->k) {
      case TmK::Var: return env[env.size() - 1 - static_cast<std::size_t>(t->ix)];
      case TmK::App: return apply(eval(env, t->a), eval(env, t->b));
      case TmK::Lam: {
        auto v = std::make_shared<Val>();
        v->k = VK::Lam;
        v->name = t->name;
        v->a = eval(env, t->a);
        v->clo = {env, t->b};
        return v;
      }
      case TmK::AppExt: return apply_ext(eval(env, t->a), eval(env, t->b), t->small);
      case TmK::LamExt: {
        auto v = std::make_shared<Val>();
        v->k = VK::LamExt;
        v->name = t->name;
        v->ext = t->ext;
        v->small = t->small;
        v->clo = {env, t->b};
        return v;
      }
      case TmK::Top:
      case TmK::Tt: {
        auto v = std::make_shared<Val>();
        v->k = t->k == TmK::Top ? VK::Top : VK::Tt;
        return v;
      }
      case TmK::Sg: {
        auto v = std::make_shared<Val>();
        v->k = VK::Sg;
        v->name = t->name;
        v->a = eval(env, t->a);
        v->clo = {env, t->b};
        return v;
      }
      case TmK::Pair: {
        auto v = std::make_shared<Val>();
        v->k = VK::Pair;
        v->name = t->name;
        v->a = eval(env, t->a);
        v->clo = {env, t->b};
        v->c = eval(env, t->c);
        v->d = eval(env, t->d);
        return v;
      }
      case TmK::Proj1: return proj(eval(env, t->c), true);
      case TmK::Proj2: return proj(eval(env, t->c), false);
      case TmK::IdSmall: {
        auto v = std::make_shared<Val>();
        v->k = VK::IdSmall;
        v->a = eval(env, t->a);
        v->c = eval(env, t->c);
        v->d = eval(env, t->d);
        return v;
      }
      case TmK::Refl: {
        auto v = std::make_shared<Val>();
        v->k = VK::Refl;
        v->a = eval(env, t->a);
        v->c = eval(env, t->c);
        return v;
      }
      case TmK::ReflLarge: {
        auto v = std::make_shared<Val>();
        v->k = VK::ReflLarge;
        v->A = {env, t->A};
        v->c = eval(env, t->c);
        v->weak = t->weak;
        return v;
      }
      case TmK::JSmall:
      case TmK::JLarge: {
        V path = eval(env, t->b);
        if (t->k == TmK::JLarge && r.j_large_beta && path->k == VK::ReflLarge) return eval(env, t->d);
        Spine s;
        s.k = t->k == TmK::JSmall ? SpK::JSmall : SpK::JLarge;
        if (t->k == TmK::JSmall) s.a = eval(env, t->a);
        else s.A = {env, t->A};
        s.t = eval(env, t->c);
        s.P = {env, t->P};
        s.pr = eval(env, t->d);
        s.u = eval(env, t->e);
        s.x = t->name;
        s.p = t->name2;
        return push_spine(path, std::move(s));
      }
      case TmK::JBeta: {
        auto v = std::make_shared<Val>();
        v->k = VK::JBeta;
        v->a = eval(env, t->a);
        v->c = eval(env, t->c);
        v->A = {env, t->P};
        v->d = eval(env, t->d);
        v->name = t->name;
        v->name2 = t->name2;
        return v;
      }
      case TmK::PiSmallExt: {
        auto v = std::make_shared<Val>();
        v->k = VK::PiSmallExt;
        v->name = t->name;
        v->ext = t->ext;
        v->clo = {env, t->b};
        return v;
      }
      case TmK::ExtCall: {
        auto v = std::make_shared<Val>();
        v->k = VK::ExtCall;
        v->ext = t->ext;
        for (const auto& a : t->args) v->args.push_back(eval(env, a));
        return v;
      }
    }
    fail(Code::Type, "core: unknown term former");
  }

  V inst(const Clo& c, V x) const { return eval(extend(c.env, std::move(x)), c.body); }

  V apply(const V& f, const V& x) const {
    if (f->k == VK::Lam && r.pi_beta) return inst(f->clo, x);
    Spine s;
    s.k = SpK::App;
    s.arg = x;
    return push_spine(f, std::move(s));
  }

  V apply_ext(const V& f, const V& x, bool small) const {
    bool beta = small ? r.ext_small_beta : r.ext_large_beta;
    if (f->k == VK::LamExt && beta) return inst(f->clo, x);
    Spine s;
    s.k = SpK::AppExt;
    s.arg = x;
    s.small = small;
    return push_spine(f, std::move(s));
  }

  V proj(const V& p, bool first) const {
    if (p->k == VK::Pair && r.sigma_beta) return first ? p->c : p->d;
    Spine s;
    s.k = first ? SpK::Proj1 : SpK::Proj2;
    return push_spine(p, std::move(s));
  }

  // ------------------------------------------------------------ readback

  TmP quote(int lvl, const V& v) const {
    tick();
    switch (v->k) {
      case VK::Ne: {
        TmP h = v->lvl >= 0 ? mk::var(lvl - v->lvl - 1) : quote(lvl, v->head);
        for (const auto& s : v->sp) h = quote_spine(lvl, h, s);
        return h;
      }
      case VK::Lam: return mk::lam(v->name, quote(lvl, v->a), quote(lvl + 1, inst(v->clo, vvar(lvl))));
      case VK::LamExt:
        return mk::lam_ext(v->name, v->ext, quote(lvl + 1, inst(v->clo, vvar(lvl))), v->small);
      case VK::Top: return mk::top();
      case VK::Tt: return mk::tt();
      case VK::Sg: return mk::sg(v->name, quote(lvl, v->a), quote(lvl + 1, inst(v->clo, vvar(lvl))));
      case VK::Pair:
        return mk::pair(v->name, quote(lvl, v->a), quote(lvl + 1, inst(v->clo, vvar(lvl))), quote(lvl, v->c),
                        quote(lvl, v->d));
      case VK::IdSmall: return mk::id_small(quote(lvl, v->a), quote(lvl, v->c), quote(lvl, v->d));
      case VK::Refl: return mk::refl(quote(lvl, v->a), quote(lvl, v->c));
      case VK::ReflLarge: return mk::refl_large(nf_ty(v->A.env, v->A.ty, lvl), quote(lvl, v->c), v->weak);
      case VK::PiSmallExt: return mk::pi_small_ext(v->name, v->ext, quote(lvl + 1, inst(v->clo, vvar(lvl))));
      case VK::JBeta: {
        TyP P = nf_ty(extend(extend(v->A.env, vvar(lvl)), vvar(lvl + 1)), v->A.ty, lvl + 2);
        return mk::j_beta(quote(lvl, v->a), quote(lvl, v->c), v->name, v->name2, P, quote(lvl, v->d));
      }
      case VK::ExtCall: {
        std::vector<TmP> args;
        for (const auto& a : v->args) args.push_back(quote(lvl, a));
        return mk::ext_call(v->ext, std::move(args));
      }
    }
    fail(Code::Type, "core: unknown value");
  }

  TmP quote_spine(int lvl, TmP h, const Spine& s) const {
    switch (s.k) {
      case SpK::App: return mk::app(std::move(h), quote(lvl, s.arg));
      case SpK::AppExt: return mk::app_ext(std::move(h), quote(lvl, s.arg), s.small);
      case SpK::Proj1: return mk::proj1(std::move(h));
      case SpK::Proj2: return mk::proj2(std::move(h));
      case SpK::JSmall:
      case SpK::JLarge: {
        TyP P = nf_ty(extend(extend(s.P.env, vvar(lvl)), vvar(lvl + 1)), s.P.ty, lvl + 2);
        if (s.k == SpK::JSmall)
          return mk::j_small(quote(lvl, s.a), quote(lvl, s.t), s.x, s.p, P, quote(lvl, s.pr), quote(lvl, s.u),
                             std::move(h));
        return mk::j_large(nf_ty(s.A.env, s.A.ty, lvl), quote(lvl, s.t), s.x, s.p, P, quote(lvl, s.pr),
                           quote(lvl, s.u), std::move(h));
      }
    }
    return h;
  }

  TyP nf_ty(const Env& env, const TyP& A, int lvl) const {
    tick();
    switch (A->k) {
      case TyK::Iota:
      case TyK::U:
      case TyK::ExtSort:
        return A;
      case TyK::IotaArr: return mk::iota_arr(nf_ty(env, A->B, lvl));
      case TyK::El: return mk::el(quote(lvl, eval(env, A->t)));
      case TyK::Pi:
        return mk::pi(A->name, quote(lvl, eval(env, A->t)), nf_ty(extend(env, vvar(lvl)), A->B, lvl + 1));
      case TyK::PiExt: return mk::pi_ext(A->name, A->ext, nf_ty(extend(env, vvar(lvl)), A->B, lvl + 1));
      case TyK::IdLarge:
      case TyK::IDLarge: {
        auto n = std::make_shared<Ty>(*A);
        n->A = nf_ty(env, A->A, lvl);
        n->t = quote(lvl, eval(env, A->t));
        n->u = quote(lvl, eval(env, A->u));
        return n;
      }
    }
    return A;
  }

  // ------------------------------------------------------------ conversion

  bool conv(int lvl, const V& a, const V& b) const {
    tick();
    if (a == b) return true;
    if (r.pi_eta && r.pi_beta && (a->k == VK::Lam || b->k == VK::Lam)) {
      V x = vvar(lvl);
      return conv(lvl + 1, apply(a, x), apply(b, x));
    }
    if (a->k == VK::LamExt || b->k == VK::LamExt) {
      bool small = a->k == VK::LamExt ? a->small : b->small;
      bool eta = small ? (r.ext_small_eta && r.ext_small_beta) : (r.ext_large_eta && r.ext_large_beta);
      if (eta) {
        V x = vvar(lvl);
        return conv(lvl + 1, apply_ext(a, x, small), apply_ext(b, x, small));
      }
    }
    if (r.sigma_eta && r.sigma_beta && (a->k == VK::Pair || b->k == VK::Pair))
      return conv(lvl, proj(a, true), proj(b, true)) && conv(lvl, proj(a, false), proj(b, false));
    if (a->k != b->k) return false;
    switch (a->k) {
      case VK::Ne: {
        if (a->lvl != b->lvl) return false;
        if (a->lvl < 0 && !conv(lvl, a->head, b->head)) return false;
        if (a->sp.size() != b->sp.size()) return false;
        for (std::size_t i = 0; i < a->sp.size(); ++i)
          if (!conv_spine(lvl, a->sp[i], b->sp[i])) return false;
        return true;
      }
      case VK::Lam:
        return conv(lvl, a->a, b->a) && conv(lvl + 1, inst(a->clo, vvar(lvl)), inst(b->clo, vvar(lvl)));
      case VK::LamExt:
      case VK::PiSmallExt:
        return a->ext == b->ext && a->small == b->small &&
               conv(lvl + 1, inst(a->clo, vvar(lvl)), inst(b->clo, vvar(lvl)));
      case VK::Top:
      case VK::Tt:
        return true;
      case VK::Sg:
        return conv(lvl, a->a, b->a) && conv(lvl + 1, inst(a->clo, vvar(lvl)), inst(b->clo, vvar(lvl)));
      case VK::Pair:
        return conv(lvl, a->c, b->c) && conv(lvl, a->d, b->d);
      case VK::IdSmall: return conv(lvl, a->a, b->a) && conv(lvl, a->c, b->c) && conv(lvl, a->d, b->d);
      case VK::Refl: return conv(lvl, a->c, b->c);
      case VK::ReflLarge: return a->weak == b->weak && conv(lvl, a->c, b->c);
      case VK::JBeta: {
        Env ea = extend(extend(a->A.env, vvar(lvl)), vvar(lvl + 1));
        Env eb = extend(extend(b->A.env, vvar(lvl)), vvar(lvl + 1));
        return conv(lvl, a->a, b->a) && conv(lvl, a->c, b->c) && conv(lvl, a->d, b->d) &&
               conv_ty(lvl + 2, ea, a->A.ty, eb, b->A.ty);
      }
      case VK::ExtCall: {
        if (a->ext != b->ext || a->args.size() != b->args.size()) return false;
        for (std::size_t i = 0; i < a->args.size(); ++i)
          if (!conv(lvl, a->args[i], b->args[i])) return false;
        return true;
      }
    }
    return false;
  }

  bool conv_spine(int lvl, const Spine& a, const Spine& b) const {
    if (a.k != b.k) return false;
    switch (a.k) {
      case SpK::App: return conv(lvl, a.arg, b.arg);
      case SpK::AppExt: return a.small == b.small && conv(lvl, a.arg, b.arg);
      case SpK::Proj1:
      case SpK::Proj2: return true;
      case SpK::JSmall:
      case SpK::JLarge: {
        Env ea = extend(extend(a.P.env, vvar(lvl)), vvar(lvl + 1));
        Env eb = extend(extend(b.P.env, vvar(lvl)), vvar(lvl + 1));
        if (!conv_ty(lvl + 2, ea, a.P.ty, eb, b.P.ty)) return false;
        if (a.k == SpK::JSmall) {
          if (!conv(lvl, a.a, b.a)) return false;
        } else if (!conv_ty(lvl, a.A.env, a.A.ty, b.A.env, b.A.ty)) {
          return false;
        }
        return conv(lvl, a.t, b.t) && conv(lvl, a.pr, b.pr) && conv(lvl, a.u, b.u);
      }
    }
    return false;
  }

  bool conv_ty(int lvl, const Env& ea, const TyP& A, const Env& eb, const TyP& B) const {
    tick();
    if (A->k != B->k) return false;
    switch (A->k) {
      case TyK::Iota:
      case TyK::U:
        return true;
      case TyK::ExtSort: return A->ext == B->ext;
      case TyK::IotaArr: return conv_ty(lvl, ea, A->B, eb, B->B);
      case TyK::El: return conv(lvl, eval(ea, A->t), eval(eb, B->t));
      case TyK::Pi:
        return conv(lvl, eval(ea, A->t), eval(eb, B->t)) &&
               conv_ty(lvl + 1, extend(ea, vvar(lvl)), A->B, extend(eb, vvar(lvl)), B->B);
      case TyK::PiExt:
        return A->ext == B->ext && conv_ty(lvl + 1, extend(ea, vvar(lvl)), A->B, extend(eb, vvar(lvl)), B->B);
      case TyK::IdLarge:
      case TyK::IDLarge:
        return conv_ty(lvl, ea, A->A, eb, B->A) && conv(lvl, eval(ea, A->t), eval(eb, B->t)) &&
               conv(lvl, eval(ea, A->u), eval(eb, B->u));
    }
    return false;
  }
};

Env neutral_env(std::size_t n) {
  Env e;
  e.reserve(n);
  for (std::size_t i = 0; i < n; ++i) e.push_back(vvar(static_cast<int>(i)));
  return e;
}

}  // namespace

TmP Normalizer::normalize(const TmP& t, std::size_t n) const {
  g_steps = 0;
  Machine m{rules_};
  return m.quote(static_cast<int>(n), m.eval(neutral_env(n), t));
}

TyP Normalizer::normalize(const TyP& A, std::size_t n) const {
  g_steps = 0;
  Machine m{rules_};
  return m.nf_ty(neutral_env(n), A, static_cast<int>(n));
}

bool Normalizer::conv(const TmP& a, const TmP& b, std::size_t n) const {
  g_steps = 0;
  Machine m{rules_};
  Env e = neutral_env(n);
  return m.conv(static_cast<int>(n), m.eval(e, a), m.eval(e, b));
}

bool Normalizer::conv(const TyP& a, const TyP& b, std::size_t n) const {
  g_steps = 0;
  Machine m{rules_};
  Env e = neutral_env(n);
  return m.conv_ty(static_cast<int>(n), e, a, e, b);
}

std::size_t Normalizer::last_steps() { return g_steps; }

}  // namespace sigforge::core

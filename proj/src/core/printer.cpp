#include <algorithm>
#include <string>
#include <vector>

#include "sigforge/core.hpp"
#include "sigforge/surface.hpp"

namespace sigforge::core {

namespace {

using surface::RawKind;
using surface::RawPtr;

struct ToRaw {
  const Signature& sig;
  std::vector<std::string> names;  // by level

  bool taken(const std::string& n) const {
    if (std::find(names.begin(), names.end(), n) != names.end()) return true;
    return sig.ext.find_type(n) >= 0 || sig.ext.find_const(n) >= 0;
  }

  std::string fresh(std::string base) {
    if (base.empty() || base == "_") base = "x";
    if (!taken(base)) return base;
    for (int i = 1;; ++i) {
      std::string c = base + std::to_string(i);
      if (!taken(c)) return c;
    }
  }

  RawPtr var(const std::string& n) { return surface::mk_var(n, {}); }

  std::string ext_type(int e) const {
    if (e < 0 || static_cast<std::size_t>(e) >= sig.ext.types.size()) return "?ext";
    return sig.ext.types[static_cast<std::size_t>(e)];
  }

  // Binds a name for a body printed under one binder.
  template <class F>
  auto under(const std::string& hint, bool used, F body) {
    std::string n = used ? fresh(hint) : "_";
    names.push_back(n == "_" ? fresh(hint) : n);
    auto r = body();
    names.pop_back();
    return std::make_pair(n, r);
  }

  RawPtr ty(const TyP& A) {
    switch (A->k) {
      case TyK::Iota: return surface::mk(RawKind::Iota, {});
      case TyK::IotaArr: return surface::mk(RawKind::SArr, {}, ty(A->B));
      case TyK::U: return surface::mk(RawKind::U, {});
      case TyK::El: return surface::mk(RawKind::El, {}, tm(A->t));
      case TyK::Pi: {
        RawPtr dom = tm(A->t);
        auto [n, cod] = under(A->name, mentions(A->B, 0), [&] { return ty(A->B); });
        return surface::mk_binder(RawKind::PiInt, n, dom, cod, {});
      }
      case TyK::PiExt: {
        auto [n, cod] = under(A->name, mentions(A->B, 0), [&] { return ty(A->B); });
        return surface::mk_binder(RawKind::PiExt, n, var(ext_type(A->ext)), cod, {});
      }
      case TyK::IdLarge:
      case TyK::IDLarge:
        return surface::mk(A->k == TyK::IdLarge ? RawKind::Id : RawKind::ID, {}, tm(A->t), tm(A->u));
      case TyK::ExtSort: return var(ext_type(A->ext));
    }
    return var("?");
  }

  RawPtr tm(const TmP& t) {
    switch (t->k) {
      case TmK::Var: {
        int l = static_cast<int>(names.size()) - 1 - t->ix;
        if (l < 0) return var("?" + std::to_string(t->ix));
        return var(names[static_cast<std::size_t>(l)]);
      }
      case TmK::App:
      case TmK::AppExt:
        return surface::mk(RawKind::App, {}, tm(t->a), tm(t->b));
      case TmK::Lam:
      case TmK::LamExt: {
        auto [n, body] = under(t->name, true, [&] { return surface::pretty(*tm(t->b)); });
        return var("(\\" + n + ". " + body + ")");
      }
      case TmK::Top: return surface::mk(RawKind::Top, {});
      case TmK::Tt: return surface::mk(RawKind::Tt, {});
      case TmK::Sg: {
        RawPtr a = tm(t->a);
        auto [n, b] = under(t->name, true, [&] { return tm(t->b); });
        auto r = surface::mk(RawKind::Sg, {}, a, b);
        auto m = std::make_shared<surface::RawExpr>(*r);
        m->name = n;
        return m;
      }
      case TmK::Pair: return surface::mk(RawKind::Pair, {}, tm(t->c), tm(t->d));
      case TmK::Proj1: return surface::mk(RawKind::Proj1, {}, tm(t->c));
      case TmK::Proj2: return surface::mk(RawKind::Proj2, {}, tm(t->c));
      case TmK::IdSmall: return surface::mk(RawKind::Id, {}, tm(t->c), tm(t->d));
      case TmK::Refl:
      case TmK::ReflLarge:
        return surface::mk(RawKind::Refl, {});
      case TmK::JSmall:
      case TmK::JLarge: {
        std::string x = fresh(t->name);
        names.push_back(x);
        std::string p = fresh(t->name2.empty() ? "p" : t->name2);
        names.push_back(p);
        RawPtr motive = ty(t->P);
        names.pop_back();
        names.pop_back();
        auto r = std::make_shared<surface::RawExpr>(*surface::mk(RawKind::J, {}, motive, tm(t->d), tm(t->b)));
        r->name = x;
        r->name2 = p;
        return r;
      }
      case TmK::JBeta: {
        std::string x = fresh(t->name);
        names.push_back(x);
        std::string p = fresh(t->name2.empty() ? "p" : t->name2);
        names.push_back(p);
        RawPtr motive = ty(t->P);
        names.pop_back();
        names.pop_back();
        auto r = std::make_shared<surface::RawExpr>(*surface::mk(RawKind::JBeta, {}, motive, tm(t->d), tm(t->c)));
        r->name = x;
        r->name2 = p;
        return r;
      }
      case TmK::PiSmallExt: {
        auto [n, b] = under(t->name, mentions(t->b, 0), [&] { return tm(t->b); });
        return surface::mk_binder(RawKind::PiSmallExt, n, var(ext_type(t->ext)), b, {});
      }
      case TmK::ExtCall: {
        std::string n = t->ext >= 0 && static_cast<std::size_t>(t->ext) < sig.ext.consts.size()
                            ? sig.ext.consts[static_cast<std::size_t>(t->ext)].name
                            : "?const";
        RawPtr r = var(n);
        for (const auto& a : t->args) r = surface::mk(RawKind::App, {}, r, tm(a));
        return r;
      }
    }
    return var("?");
  }
};

ToRaw make(const Signature& sig, const Ctx& G) {
  ToRaw r{sig, {}};
  for (const auto& e : G.entries) r.names.push_back(e.name);
  return r;
}

}  // namespace

std::string print_ty(const Signature& sig, const Ctx& G, const TyP& A) {
  ToRaw r = make(sig, G);
  return surface::pretty(*r.ty(A));
}

std::string print_tm(const Signature& sig, const Ctx& G, const TmP& t) {
  ToRaw r = make(sig, G);
  return surface::pretty(*r.tm(t));
}

std::string print_signature(const Signature& sig) {
  surface::SigFile f;
  f.profile = sig.profile;
  f.name = sig.name;
  for (const auto& t : sig.ext.types) f.externs.push_back({t, true, {}, "", {}});
  for (const auto& c : sig.ext.consts) {
    surface::ExternDecl d{c.name, false, {}, sig.ext.types[static_cast<std::size_t>(c.result)], {}};
    for (int a : c.args) d.arg_types.push_back(sig.ext.types[static_cast<std::size_t>(a)]);
    f.externs.push_back(std::move(d));
  }
  ToRaw r{sig, {}};
  for (const auto& e : sig.ctx.entries) {
    f.entries.push_back({e.name, r.ty(e.ty), {}});
    r.names.push_back(e.name);
  }
  return surface::pretty(f);
}

}  // namespace sigforge::core

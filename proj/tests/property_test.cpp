// Randomised checks of the substitution calculus and of the algebra
// interpretation's commutation with substitution. Failing samples are shrunk
// (context entries first, then term size) and printed.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "sigforge/amds.hpp"
#include "sigforge/core.hpp"
#include "sigforge/inner.hpp"

namespace {

using namespace sigforge;
using core::Ctx;
using core::Sub;
using core::TmK;
using core::TmP;
using core::TyK;
using core::TyP;
namespace mk = core::mk;

using Rng = std::mt19937_64;

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

core::Signature make_sig(Profile p) {
  core::Signature sig;
  sig.profile = p;
  sig.name = "P";
  if (p != Profile::Simple) {
    sig.ext.types = {"Nat0"};
    sig.ext.consts = {{"zero0", {}, 0}, {"suc0", {0}, 0}};
  }
  return sig;
}

// ---------------------------------------------------------------- raw syntax
// Scope-correct syntax over the formers a profile admits. Typing is not
// needed for the substitution laws, which are purely syntactic.
class RawGen {
public:
  RawGen(Profile p, Rng& rng) : p_(p), rng_(rng) {}

  TmP tm(int n, int depth) {
    std::vector<TmK> ks;
    for (TmK k : all_tm_)
      if (allowed(k) && (depth > 0 || leaf(k)) && (k != TmK::Var || n > 0)) ks.push_back(k);
    TmK k = ks[static_cast<std::size_t>(pick(rng_, static_cast<int>(ks.size())))];
    int d = depth - 1;
    switch (k) {
      case TmK::Var: return mk::var(pick(rng_, n));
      case TmK::App: return mk::app(tm(n, d), tm(n, d));
      case TmK::Lam: return mk::lam("x", tm(n, d), tm(n + 1, d));
      case TmK::AppExt: return mk::app_ext(tm(n, d), tm(n, d), small_flag(k));
      case TmK::LamExt: return mk::lam_ext("i", 0, tm(n + 1, d), small_flag(k));
      case TmK::Top: return mk::top();
      case TmK::Tt: return mk::tt();
      case TmK::Sg: return mk::sg("x", tm(n, d), tm(n + 1, d));
      case TmK::Pair: return mk::pair("x", tm(n, d), tm(n + 1, d), tm(n, d), tm(n, d));
      case TmK::Proj1: return mk::proj1(tm(n, d));
      case TmK::Proj2: return mk::proj2(tm(n, d));
      case TmK::IdSmall: return mk::id_small(tm(n, d), tm(n, d), tm(n, d));
      case TmK::Refl: return mk::refl(tm(n, d), tm(n, d));
      case TmK::ReflLarge: return mk::refl_large(ty(n, d), tm(n, d), p_ == Profile::HiitWeak);
      case TmK::JSmall:
        return mk::j_small(tm(n, d), tm(n, d), "x", "p", ty(n + 2, d), tm(n, d), tm(n, d), tm(n, d));
      case TmK::JLarge:
        return mk::j_large(ty(n, d), tm(n, d), "x", "p", ty(n + 2, d), tm(n, d), tm(n, d), tm(n, d));
      case TmK::JBeta: return mk::j_beta(tm(n, d), tm(n, d), "x", "p", ty(n + 2, d), tm(n, d));
      case TmK::PiSmallExt: return mk::pi_small_ext("i", 0, tm(n + 1, d));
      case TmK::ExtCall: return coin(rng_) ? mk::ext_call(0, {}) : mk::ext_call(1, {tm(n, d)});
    }
    return mk::var(0);
  }

  TyP ty(int n, int depth) {
    std::vector<TyK> ks;
    for (TyK k : all_ty_)
      if (core::former_allowed_ty(p_, k) && (depth > 0 || k == TyK::Iota || k == TyK::U || k == TyK::ExtSort))
        ks.push_back(k);
    TyK k = ks[static_cast<std::size_t>(pick(rng_, static_cast<int>(ks.size())))];
    int d = depth - 1;
    switch (k) {
      case TyK::Iota: return mk::iota();
      case TyK::IotaArr: return mk::iota_arr(ty(n, d));
      case TyK::U: return mk::u();
      case TyK::El: return mk::el(tm(n, d));
      case TyK::Pi: return mk::pi("x", tm(n, d), ty(n + 1, d));
      case TyK::PiExt: return mk::pi_ext("i", 0, ty(n + 1, d));
      case TyK::IdLarge: return mk::id_large(ty(n, d), tm(n, d), tm(n, d));
      case TyK::IDLarge: return mk::id_weak(ty(n, d), tm(n, d), tm(n, d));
      case TyK::ExtSort: return mk::ext_sort(0);
    }
    return mk::u();
  }

  Sub sub(std::size_t dom, std::size_t cod, int depth) {
    Sub s;
    s.dom = dom;
    for (std::size_t l = 0; l < cod; ++l) s.terms.push_back(tm(static_cast<int>(dom), depth));
    return s;
  }

private:
  Profile p_;
  Rng& rng_;
  static constexpr TmK all_tm_[] = {TmK::Var,   TmK::App,     TmK::Lam,       TmK::AppExt,    TmK::LamExt,
                                    TmK::Top,   TmK::Tt,      TmK::Sg,        TmK::Pair,      TmK::Proj1,
                                    TmK::Proj2, TmK::IdSmall, TmK::Refl,      TmK::ReflLarge, TmK::JSmall,
                                    TmK::JLarge, TmK::JBeta,  TmK::PiSmallExt, TmK::ExtCall};
  static constexpr TyK all_ty_[] = {TyK::Iota, TyK::IotaArr, TyK::U,       TyK::El,     TyK::Pi,
                                    TyK::PiExt, TyK::IdLarge, TyK::IDLarge, TyK::ExtSort};

  bool allowed(TmK k) const {
    return core::former_allowed_tm(p_, k, false) || core::former_allowed_tm(p_, k, true);
  }
  bool small_flag(TmK k) {
    bool both = core::former_allowed_tm(p_, k, false) && core::former_allowed_tm(p_, k, true);
    return both ? coin(rng_) : core::former_allowed_tm(p_, k, true);
  }
  static bool leaf(TmK k) { return k == TmK::Var || k == TmK::Top || k == TmK::Tt; }
};

// ---------------------------------------------------------------- typed syntax
// Well-typed contexts, terms and substitutions for the simple and fqii
// profiles, built from variable spines and introduction forms.
class TypedGen {
public:
  TypedGen(const core::Signature& sig, Rng& rng) : sig_(sig), chk_(sig), rng_(rng) {}

  const core::Checker& checker() const { return chk_; }

  TyP norm(const Ctx& G, const TyP& A) const { return chk_.norm().normalize(A, G.size()); }
  bool conv(const Ctx& G, const TyP& A, const TyP& B) const { return chk_.norm().conv(A, B, G.size()); }

  TyP ty(const Ctx& G, int depth) {
    if (sig_.profile == Profile::Simple) {
      TyP A = mk::iota();
      for (int k = pick(rng_, depth + 1); k > 0; --k) A = mk::iota_arr(A);
      return A;
    }
    switch (depth > 0 ? pick(rng_, 6) : pick(rng_, 2)) {
      case 0: return mk::u();
      case 1:
      case 5:
        if (TmP a = at(G, mk::u(), 1)) return mk::el(a);
        return mk::u();
      case 2:
        if (TmP a = at(G, mk::u(), 1)) return mk::pi("x", a, ty(G.extended("x", mk::el(a)), depth - 1));
        return mk::u();
      case 3: return mk::pi_ext("i", 0, ty(G.extended("i", mk::ext_sort(0)), depth - 1));
      default: {
        TmP a = at(G, mk::u(), 1);
        if (!a) return mk::u();
        TyP A = mk::el(a);
        TmP t = at(G, A, 1), u = coin(rng_) ? t : at(G, A, 1);
        if (!t || !u) return A;
        switch (sig_.profile) {
          case Profile::Fqii: return mk::id_large(A, t, u);
          case Profile::HiitWeak:
            if (coin(rng_)) return mk::id_weak(A, t, u);
            [[fallthrough]];
          default: return mk::el(mk::id_small(a, t, u));
        }
      }
    }
  }

  // A term of type A, or null when none was found.
  TmP at(const Ctx& G, const TyP& A, int depth) {
    TyP nA = norm(G, A);
    std::vector<TmP> cands;
    std::vector<int> ixs(G.size());
    for (std::size_t i = 0; i < ixs.size(); ++i) ixs[i] = static_cast<int>(i);
    std::shuffle(ixs.begin(), ixs.end(), rng_);
    for (int ix : ixs) {
      if (cands.size() >= 2) break;
      if (TmP s = spine_to(G, mk::var(ix), G.type_of(ix), nA, depth)) cands.push_back(s);
    }
    if (depth > 0 && sig_.profile != Profile::Simple) {
      if (nA->k == TyK::Pi) {
        if (TmP b = at(G.extended(nA->name, mk::el(nA->t)), nA->B, depth - 1))
          cands.push_back(mk::lam(nA->name, nA->t, b));
      } else if (nA->k == TyK::PiExt) {
        if (TmP b = at(G.extended(nA->name, mk::ext_sort(nA->ext)), nA->B, depth - 1))
          cands.push_back(mk::lam_ext(nA->name, nA->ext, b, false));
      } else if (nA->k == TyK::ExtSort) {
        if (coin(rng_) && depth > 0) {
          if (TmP x = at(G, nA, depth - 1)) cands.push_back(mk::ext_call(1, {x}));
        }
        cands.push_back(mk::ext_call(0, {}));
      }
    }
    if ((nA->k == TyK::IdLarge || nA->k == TyK::IDLarge) && chk_.norm().conv(nA->t, nA->u, G.size()))
      cands.push_back(mk::refl_large(nA->A, nA->t, nA->k == TyK::IDLarge));
    if (hiit() && depth > 0) hiit_intros(G, nA, depth, cands);
    if (sig_.profile == Profile::HiitWeak && depth > 0 && coin(rng_, 0.3))
      if (TmP j = j_at(G, nA, depth)) cands.push_back(j);
    if (cands.empty()) return nullptr;
    return cands[static_cast<std::size_t>(pick(rng_, static_cast<int>(cands.size())))];
  }

  // Any term, by applying a variable to a random number of arguments, a
  // lambda around such a term, or a term of a random type.
  TmP any(const Ctx& G, int depth) {
    if (hiit() && depth > 0 && coin(rng_, 0.3)) {
      if (sig_.profile == Profile::HiitWeak && coin(rng_, 0.2))
        if (TmP jb = j_beta(G, depth)) return jb;
      if (TmP t = at(G, ty(G, 1), depth)) return t;
    }
    if (sig_.profile != Profile::Simple && depth > 0 && coin(rng_, 0.2)) {
      if (TmP a = at(G, mk::u(), 1))
        if (TmP b = any(G.extended("x", mk::el(a)), depth - 1)) return mk::lam("x", a, b);
    }
    if (G.size() == 0) return nullptr;
    std::vector<int> fns;
    for (int i = 0; i < static_cast<int>(G.size()); ++i) {
      TyK k = norm(G, G.type_of(i))->k;
      if (k == TyK::Pi || k == TyK::IotaArr || k == TyK::PiExt) fns.push_back(i);
    }
    int ix = !fns.empty() && coin(rng_, 0.75) ? fns[static_cast<std::size_t>(pick(rng_, static_cast<int>(fns.size())))]
                                              : pick(rng_, static_cast<int>(G.size()));
    TmP head = mk::var(ix);
    TyP T = G.type_of(ix);
    for (int k = 1 + pick(rng_, 4); k > 0 && depth > 0; --k) {
      auto step = apply(G, head, T, depth);
      if (!step) break;
      std::tie(head, T) = *step;
    }
    return head;
  }

  Ctx ctx(int n) {
    Ctx G;
    for (int i = 0; i < n; ++i) G = G.extended("q" + std::to_string(i), i == 0 ? first_ty() : ty(G, 2));
    return G;
  }

  // A well-typed substitution into G (terms in the returned context), made of
  // weakenings and instantiations.
  std::pair<Ctx, Sub> sub(const Ctx& G) {
    std::size_t n = G.size();
    if (n > 0 && coin(rng_)) {
      auto p = static_cast<std::size_t>(pick(rng_, static_cast<int>(n)));
      Ctx pre = prefix(G, p);
      if (TmP u = at(pre, G.entries[p].ty, 2)) {
        Sub s0 = core::sub_ext(core::sub_id(p), u);
        return {transport(G, p + 1, pre, s0), lifts(s0, n - p - 1)};
      }
    }
    auto p = static_cast<std::size_t>(pick(rng_, static_cast<int>(n) + 1));
    Ctx pre = prefix(G, p);
    pre = pre.extended("w" + std::to_string(fresh_++), ty(pre, 1));
    Sub s0 = core::sub_wk(p, 1);
    return {transport(G, p, pre, s0), lifts(s0, n - p)};
  }

  // Whether every entry is a type in its prefix.
  bool ctx_ok(const Ctx& G) const {
    try {
      for (std::size_t i = 0; i < G.size(); ++i) chk_.check_ty(prefix(G, i), G.entries[i].ty);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  // Whether s is a substitution from D into G.
  bool sub_ok(const Ctx& D, const Sub& s, const Ctx& G) const {
    if (s.dom != D.size() || s.cod() != G.size()) return false;
    try {
      for (std::size_t l = 0; l < s.cod(); ++l) {
        Sub part{s.dom, std::vector<TmP>(s.terms.begin(), s.terms.begin() + static_cast<std::ptrdiff_t>(l))};
        chk_.check(D, s.terms[l], core::subst(G.entries[l].ty, part));
      }
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  static Ctx prefix(const Ctx& G, std::size_t p) {
    Ctx c;
    c.entries.assign(G.entries.begin(), G.entries.begin() + static_cast<std::ptrdiff_t>(p));
    return c;
  }

private:
  const core::Signature& sig_;
  core::Checker chk_;
  Rng& rng_;
  int fresh_ = 0;

  bool hiit() const { return sig_.profile == Profile::HiitStrict || sig_.profile == Profile::HiitWeak; }

  // Introduction forms of the universe and of its element types.
  void hiit_intros(const Ctx& G, const TyP& nA, int depth, std::vector<TmP>& cands) {
    int d = depth - 1;
    if (nA->k == TyK::U) {
      cands.push_back(mk::top());
      if (TmP a = at(G, mk::u(), d)) {
        if (TmP b = at(G.extended("x", mk::el(a)), mk::u(), d)) cands.push_back(mk::sg("x", a, b));
        TmP t = at(G, mk::el(a), d), u = coin(rng_) ? t : at(G, mk::el(a), d);
        if (t && u) cands.push_back(mk::id_small(a, t, u));
      }
      if (TmP b = at(G.extended("i", mk::ext_sort(0)), mk::u(), d)) cands.push_back(mk::pi_small_ext("i", 0, b));
      return;
    }
    if (nA->k != TyK::El) return;
    const core::Tm& c = *nA->t;
    switch (c.k) {
      case TmK::Top: cands.push_back(mk::tt()); break;
      case TmK::Sg:
        if (TmP x = at(G, mk::el(c.a), d))
          if (TmP y = at(G, mk::el(core::inst(c.b, x)), d)) cands.push_back(mk::pair(c.name, c.a, c.b, x, y));
        break;
      case TmK::IdSmall:
        if (chk_.norm().conv(c.c, c.d, G.size())) cands.push_back(mk::refl(c.a, c.c));
        break;
      case TmK::PiSmallExt:
        if (TmP b = at(G.extended(c.name, mk::ext_sort(c.ext)), mk::el(c.b), d))
          cands.push_back(mk::lam_ext(c.name, c.ext, b, true));
        break;
      default: break;
    }
  }

  // J over a path variable with a constant motive, at type A.
  TmP j_at(const Ctx& G, const TyP& A, int depth) {
    if (A->k == TyK::ExtSort) return nullptr;
    for (int ix = 0; ix < static_cast<int>(G.size()); ++ix) {
      TyP T = norm(G, G.type_of(ix));
      bool small = T->k == TyK::El && T->t->k == TmK::IdSmall;
      if (!small && T->k != TyK::IDLarge) continue;
      TmP pr = at(G, A, depth - 1);
      if (!pr) return nullptr;
      TyP P = core::shift(A, 2);
      if (small) return mk::j_small(T->t->a, T->t->c, "y", "e", P, pr, T->t->d, mk::var(ix));
      return mk::j_large(T->A, T->t, "y", "e", P, pr, T->u, mk::var(ix));
    }
    return nullptr;
  }

  // The propositional computation rule at a random point and motive.
  TmP j_beta(const Ctx& G, int depth) {
    TmP a = at(G, mk::u(), 1);
    if (!a) return nullptr;
    TmP t = at(G, mk::el(a), depth - 1);
    TyP A = ty(G, 1);
    TmP pr = t ? at(G, A, depth - 1) : nullptr;
    if (!pr) return nullptr;
    return mk::j_beta(a, t, "y", "e", core::shift(A, 2), pr);
  }

  TyP first_ty() { return sig_.profile == Profile::Simple ? mk::iota() : mk::u(); }

  std::optional<std::pair<TmP, TyP>> apply(const Ctx& G, const TmP& head, const TyP& T, int depth) {
    TyP nT = norm(G, T);
    switch (nT->k) {
      case TyK::Pi: {
        TmP x = at(G, mk::el(nT->t), depth - 1);
        if (!x) return std::nullopt;
        return std::pair{mk::app(head, x), core::inst(nT->B, x)};
      }
      case TyK::IotaArr: {
        TmP x = at(G, mk::iota(), depth - 1);
        if (!x) return std::nullopt;
        return std::pair{mk::app(head, x), nT->B};
      }
      case TyK::PiExt: {
        TmP x = at(G, mk::ext_sort(nT->ext), depth - 1);
        if (!x) return std::nullopt;
        return std::pair{mk::app_ext(head, x, false), core::inst(nT->B, x)};
      }
      case TyK::El:
        if (nT->t->k == TmK::Sg) {
          if (coin(rng_)) return std::pair{mk::proj1(head), mk::el(nT->t->a)};
          return std::pair{mk::proj2(head), mk::el(core::inst(nT->t->b, mk::proj1(head)))};
        }
        if (nT->t->k == TmK::PiSmallExt) {
          TmP x = at(G, mk::ext_sort(nT->t->ext), depth - 1);
          if (!x) return std::nullopt;
          return std::pair{mk::app_ext(head, x, true), mk::el(core::inst(nT->t->b, x))};
        }
        return std::nullopt;
      default: return std::nullopt;
    }
  }

  TmP spine_to(const Ctx& G, TmP head, TyP T, const TyP& target, int depth) {
    for (int steps = 0; steps < 4; ++steps) {
      if (conv(G, T, target)) return head;
      if (depth <= 0) return nullptr;
      auto step = apply(G, head, T, depth);
      if (!step) return nullptr;
      std::tie(head, T) = *step;
    }
    return nullptr;
  }

  static Sub lifts(Sub s, std::size_t k) {
    for (; k > 0; --k) s = core::sub_lift(s);
    return s;
  }

  // Entries of G from level `from` on, moved along s0 : Sub pre G[<from].
  static Ctx transport(const Ctx& G, std::size_t from, Ctx pre, const Sub& s0) {
    for (std::size_t j = from; j < G.size(); ++j)
      pre = pre.extended(G.entries[j].name, core::subst(G.entries[j].ty, lifts(s0, j - from)));
    return pre;
  }
};

// ---------------------------------------------------------------- helpers
int depth_of(const TyP& A);
int depth_of(const TmP& t) {
  if (!t) return 0;
  int d = 0;
  for (const TmP& x : {t->a, t->b, t->c, t->d, t->e}) d = std::max(d, depth_of(x));
  for (const TmP& x : t->args) d = std::max(d, depth_of(x));
  d = std::max({d, depth_of(t->A), depth_of(t->P)});
  return d + 1;
}
int depth_of(const TyP& A) {
  if (!A) return 0;
  return std::max({depth_of(A->A), depth_of(A->B), depth_of(A->t), depth_of(A->u)}) + 1;
}

int sub_size(const Sub& s) {
  int d = 0;
  for (const auto& t : s.terms) d += depth_of(t);
  return d;
}

// Children of t that live in t's own scope.
std::vector<TmP> same_scope_children(const TmP& t) {
  std::vector<TmP> out;
  auto add = [&](const TmP& x) {
    if (x) out.push_back(x);
  };
  switch (t->k) {
    case TmK::Lam:
    case TmK::Sg: add(t->a); break;
    case TmK::LamExt:
    case TmK::PiSmallExt:
    case TmK::Var:
    case TmK::Top:
    case TmK::Tt: break;
    case TmK::Pair:
      add(t->a);
      add(t->c);
      add(t->d);
      break;
    case TmK::ExtCall:
      for (const auto& x : t->args) add(x);
      break;
    default:
      for (const TmP& x : {t->a, t->b, t->c, t->d, t->e}) add(x);
  }
  return out;
}

// Drops the variable at level l from a context of length n.
Sub strengthening(std::size_t n, std::size_t l) {
  Sub s;
  s.dom = n - 1;
  for (std::size_t m = 0; m < n; ++m) {
    if (m < l) s.terms.push_back(mk::var(static_cast<int>(n - 2 - m)));
    else if (m == l) s.terms.push_back(mk::top());
    else s.terms.push_back(mk::var(static_cast<int>(n - 1 - m)));
  }
  return s;
}

bool mentions_level(const TmP& t, std::size_t n, std::size_t l) { return core::mentions(t, static_cast<int>(n - 1 - l)); }
bool mentions_level(const TyP& A, std::size_t n, std::size_t l) { return core::mentions(A, static_cast<int>(n - 1 - l)); }

// Annotation-free form: ascriptions, binder domains and equation types go.
inner::T strip(const inner::T& t) {
  if (!t) return t;
  if (t->k == inner::K::The) return strip(t->b);
  auto n = std::make_shared<inner::Term>(*t);
  n->a = strip(t->a);
  n->b = strip(t->b);
  n->c = strip(t->c);
  if (t->k == inner::K::Lam || t->k == inner::K::Eq || t->k == inner::K::Refl) n->a = nullptr;
  return n;
}

bool same_up_to_annotations(const inner::T& a, const inner::T& b) {
  return inner::alpha_eq(strip(inner::simplify(a)), strip(inner::simplify(b)));
}

// ---------------------------------------------------------------- samples
struct Sample {
  Ctx G;       // t lives here; sigma : Sub D G
  Ctx D;       // delta : Sub E D
  Ctx E;
  TmP t;
  Sub sigma, delta;
};

using Property = std::function<std::string(const Sample&)>;  // empty when it holds
using Valid = std::function<bool(const Sample&)>;

std::pair<std::size_t, int> measure(const Sample& s) {
  return {s.G.size() + s.D.size(), depth_of(s.t) + sub_size(s.sigma) + sub_size(s.delta)};
}

// One-step reductions of a sample: drop an unused entry, then shrink terms.
std::vector<Sample> shrink_steps(const Sample& s) {
  std::vector<Sample> out;
  std::size_t n = s.G.size();
  for (std::size_t l = 0; l < n; ++l) {
    if (mentions_level(s.t, n, l)) continue;
    bool used = false;
    for (std::size_t j = l + 1; j < n && !used; ++j) used = mentions_level(s.G.entries[j].ty, j, l);
    if (used) continue;
    Sample r = s;
    r.t = core::subst(s.t, strengthening(n, l));
    r.G.entries.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == l) continue;
      TyP A = s.G.entries[j].ty;
      if (j > l) A = core::subst(A, strengthening(j, l));
      r.G.entries.push_back({s.G.entries[j].name, A});
    }
    r.sigma.terms.erase(r.sigma.terms.begin() + static_cast<std::ptrdiff_t>(l));
    out.push_back(std::move(r));
  }
  std::size_t m = s.D.size();
  for (std::size_t l = 0; l < m; ++l) {
    bool used = false;
    for (const auto& x : s.sigma.terms) used = used || mentions_level(x, m, l);
    for (std::size_t j = l + 1; j < m && !used; ++j) used = mentions_level(s.D.entries[j].ty, j, l);
    if (used) continue;
    Sample r = s;
    for (auto& x : r.sigma.terms) x = core::subst(x, strengthening(m, l));
    r.sigma.dom = m - 1;
    r.D.entries.clear();
    for (std::size_t j = 0; j < m; ++j) {
      if (j == l) continue;
      TyP A = s.D.entries[j].ty;
      if (j > l) A = core::subst(A, strengthening(j, l));
      r.D.entries.push_back({s.D.entries[j].name, A});
    }
    if (!r.delta.terms.empty()) r.delta.terms.erase(r.delta.terms.begin() + static_cast<std::ptrdiff_t>(l));
    out.push_back(std::move(r));
  }
  for (const TmP& c : same_scope_children(s.t)) {
    Sample r = s;
    r.t = c;
    out.push_back(std::move(r));
  }
  auto shrink_sub = [&](Sub Sample::*which) {
    const Sub& sub = s.*which;
    for (std::size_t l = 0; l < sub.cod(); ++l)
      for (const TmP& c : same_scope_children(sub.terms[l])) {
        Sample r = s;
        (r.*which).terms[l] = c;
        out.push_back(std::move(r));
      }
  };
  shrink_sub(&Sample::sigma);
  shrink_sub(&Sample::delta);
  return out;
}

Sample shrink(Sample s, const Property& prop, const Valid& valid) {
  for (bool progress = true; progress;) {
    progress = false;
    for (Sample& c : shrink_steps(s)) {
      if (measure(c) >= measure(s) || !valid(c) || prop(c).empty()) continue;
      s = std::move(c);
      progress = true;
      break;
    }
  }
  return s;
}

std::string show(const core::Signature& sig, const Ctx& G, const TmP& t) {
  try {
    return core::print_tm(sig, G, t);
  } catch (const std::exception&) {
    return "<unprintable>";
  }
}

std::string show_ctx(const core::Signature& sig, const Ctx& G) {
  std::string out = "(";
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (i) out += ", ";
    std::string ty;
    try {
      ty = core::print_ty(sig, TypedGen::prefix(G, i), G.entries[i].ty);
    } catch (const std::exception&) {
      ty = "<unprintable>";
    }
    out += G.entries[i].name + " : " + ty;
  }
  return out + ")";
}

std::string show_sub(const core::Signature& sig, const Ctx& dom, const Sub& s) {
  std::string out = "[";
  for (std::size_t l = 0; l < s.cod(); ++l) out += (l ? ", " : "") + show(sig, dom, s.terms[l]);
  return out + "]";
}

void report(const core::Signature& sig, const Sample& s, const std::string& why) {
  std::cout << "  minimized counterexample (" << s.G.size() << " entries, term depth " << depth_of(s.t) << "):\n"
            << "    context " << show_ctx(sig, s.G) << "\n"
            << "    term    " << show(sig, s.G, s.t) << "\n";
  if (s.sigma.cod() || s.sigma.dom)
    std::cout << "    sigma   " << show_sub(sig, s.D, s.sigma) << " from " << show_ctx(sig, s.D) << "\n";
  if (s.delta.cod() || s.delta.dom) std::cout << "    delta   " << show_sub(sig, s.E, s.delta) << "\n";
  std::cout << "    " << why << "\n";
}

Ctx names_only(std::size_t n, const std::string& base) {
  Ctx G;
  for (std::size_t i = 0; i < n; ++i) G = G.extended(base + std::to_string(i), mk::u());
  return G;
}

struct Runner {
  std::uint64_t seed;
  int failures = 0;

  // Runs prop on `count` samples drawn by gen; shrinks and prints the first failure.
  void run(const std::string& name, const core::Signature& sig, int count,
           const std::function<std::optional<Sample>(Rng&)>& gen, const Property& prop, const Valid& valid) {
    Rng rng(seed ^ std::hash<std::string>{}(name));
    auto t0 = std::chrono::steady_clock::now();
    int done = 0, attempts = 0;
    double entries = 0, depth = 0;
    while (done < count && attempts < count * 20) {
      ++attempts;
      std::optional<Sample> s = gen(rng);
      if (!s) continue;
      ++done;
      entries += static_cast<double>(s->G.size());
      depth += depth_of(s->t);
      std::string why = prop(*s);
      if (why.empty()) continue;
      ++failures;
      std::cout << "FAIL " << name << " (sample " << done << ", seed " << seed << ")\n";
      Sample m = shrink(*s, prop, valid);
      report(sig, m, prop(m));
      return;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (done < count) {
      ++failures;
      std::cout << "FAIL " << name << ": only " << done << " of " << count << " samples generated\n";
      return;
    }
    std::cout << "PASS " << name << " (" << done << " samples, mean " << entries / done << " entries, mean term depth "
              << depth / done << ", " << secs << " s)\n";
  }
};

// ---------------------------------------------------------------- properties
std::string subst_laws(const Sample& s) {
  if (!core::alpha_eq(core::subst(s.t, core::sub_id(s.G.size())), s.t)) return "t[id] differs from t";
  TmP lhs = core::subst(s.t, core::sub_compose(s.sigma, s.delta));
  TmP rhs = core::subst(core::subst(s.t, s.sigma), s.delta);
  if (!core::alpha_eq(lhs, rhs)) return "t[sigma o delta] differs from t[sigma][delta]";
  return "";
}

std::string profile_label(Profile p) { return std::string(profile_name(p)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomised substitution and interpretation laws"};
  std::uint64_t seed = 20261017;
  int samples = 1000, amds_samples = 500;
  app.add_option("--seed", seed, "random seed (printed with every failure)");
  app.add_option("--samples", samples, "samples per substitution law and profile");
  app.add_option("--amds-samples", amds_samples, "samples per interpretation commutation check");
  bool demo = false;
  app.add_flag("--demo-shrink", demo, "run a deliberately false law to show counterexample shrinking");
  CLI11_PARSE(app, argc, argv);
  std::cout << "seed " << seed << "\n";

  Runner runner{seed};
  if (demo) {
    // False in general: a substitution leaves every term unchanged.
    core::Signature sig = make_sig(Profile::Fqii);
    auto gen = [&sig](Rng& rng) -> std::optional<Sample> {
      TypedGen g(sig, rng);
      Sample s;
      s.G = g.ctx(2 + pick(rng, 5));
      s.t = g.any(s.G, 3);
      if (!s.t) return std::nullopt;
      std::tie(s.D, s.sigma) = g.sub(s.G);
      s.E = s.D;
      s.delta = core::sub_id(s.D.size());
      return s;
    };
    auto prop = [](const Sample& s) -> std::string {
      return core::alpha_eq(core::subst(s.t, s.sigma), s.t) ? "" : "t[sigma] differs from t";
    };
    auto valid = [&sig](const Sample& s) {
      Rng dummy(0);
      TypedGen g(sig, dummy);
      try {
        g.checker().infer(s.G, s.t);
      } catch (const Error&) {
        return false;
      }
      return g.ctx_ok(s.G) && g.ctx_ok(s.D) && g.sub_ok(s.D, s.sigma, s.G);
    };
    runner.run("demo: substitution is the identity", sig, samples, gen, prop, valid);
    return runner.failures ? 1 : 0;
  }
  const Profile profiles[] = {Profile::Simple, Profile::Fqii, Profile::HiitStrict, Profile::HiitWeak};

  // Syntactic laws over every former of each profile.
  for (Profile p : profiles) {
    core::Signature sig = make_sig(p);
    auto gen = [p](Rng& rng) -> std::optional<Sample> {
      RawGen g(p, rng);
      Sample s;
      std::size_t n = 1 + static_cast<std::size_t>(pick(rng, 5));
      std::size_t m = 1 + static_cast<std::size_t>(pick(rng, 5));
      std::size_t k = 1 + static_cast<std::size_t>(pick(rng, 5));
      s.G = names_only(n, "a");
      s.D = names_only(m, "b");
      s.E = names_only(k, "c");
      s.t = g.tm(static_cast<int>(n), 4);
      s.sigma = g.sub(m, n, 2);
      s.delta = g.sub(k, m, 2);
      return s;
    };
    auto valid = [](const Sample& s) { return s.delta.cod() == s.D.size() && s.sigma.dom == s.D.size(); };
    runner.run(std::string("substitution laws, raw syntax, ") + profile_label(p), sig, samples, gen, subst_laws,
               valid);
  }

  // Typed laws: identity, composition and preservation of typing.
  for (Profile p : profiles) {
    core::Signature sig = make_sig(p);
    core::Checker chk(sig);
    auto gen = [&sig](Rng& rng) -> std::optional<Sample> {
      TypedGen g(sig, rng);
      Sample s;
      s.G = g.ctx(2 + pick(rng, 5));
      s.t = g.any(s.G, 3);
      if (!s.t) return std::nullopt;
      std::tie(s.D, s.sigma) = g.sub(s.G);
      std::tie(s.E, s.delta) = g.sub(s.D);
      return s;
    };
    auto valid = [&sig](const Sample& s) {
      Rng dummy(0);
      TypedGen g(sig, dummy);
      if (!g.ctx_ok(s.G) || !g.ctx_ok(s.D) || !g.ctx_ok(s.E)) return false;
      if (!g.sub_ok(s.D, s.sigma, s.G) || !g.sub_ok(s.E, s.delta, s.D)) return false;
      try {
        g.checker().infer(s.G, s.t);
        return true;
      } catch (const Error&) {
        return false;
      }
    };
    auto prop = [&chk, valid](const Sample& s) -> std::string {
      if (!valid(s)) {
        try {
          chk.infer(s.G, s.t);
        } catch (const Error& e) {
          return "generated term is ill-typed: " + e.diag().format();
        }
        return "generated context or substitution is ill-typed";
      }
      std::string why = subst_laws(s);
      if (!why.empty()) return why;
      try {
        TyP A = chk.infer(s.G, s.t);
        chk.check(s.D, core::subst(s.t, s.sigma), core::subst(A, s.sigma));
        chk.check(s.E, core::subst(s.t, core::sub_compose(s.sigma, s.delta)),
                  core::subst(A, core::sub_compose(s.sigma, s.delta)));
      } catch (const Error& e) {
        return "substitution does not preserve typing: " + e.diag().format();
      }
      const core::Normalizer& nz = chk.norm();
      TmP ts = core::subst(s.t, s.sigma);
      if (!nz.conv(core::subst(nz.normalize(s.t, s.G.size()), s.sigma), ts, s.D.size()))
        return "normal form of t[sigma] differs from nf(t)[sigma]";
      if (!nz.conv(core::subst(ts, s.delta), core::subst(s.t, core::sub_compose(s.sigma, s.delta)), s.E.size()))
        return "t[sigma o delta] and t[sigma][delta] are not convertible";
      return "";
    };
    runner.run(std::string("substitution laws, typed, ") + profile_label(p), sig, samples, gen, prop, valid);
    if (p != Profile::Simple && p != Profile::Fqii) continue;

    // The algebra interpretation commutes with substitution:
    // A(t[sigma]) under env equals A(t) under A(sigma) composed with env.
    auto amds_prop = [&sig, valid](const Sample& s) -> std::string {
      if (!valid(s)) return "generated sample is ill-typed";
      core::Signature local = sig;
      local.ctx = s.G;
      amds::Interp in(local);
      try {
        TyP A = core::Checker(local).infer(s.G, s.t);
        amds::Env envD;
        for (const auto& e : s.D.entries) envD.push_back({inner::var(e.name), inner::var(e.name + "'")});
        amds::Env envG;
        for (const auto& x : s.sigma.terms) envG.push_back({in.tm_a(s.D, envD, x, 0), in.tm_a(s.D, envD, x, 1)});
        TmP ts = core::subst(s.t, s.sigma);
        for (int side : {0, 1}) {
          inner::T lhs = in.tm_a(s.D, envD, ts, side);
          inner::T rhs = in.tm_a(s.G, envG, s.t, side);
          if (!same_up_to_annotations(lhs, rhs))
            return "term interpretations differ: " + inner::print(lhs, inner::Style::Ascii) + " vs " + inner::print(rhs, inner::Style::Ascii);
          inner::T tl = in.ty_a(s.D, envD, core::subst(A, s.sigma), side);
          inner::T tr = in.ty_a(s.G, envG, A, side);
          if (!same_up_to_annotations(tl, tr))
            return "type interpretations differ: " + inner::print(tl, inner::Style::Ascii) + " vs " + inner::print(tr, inner::Style::Ascii);
        }
      } catch (const Error& e) {
        return "interpretation failed: " + e.diag().format();
      }
      return "";
    };
    auto amds_gen = [&sig](Rng& rng) -> std::optional<Sample> {
      TypedGen g(sig, rng);
      Sample s;
      s.G = g.ctx(2 + pick(rng, 5));
      s.t = g.any(s.G, 3);
      if (!s.t) return std::nullopt;
      std::tie(s.D, s.sigma) = g.sub(s.G);
      if (coin(rng)) {
        auto [D2, s2] = g.sub(s.D);
        s.sigma = core::sub_compose(s.sigma, s2);
        s.D = D2;
      }
      s.E = s.D;
      s.delta = core::sub_id(s.D.size());
      return s;
    };
    runner.run(std::string("interpretation commutes with substitution, ") + profile_label(p), sig, amds_samples,
               amds_gen, amds_prop, valid);
  }

  std::cout << (runner.failures ? "FAILED" : "OK") << "\n";
  return runner.failures ? 1 : 0;
}

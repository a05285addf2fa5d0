#include <stdexcept>

#include "sigforge/core.hpp"

namespace sigforge::core {

namespace mk {

namespace {
std::shared_ptr<Ty> ty(TyK k) {
  auto t = std::make_shared<Ty>();
  t->k = k;
  return t;
}
std::shared_ptr<Tm> tm(TmK k) {
  auto t = std::make_shared<Tm>();
  t->k = k;
  return t;
}
}  // namespace

TyP iota() {
  static const TyP v = ty(TyK::Iota);
  return v;
}
TyP iota_arr(TyP B) {
  auto t = ty(TyK::IotaArr);
  t->B = std::move(B);
  return t;
}
TyP u() {
  static const TyP v = ty(TyK::U);
  return v;
}
TyP el(TmP x) {
  auto t = ty(TyK::El);
  t->t = std::move(x);
  return t;
}
TyP pi(std::string name, TmP dom, TyP cod) {
  auto t = ty(TyK::Pi);
  t->name = std::move(name);
  t->t = std::move(dom);
  t->B = std::move(cod);
  return t;
}
TyP pi_ext(std::string name, int ext, TyP cod) {
  auto t = ty(TyK::PiExt);
  t->name = std::move(name);
  t->ext = ext;
  t->B = std::move(cod);
  return t;
}
TyP id_large(TyP A, TmP x, TmP y) {
  auto t = ty(TyK::IdLarge);
  t->A = std::move(A);
  t->t = std::move(x);
  t->u = std::move(y);
  return t;
}
TyP id_weak(TyP A, TmP x, TmP y) {
  auto t = ty(TyK::IDLarge);
  t->A = std::move(A);
  t->t = std::move(x);
  t->u = std::move(y);
  return t;
}
TyP ext_sort(int ext) {
  auto t = ty(TyK::ExtSort);
  t->ext = ext;
  return t;
}

TmP var(int ix) {
  auto t = tm(TmK::Var);
  t->ix = ix;
  return t;
}
TmP app(TmP f, TmP x) {
  auto t = tm(TmK::App);
  t->a = std::move(f);
  t->b = std::move(x);
  return t;
}
TmP lam(std::string name, TmP dom, TmP body) {
  auto t = tm(TmK::Lam);
  t->name = std::move(name);
  t->a = std::move(dom);
  t->b = std::move(body);
  return t;
}
TmP app_ext(TmP f, TmP x, bool small) {
  auto t = tm(TmK::AppExt);
  t->a = std::move(f);
  t->b = std::move(x);
  t->small = small;
  return t;
}
TmP lam_ext(std::string name, int ext, TmP body, bool small) {
  auto t = tm(TmK::LamExt);
  t->name = std::move(name);
  t->ext = ext;
  t->b = std::move(body);
  t->small = small;
  return t;
}
TmP top() {
  static const TmP v = tm(TmK::Top);
  return v;
}
TmP tt() {
  static const TmP v = tm(TmK::Tt);
  return v;
}
TmP sg(std::string name, TmP a, TmP b) {
  auto t = tm(TmK::Sg);
  t->name = std::move(name);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}
TmP pair(std::string name, TmP a, TmP b, TmP fst, TmP snd) {
  auto t = tm(TmK::Pair);
  t->name = std::move(name);
  t->a = std::move(a);
  t->b = std::move(b);
  t->c = std::move(fst);
  t->d = std::move(snd);
  return t;
}
TmP proj1(TmP x) {
  auto t = tm(TmK::Proj1);
  t->c = std::move(x);
  return t;
}
TmP proj2(TmP x) {
  auto t = tm(TmK::Proj2);
  t->c = std::move(x);
  return t;
}
TmP id_small(TmP a, TmP x, TmP y) {
  auto t = tm(TmK::IdSmall);
  t->a = std::move(a);
  t->c = std::move(x);
  t->d = std::move(y);
  return t;
}
TmP refl(TmP a, TmP x) {
  auto t = tm(TmK::Refl);
  t->a = std::move(a);
  t->c = std::move(x);
  return t;
}
TmP refl_large(TyP A, TmP x, bool weak) {
  auto t = tm(TmK::ReflLarge);
  t->A = std::move(A);
  t->c = std::move(x);
  t->weak = weak;
  return t;
}
TmP j_small(TmP a, TmP x, std::string bx, std::string bp, TyP P, TmP pr, TmP y, TmP path) {
  auto t = tm(TmK::JSmall);
  t->a = std::move(a);
  t->c = std::move(x);
  t->name = std::move(bx);
  t->name2 = std::move(bp);
  t->P = std::move(P);
  t->d = std::move(pr);
  t->e = std::move(y);
  t->b = std::move(path);
  return t;
}
TmP j_large(TyP A, TmP x, std::string bx, std::string bp, TyP P, TmP pr, TmP y, TmP path) {
  auto t = tm(TmK::JLarge);
  t->A = std::move(A);
  t->c = std::move(x);
  t->name = std::move(bx);
  t->name2 = std::move(bp);
  t->P = std::move(P);
  t->d = std::move(pr);
  t->e = std::move(y);
  t->b = std::move(path);
  t->weak = true;
  return t;
}
TmP j_beta(TmP a, TmP x, std::string bx, std::string bp, TyP P, TmP pr) {
  auto t = tm(TmK::JBeta);
  t->a = std::move(a);
  t->c = std::move(x);
  t->name = std::move(bx);
  t->name2 = std::move(bp);
  t->P = std::move(P);
  t->d = std::move(pr);
  return t;
}

TmP j_beta_lhs(const Tm& jb) {
  return j_small(jb.a, jb.c, jb.name, jb.name2, jb.P, jb.d, jb.c, refl(jb.a, jb.c));
}

TmP pi_small_ext(std::string name, int ext, TmP body) {
  auto t = tm(TmK::PiSmallExt);
  t->name = std::move(name);
  t->ext = ext;
  t->b = std::move(body);
  return t;
}
TmP ext_call(int c, std::vector<TmP> args) {
  auto t = tm(TmK::ExtCall);
  t->ext = c;
  t->args = std::move(args);
  return t;
}

}  // namespace mk

int Externs::find_type(const std::string& n) const {
  for (std::size_t i = 0; i < types.size(); ++i)
    if (types[i] == n) return static_cast<int>(i);
  return -1;
}

int Externs::find_const(const std::string& n) const {
  for (std::size_t i = 0; i < consts.size(); ++i)
    if (consts[i].name == n) return static_cast<int>(i);
  return -1;
}

TyP Ctx::type_of(int ix) const {
  if (ix < 0 || static_cast<std::size_t>(ix) >= entries.size())
    throw std::out_of_range("core: variable index out of range");
  return shift(entries[entries.size() - 1 - ix].ty, ix + 1);
}

Ctx Ctx::extended(std::string name, TyP ty) const {
  Ctx c = *this;
  c.entries.push_back({std::move(name), std::move(ty)});
  return c;
}

// ---------------------------------------------------------------- traversal

namespace {

// Rebuilds a node, mapping every free variable (index >= depth) through f.
template <class F>
TmP map_tm(const TmP& t, int k, const F& f);

template <class F>
TyP map_ty(const TyP& A, int k, const F& f) {
  if (!A) return A;
  switch (A->k) {
    case TyK::Iota:
    case TyK::U:
    case TyK::ExtSort:
      return A;
    default:
      break;
  }
  auto n = std::make_shared<Ty>(*A);
  switch (A->k) {
    case TyK::IotaArr: n->B = map_ty(A->B, k, f); break;
    case TyK::El: n->t = map_tm(A->t, k, f); break;
    case TyK::Pi:
      n->t = map_tm(A->t, k, f);
      n->B = map_ty(A->B, k + 1, f);
      break;
    case TyK::PiExt: n->B = map_ty(A->B, k + 1, f); break;
    case TyK::IdLarge:
    case TyK::IDLarge:
      n->A = map_ty(A->A, k, f);
      n->t = map_tm(A->t, k, f);
      n->u = map_tm(A->u, k, f);
      break;
    default: break;
  }
  return n;
}

template <class F>
TmP map_tm(const TmP& t, int k, const F& f) {
  if (!t) return t;
  switch (t->k) {
    case TmK::Var:
      if (t->ix < k) return t;
      return f(t->ix, k);
    case TmK::Top:
    case TmK::Tt:
      return t;
    default:
      break;
  }
  auto n = std::make_shared<Tm>(*t);
  auto m = [&](const TmP& x, int kk) { return map_tm(x, kk, f); };
  switch (t->k) {
    case TmK::App:
    case TmK::AppExt:
      n->a = m(t->a, k);
      n->b = m(t->b, k);
      break;
    case TmK::Lam:
    case TmK::Sg:
      n->a = m(t->a, k);
      n->b = m(t->b, k + 1);
      break;
    case TmK::LamExt:
    case TmK::PiSmallExt:
      n->b = m(t->b, k + 1);
      break;
    case TmK::Pair:
      n->a = m(t->a, k);
      n->b = m(t->b, k + 1);
      n->c = m(t->c, k);
      n->d = m(t->d, k);
      break;
    case TmK::Proj1:
    case TmK::Proj2:
      n->c = m(t->c, k);
      break;
    case TmK::IdSmall:
      n->a = m(t->a, k);
      n->c = m(t->c, k);
      n->d = m(t->d, k);
      break;
    case TmK::Refl:
      n->a = m(t->a, k);
      n->c = m(t->c, k);
      break;
    case TmK::ReflLarge:
      n->A = map_ty(t->A, k, f);
      n->c = m(t->c, k);
      break;
    case TmK::JSmall:
    case TmK::JLarge:
      if (t->k == TmK::JSmall) n->a = m(t->a, k);
      else n->A = map_ty(t->A, k, f);
      n->c = m(t->c, k);
      n->P = map_ty(t->P, k + 2, f);
      n->d = m(t->d, k);
      n->e = m(t->e, k);
      n->b = m(t->b, k);
      break;
    case TmK::JBeta:
      n->a = m(t->a, k);
      n->c = m(t->c, k);
      n->P = map_ty(t->P, k + 2, f);
      n->d = m(t->d, k);
      break;
    case TmK::ExtCall:
      for (auto& x : n->args) x = m(x, k);
      break;
    default:
      break;
  }
  return n;
}

}  // namespace

TyP shift(const TyP& A, int d, int cutoff) {
  if (d == 0) return A;
  return map_ty(A, cutoff, [d](int ix, int) { return mk::var(ix + d); });
}

TmP shift(const TmP& t, int d, int cutoff) {
  if (d == 0) return t;
  return map_tm(t, cutoff, [d](int ix, int) { return mk::var(ix + d); });
}

namespace {
struct SubstFn {
  const Sub* s;
  TmP operator()(int ix, int k) const {
    std::size_t n = s->cod();
    std::size_t j = static_cast<std::size_t>(ix - k);
    if (j >= n) throw std::out_of_range("core: substitution does not cover variable");
    return shift(s->terms[n - 1 - j], k);
  }
};
}  // namespace

TyP subst(const TyP& A, const Sub& s) { return map_ty(A, 0, SubstFn{&s}); }
TmP subst(const TmP& t, const Sub& s) { return map_tm(t, 0, SubstFn{&s}); }

TyP inst(const TyP& body, const TmP& x) {
  return map_ty(body, 0, [&](int ix, int k) -> TmP {
    if (ix == k) return shift(x, k);
    return mk::var(ix - 1);
  });
}

TmP inst(const TmP& body, const TmP& x) {
  return map_tm(body, 0, [&](int ix, int k) -> TmP {
    if (ix == k) return shift(x, k);
    return mk::var(ix - 1);
  });
}

TyP inst2(const TyP& body, const TmP& x, const TmP& y) {
  return map_ty(body, 0, [&](int ix, int k) -> TmP {
    if (ix == k) return shift(y, k);
    if (ix == k + 1) return shift(x, k);
    return mk::var(ix - 2);
  });
}

Sub sub_id(std::size_t n) {
  Sub s;
  s.dom = n;
  for (std::size_t l = 0; l < n; ++l) s.terms.push_back(mk::var(static_cast<int>(n - 1 - l)));
  return s;
}

Sub sub_wk(std::size_t n, std::size_t by) {
  Sub s;
  s.dom = n + by;
  for (std::size_t l = 0; l < n; ++l) s.terms.push_back(mk::var(static_cast<int>(n - 1 - l + by)));
  return s;
}

Sub sub_ext(Sub s, TmP t) {
  s.terms.push_back(std::move(t));
  return s;
}

Sub sub_compose(const Sub& s, const Sub& d) {
  if (s.dom != d.cod()) throw std::invalid_argument("core: substitution composition mismatch");
  Sub r;
  r.dom = d.dom;
  for (const auto& t : s.terms) r.terms.push_back(subst(t, d));
  return r;
}

Sub sub_lift(const Sub& s) {
  Sub r;
  r.dom = s.dom + 1;
  for (const auto& t : s.terms) r.terms.push_back(shift(t, 1));
  r.terms.push_back(mk::var(0));
  return r;
}

bool mentions(const TyP& A, int ix) {
  bool hit = false;
  map_ty(A, 0, [&](int i, int k) {
    if (i - k == ix) hit = true;
    return mk::var(i);
  });
  return hit;
}

bool mentions(const TmP& t, int ix) {
  bool hit = false;
  map_tm(t, 0, [&](int i, int k) {
    if (i - k == ix) hit = true;
    return mk::var(i);
  });
  return hit;
}

// ---------------------------------------------------------------- alpha equality

bool alpha_eq(const TyP& a, const TyP& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->k != b->k || a->ext != b->ext) return false;
  return alpha_eq(a->A, b->A) && alpha_eq(a->B, b->B) && alpha_eq(a->t, b->t) && alpha_eq(a->u, b->u);
}

bool alpha_eq(const TmP& a, const TmP& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->k != b->k || a->ix != b->ix || a->ext != b->ext || a->small != b->small || a->weak != b->weak) return false;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!alpha_eq(a->args[i], b->args[i])) return false;
  return alpha_eq(a->a, b->a) && alpha_eq(a->b, b->b) && alpha_eq(a->c, b->c) && alpha_eq(a->d, b->d) &&
         alpha_eq(a->e, b->e) && alpha_eq(a->A, b->A) && alpha_eq(a->P, b->P);
}

}  // namespace sigforge::core

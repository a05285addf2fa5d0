#include <algorithm>
#include <cctype>
#include <utility>

#include "sigforge/inner.hpp"

namespace sigforge::inner {

Sort sort_succ(Sort s) {
  switch (s) {
    case Sort::U0: return Sort::U1;
    case Sort::U1: return Sort::Ty0;
    case Sort::Ty0: return Sort::Set;
    case Sort::Set:
    case Sort::Set1: return Sort::Set1;
  }
  return Sort::Set1;
}

Sort sort_max(Sort a, Sort b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

namespace {

std::shared_ptr<Term> node(K k) {
  auto t = std::make_shared<Term>();
  t->k = k;
  return t;
}

T with(K k, T a, T b = nullptr, T c = nullptr) {
  auto t = node(k);
  t->a = std::move(a);
  t->b = std::move(b);
  t->c = std::move(c);
  return t;
}

bool binds(K k) { return k == K::Pi || k == K::Lam || k == K::Sigma; }

}  // namespace

T var(std::string n) {
  auto t = node(K::Var);
  t->name = std::move(n);
  return t;
}

T sort(Sort s) {
  auto t = node(K::Sort);
  t->sort = s;
  return t;
}

T pi(std::string x, T A, T B, bool implicit) {
  auto t = node(K::Pi);
  t->name = std::move(x);
  t->a = std::move(A);
  t->b = std::move(B);
  t->implicit = implicit;
  return t;
}

T arrow(T A, T B) { return pi("_", std::move(A), std::move(B)); }

T lam(std::string x, T body, T dom, bool implicit) {
  auto t = node(K::Lam);
  t->name = std::move(x);
  t->a = std::move(dom);
  t->b = std::move(body);
  t->implicit = implicit;
  return t;
}

T app(T f, T x, bool implicit) {
  auto t = node(K::App);
  t->a = std::move(f);
  t->b = std::move(x);
  t->implicit = implicit;
  return t;
}

T apps(T f, const std::vector<T>& xs) {
  for (const auto& x : xs) f = app(f, x);
  return f;
}

T sigma(std::string x, T A, T B) {
  auto t = node(K::Sigma);
  t->name = std::move(x);
  t->a = std::move(A);
  t->b = std::move(B);
  return t;
}

T pair(T a, T b) { return with(K::Pair, std::move(a), std::move(b)); }
T proj1(T t) { return with(K::Proj1, std::move(t)); }
T proj2(T t) { return with(K::Proj2, std::move(t)); }

T unit() {
  static const T u = node(K::Unit);
  return u;
}

T tt() {
  static const T u = node(K::Tt);
  return u;
}

T eq(EqKind k, T A, T lhs, T rhs) {
  auto t = node(K::Eq);
  t->eq = k;
  t->a = std::move(A);
  t->b = std::move(lhs);
  t->c = std::move(rhs);
  return t;
}

T refl(EqKind k, T A, T x) {
  auto t = node(K::Refl);
  t->eq = k;
  t->a = std::move(A);
  t->b = std::move(x);
  return t;
}

T tr(T P, T p, T x) { return with(K::Tr, std::move(P), std::move(p), std::move(x)); }
T ap(T f, T p) { return with(K::Ap, std::move(f), std::move(p)); }
T apd(T f, T p) { return with(K::Apd, std::move(f), std::move(p)); }
T jay(T P, T pr, T p) { return with(K::J, std::move(P), std::move(pr), std::move(p)); }
T funext(T h) { return with(K::Funext, std::move(h)); }
T happly(T p, T a) { return with(K::Happly, std::move(p), std::move(a)); }
T inv(T p) { return with(K::Inv, std::move(p)); }
T comp(T p, T q) { return with(K::Comp, std::move(p), std::move(q)); }
T the(T A, T t) { return with(K::The, std::move(A), std::move(t)); }

// ---------------------------------------------------------------- free variables

namespace {

void fv(const T& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (!t) return;
  if (t->k == K::Var) {
    if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) out.insert(t->name);
    return;
  }
  fv(t->a, bound, out);
  if (binds(t->k)) {
    bound.push_back(t->name);
    fv(t->b, bound, out);
    bound.pop_back();
  } else {
    fv(t->b, bound, out);
  }
  fv(t->c, bound, out);
}

}  // namespace

std::set<std::string> free_vars(const T& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  fv(t, bound, out);
  return out;
}

bool occurs(const std::string& x, const T& t) { return free_vars(t).count(x) > 0; }

T subst(const T& t, const std::string& x, const T& s) {
  if (!t) return t;
  if (t->k == K::Var) return t->name == x ? s : t;
  if (t->k == K::Sort || t->k == K::Unit || t->k == K::Tt) return t;
  auto n = std::make_shared<Term>(*t);
  n->a = subst(t->a, x, s);
  n->c = subst(t->c, x, s);
  if (!binds(t->k)) {
    n->b = subst(t->b, x, s);
    return n;
  }
  if (t->name == x) return n;
  std::set<std::string> fs = free_vars(s);
  if (fs.count(t->name) && occurs(x, t->b)) {
    std::set<std::string> avoid = fs;
    auto fb = free_vars(t->b);
    avoid.insert(fb.begin(), fb.end());
    avoid.insert(x);
    std::string y = t->name;
    while (avoid.count(y)) y += "'";
    n->name = y;
    n->b = subst(subst(t->b, t->name, var(y)), x, s);
    return n;
  }
  n->b = subst(t->b, x, s);
  return n;
}

T erase(const T& t) {
  if (!t) return t;
  auto n = std::make_shared<Term>(*t);
  n->a = erase(t->a);
  n->b = erase(t->b);
  n->c = erase(t->c);
  switch (t->k) {
    case K::Lam: n->a = nullptr; break;
    case K::Eq: n->a = nullptr; break;
    case K::Refl:
      n->a = nullptr;
      n->b = nullptr;
      n->eq = EqKind::Unknown;
      break;
    default: break;
  }
  return n;
}

namespace {

using Names = std::vector<std::pair<std::string, std::string>>;

int find(const Names& ns, const std::string& n, bool left) {
  for (std::size_t i = ns.size(); i-- > 0;)
    if ((left ? ns[i].first : ns[i].second) == n) return static_cast<int>(i);
  return -1;
}

bool aeq(const T& a, const T& b, Names& ns) {
  if (!a || !b) return !a && !b;
  if (a->k != b->k || a->implicit != b->implicit) return false;
  switch (a->k) {
    case K::Var: {
      int i = find(ns, a->name, true);
      int j = find(ns, b->name, false);
      if (i != j) return false;
      return i >= 0 || a->name == b->name;
    }
    case K::Sort: return a->sort == b->sort;
    case K::Eq:
    case K::Refl:
      if (a->eq != b->eq) return false;
      break;
    default: break;
  }
  if (!aeq(a->a, b->a, ns) || !aeq(a->c, b->c, ns)) return false;
  if (!binds(a->k)) return aeq(a->b, b->b, ns);
  ns.emplace_back(a->name, b->name);
  bool r = aeq(a->b, b->b, ns);
  ns.pop_back();
  return r;
}

}  // namespace

bool alpha_eq(const T& a, const T& b) {
  Names ns;
  return aeq(a, b, ns);
}

bool inferable(const T& t) {
  switch (t->k) {
    case K::Pair:
    case K::Refl:
    case K::Funext: return false;
    case K::Lam: return t->a != nullptr;
    default: return true;
  }
}

T simplify(const T& t) {
  if (!t) return t;
  if (t->k == K::Var || t->k == K::Sort || t->k == K::Unit || t->k == K::Tt) return t;
  auto n = std::make_shared<Term>(*t);
  n->a = simplify(t->a);
  n->b = simplify(t->b);
  n->c = simplify(t->c);
  auto is_refl = [](const T& p) { return p && p->k == K::Refl; };
  switch (n->k) {
    case K::App:
      if (n->a->k == K::Lam && n->a->implicit == n->implicit) return simplify(subst(n->a->b, n->a->name, n->b));
      break;
    case K::Proj1:
    case K::Proj2: {
      T p = n->a->k == K::The ? n->a->b : n->a;
      if (p->k == K::Pair) return n->k == K::Proj1 ? p->a : p->b;
      break;
    }
    case K::Eq:
      if (n->b->k == K::The && inferable(n->c)) n->b = n->b->b;
      if (n->c->k == K::The && inferable(n->b)) n->c = n->c->b;
      break;
    case K::Tr:
      if (is_refl(n->b)) return n->c;
      break;
    case K::J:
      if (is_refl(n->c)) return n->b;
      break;
    case K::Ap:
    case K::Apd:
      if (is_refl(n->b)) return refl(n->b->eq);
      break;
    case K::Inv:
      if (is_refl(n->a)) return n->a;
      break;
    case K::Comp:
      if (is_refl(n->b)) return n->a;
      if (is_refl(n->a)) return n->b;
      break;
    case K::Happly:
      if (n->a->k == K::Funext) return simplify(app(n->a->a, n->b));
      if (is_refl(n->a)) return refl(n->a->eq);
      break;
    case K::Funext:
      if (n->a->k == K::Lam && is_refl(n->a->b)) return refl(n->a->b->eq);
      break;
    default: break;
  }
  return n;
}

T tidy_names(const T& t, const std::set<std::string>& avoid) {
  if (!t) return t;
  if (t->k == K::Var || t->k == K::Sort || t->k == K::Unit || t->k == K::Tt) return t;
  auto n = std::make_shared<Term>(*t);
  n->a = tidy_names(t->a, avoid);
  n->b = tidy_names(t->b, avoid);
  n->c = tidy_names(t->c, avoid);
  if (!binds(t->k) || t->name == "_") return n;
  std::string base = t->name;
  std::size_t u = base.rfind('_');
  if (u != std::string::npos && u > 0 && u + 1 < base.size() &&
      std::all_of(base.begin() + static_cast<std::ptrdiff_t>(u) + 1, base.end(), ::isdigit))
    base.resize(u);
  if (avoid.count(base)) return n;
  std::set<std::string> fb = free_vars(n->b);
  fb.erase(t->name);
  std::string y = base;
  for (int i = 1; fb.count(y) || avoid.count(y); ++i) y = base + "_" + std::to_string(i);
  if (y != t->name) {
    n->b = subst(n->b, t->name, var(y));
    n->name = y;
  }
  return n;
}

std::size_t size(const T& t) {
  if (!t) return 0;
  return 1 + size(t->a) + size(t->b) + size(t->c);
}

}  // namespace sigforge::inner

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sigforge/diagnostic.hpp"

namespace sigforge::inner {

// Cumulative hierarchy: U0 : U1 : Ty0 : Set : Set1.
enum class Sort { U0, U1, Ty0, Set, Set1 };
Sort sort_succ(Sort s);
Sort sort_max(Sort a, Sort b);

// Unknown only arises from reading printed output, where the kind is implicit.
enum class EqKind { Path, Strict, Unknown };

enum class K {
  Var,     // name (ix after scope resolution)
  Sort,    // sort
  Pi,      // name, implicit, a = domain, b = codomain
  Lam,     // name, implicit, a = domain (optional), b = body
  App,     // implicit, a b
  Sigma,   // name, a, b
  Pair,    // a b
  Proj1,   // a
  Proj2,   // a
  Unit,
  Tt,
  Eq,      // eq, a = type (optional), b = lhs, c = rhs
  Refl,    // eq, a = type (optional), b = point (optional)
  Tr,      // a = motive, b = proof, c = element
  Ap,      // a = function, b = proof
  Apd,     // a = function, b = proof
  J,       // a = motive (two arguments), b = method, c = proof
  Funext,  // a = pointwise proof
  Happly,  // a = proof, b = argument
  Inv,     // a
  Comp,    // a b
  The,     // a = type, b = term
};

struct Term;
using T = std::shared_ptr<const Term>;

struct Term {
  K k = K::Var;
  std::string name;
  int ix = -1;
  Sort sort = Sort::Set;
  EqKind eq = EqKind::Path;
  bool implicit = false;
  T a, b, c;
};

// ---------------------------------------------------------------- construction
T var(std::string n);
T sort(Sort s);
T pi(std::string x, T A, T B, bool implicit = false);
T arrow(T A, T B);
T lam(std::string x, T body, T dom = nullptr, bool implicit = false);
T app(T f, T x, bool implicit = false);
T apps(T f, const std::vector<T>& xs);
T sigma(std::string x, T A, T B);
T pair(T a, T b);
T proj1(T t);
T proj2(T t);
T unit();
T tt();
T eq(EqKind k, T A, T lhs, T rhs);
T refl(EqKind k, T A = nullptr, T t = nullptr);
T tr(T P, T p, T x);
T ap(T f, T p);
T apd(T f, T p);
T jay(T P, T pr, T p);
T funext(T h);
T happly(T p, T a);
T inv(T p);
T comp(T p, T q);
T the(T A, T t);

// ---------------------------------------------------------------- operations
std::set<std::string> free_vars(const T& t);
bool occurs(const std::string& x, const T& t);
// Capture-avoiding substitution of s for the free variable x.
T subst(const T& t, const std::string& x, const T& s);
// Drops annotations that the printed form does not carry.
T erase(const T& t);
bool alpha_eq(const T& a, const T& b);
// Renames each binder to the shortest capture-free variant of its base name
// (the name without a trailing _N), never choosing a name in avoid.
T tidy_names(const T& t, const std::set<std::string>& avoid);
// Contracts beta redexes, projections of pairs, and path operations applied
// to refl. The result is definitionally equal to the input.
T simplify(const T& t);
// Whether the checker can synthesise a type for t without an expected type.
bool inferable(const T& t);
std::size_t size(const T& t);

// ---------------------------------------------------------------- units
struct Param {
  std::string name;
  T type;
  bool implicit = false;
};

struct Def {
  std::string name;
  std::vector<Param> params;
  T body;
  Sort sort = Sort::Set1;  // the sort the body inhabits
};

struct Unit {
  std::string title;   // header comment
  std::vector<Param> postulates;
  std::vector<Def> defs;
  std::map<std::string, std::string> display;  // ascii name -> rendering for the agda style
};

enum class Style { Agda, Ascii };

std::string print(const T& t, Style s, const std::map<std::string, std::string>* display = nullptr);
std::string print_unit(const Unit& u, Style s);

// Reads the ascii dialect. Throws Error(E_PARSE).
T read_term(std::string_view src);
Unit read_unit(std::string_view src);

// ---------------------------------------------------------------- checking
// Throws Error(E_INNER_TYPE) naming the offending subterm.
void check_unit(const Unit& u);

// Checks body in the telescope of postulates and params; returns its sort.
Sort infer_sort(const std::vector<Param>& postulates, const std::vector<Param>& params, const T& body);

// Judgemental equality of two terms in a context of postulates.
bool convertible(const std::vector<Param>& ctx, const T& a, const T& b);

// Checks that t has type A in ctx.
void check_term(const std::vector<Param>& ctx, const T& t, const T& A);

}  // namespace sigforge::inner

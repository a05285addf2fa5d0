#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "sigforge/diagnostic.hpp"

namespace sigforge::core {

struct Ty;
struct Tm;
using TyP = std::shared_ptr<const Ty>;
using TmP = std::shared_ptr<const Tm>;

enum class TyK {
  Iota,     // simple profile base sort
  IotaArr,  // iota -> B (non-binding); B
  U,
  El,       // t
  Pi,       // (name : t) -> B, t : U
  PiExt,    // (name : ext) *> B
  IdLarge,  // A t u (Id between arbitrary terms, fqii)
  IDLarge,  // A t u (ID, hiit-weak)
  ExtSort,  // type of an external binder; ext
};

struct Ty {
  TyK k = TyK::U;
  std::string name;
  int ext = -1;
  TyP A, B;
  TmP t, u;
};

enum class TmK {
  Var,         // ix
  App,         // a b   (internal Pi and iota -> B)
  Lam,         // name, a = domain (U term), b = body
  AppExt,      // a b, small: Pi^ext in U, otherwise Pi^Ext
  LamExt,      // name, ext, b = body, small
  Top,
  Tt,
  Sg,          // name, a, b (b in context extended by El a)
  Pair,        // a, b family (binder name), c = fst, d = snd
  Proj1,       // c
  Proj2,       // c
  IdSmall,     // a, c = t, d = u
  Refl,        // a, c = t
  ReflLarge,   // A, c = t, weak: ID rather than Id
  JSmall,      // a, c = t, P motive (binders name, name2), d = pr, e = u, b = p
  JLarge,      // A, c = t, P, d = pr, e = u, b = p
  JBeta,       // a, c = t, P, d = pr: ID (J P pr refl) pr for small Id
  PiSmallExt,  // name, ext, b = body (U term under external binder)
  ExtCall,     // ext = constant id, args
};

struct Tm {
  TmK k = TmK::Var;
  int ix = -1;
  int ext = -1;
  bool small = false;
  bool weak = false;
  std::string name, name2;
  TmP a, b, c, d, e;
  TyP A, P;
  std::vector<TmP> args;
};

// ---------------------------------------------------------------- construction
// Raw constructors; they do not check types. Use Builder for checked terms.
namespace mk {
TyP iota();
TyP iota_arr(TyP B);
TyP u();
TyP el(TmP t);
TyP pi(std::string name, TmP dom, TyP cod);
TyP pi_ext(std::string name, int ext, TyP cod);
TyP id_large(TyP A, TmP t, TmP u);
TyP id_weak(TyP A, TmP t, TmP u);
TyP ext_sort(int ext);

TmP var(int ix);
TmP app(TmP f, TmP x);
TmP lam(std::string name, TmP dom, TmP body);
TmP app_ext(TmP f, TmP x, bool small);
TmP lam_ext(std::string name, int ext, TmP body, bool small);
TmP top();
TmP tt();
TmP sg(std::string name, TmP a, TmP b);
TmP pair(std::string name, TmP a, TmP b, TmP fst, TmP snd);
TmP proj1(TmP t);
TmP proj2(TmP t);
TmP id_small(TmP a, TmP t, TmP u);
TmP refl(TmP a, TmP t);
TmP refl_large(TyP A, TmP t, bool weak);
TmP j_small(TmP a, TmP t, std::string x, std::string p, TyP P, TmP pr, TmP u, TmP path);
TmP j_large(TyP A, TmP t, std::string x, std::string p, TyP P, TmP pr, TmP u, TmP path);
TmP j_beta(TmP a, TmP t, std::string x, std::string p, TyP P, TmP pr);
// The J term whose computation j_beta witnesses.
TmP j_beta_lhs(const Tm& jb);
TmP pi_small_ext(std::string name, int ext, TmP body);
TmP ext_call(int c, std::vector<TmP> args);
}  // namespace mk

// ---------------------------------------------------------------- signatures
struct ExternConst {
  std::string name;
  std::vector<int> args;  // extern type ids
  int result = -1;
};

struct Externs {
  std::vector<std::string> types;
  std::vector<ExternConst> consts;
  int find_type(const std::string& n) const;
  int find_const(const std::string& n) const;
};

struct Entry {
  std::string name;
  TyP ty;
};

struct Ctx {
  std::vector<Entry> entries;
  std::size_t size() const { return entries.size(); }
  // Type of the variable with de Bruijn index ix, weakened into this context.
  TyP type_of(int ix) const;
  Ctx extended(std::string name, TyP ty) const;
};

struct Signature {
  Profile profile = Profile::Fqii;
  std::string name;
  Externs ext;
  Ctx ctx;
};

// ---------------------------------------------------------------- substitution
// A substitution Sub Gamma Delta: terms[l] is the image of Delta's variable at
// level l, a term in Gamma (|Gamma| = dom).
struct Sub {
  std::size_t dom = 0;
  std::vector<TmP> terms;
  std::size_t cod() const { return terms.size(); }
};

Sub sub_id(std::size_t n);
Sub sub_wk(std::size_t n, std::size_t by = 1);  // Sub (Delta + by) Delta
Sub sub_ext(Sub s, TmP t);                         // (s, t)
Sub sub_compose(const Sub& s, const Sub& d);       // s o d
Sub sub_lift(const Sub& s);                        // (s o p, q)

TyP subst(const TyP& A, const Sub& s);
TmP subst(const TmP& t, const Sub& s);

// Shift free indices >= cutoff by d.
TyP shift(const TyP& A, int d, int cutoff = 0);
TmP shift(const TmP& t, int d, int cutoff = 0);
// Instantiate the outermost bound variable (index 0) with x.
TyP inst(const TyP& body, const TmP& x);
TmP inst(const TmP& body, const TmP& x);
// Instantiate indices 1 and 0 with x and y.
TyP inst2(const TyP& body, const TmP& x, const TmP& y);

// Whether the variable with index ix occurs free.
bool mentions(const TyP& A, int ix);
bool mentions(const TmP& t, int ix);

bool alpha_eq(const TyP& a, const TyP& b);
bool alpha_eq(const TmP& a, const TmP& b);

// ---------------------------------------------------------------- evaluation
// Which definitional rules hold in a profile.
struct Rules {
  bool pi_beta = true;
  bool pi_eta = true;
  bool sigma_beta = true;
  bool sigma_eta = false;
  bool ext_small_beta = true;
  bool ext_small_eta = false;
  bool ext_large_beta = true;
  bool ext_large_eta = true;
  bool j_large_beta = true;
  static Rules of(Profile p);
};

class Normalizer {
public:
  explicit Normalizer(Profile p) : rules_(Rules::of(p)) {}
  explicit Normalizer(Rules r) : rules_(r) {}

  // Terms and types over a context of length n.
  TmP normalize(const TmP& t, std::size_t n) const;
  TyP normalize(const TyP& A, std::size_t n) const;
  bool conv(const TmP& a, const TmP& b, std::size_t n) const;
  bool conv(const TyP& a, const TyP& b, std::size_t n) const;

  const Rules& rules() const { return rules_; }

  // Evaluation steps taken by the last call on this thread (fuel accounting).
  static std::size_t last_steps();

private:
  Rules rules_;
};

// ---------------------------------------------------------------- typing
// Independent checker over raw core syntax.
class Checker {
public:
  explicit Checker(const Signature& sig) : sig_(sig), norm_(sig.profile) {}

  void check_ty(const Ctx& G, const TyP& A) const;
  TyP infer(const Ctx& G, const TmP& t) const;
  void check(const Ctx& G, const TmP& t, const TyP& A) const;
  // Re-checks every entry of sig.ctx in its prefix, including profile gating.
  void verify() const;

  const Normalizer& norm() const { return norm_; }
  const Signature& sig() const { return sig_; }

  // Throw E_PROFILE when the former is not available in the profile.
  void gate_ty(const Ty& A) const;
  void gate_tm(const Tm& t) const;

private:
  const Signature& sig_;
  Normalizer norm_;
};

bool former_allowed_ty(Profile p, TyK k);
// flag: small for AppExt/LamExt, weak for ReflLarge.
bool former_allowed_tm(Profile p, TmK k, bool flag);

// Throws E_TYPE carrying printed expected and actual types.
[[noreturn]] void type_mismatch(const Signature& sig, const Ctx& G, const std::string& what, const TyP& expected,
                                const TyP& actual);

// ---------------------------------------------------------------- builder
struct Typed {
  TmP tm;
  TyP ty;
};

// Smart constructors: every result is checked against the current context.
class Builder {
public:
  explicit Builder(const Signature& sig) : sig_(sig), chk_(sig), ctx_(sig.ctx) {}

  Ctx& ctx() { return ctx_; }
  const Ctx& ctx() const { return ctx_; }
  void push(std::string name, TyP ty);
  void pop();

  // Normal form of A in the current context.
  TyP whnf(const TyP& A) const;
  // Fails with E_TYPE unless t has type A.
  void expect(const Typed& t, const TyP& A, const std::string& what) const;

  Typed var(int ix) const;
  Typed app(const Typed& f, const Typed& x) const;      // internal or iota function
  Typed app_ext(const Typed& f, const Typed& x) const;  // external, large or small
  Typed tt() const;
  Typed top() const;
  Typed refl(const TyP& expected) const;
  Typed pair(const TyP& expected, const Typed& a, const Typed& b) const;
  Typed proj1(const Typed& t) const;
  Typed proj2(const Typed& t) const;
  Typed ext_call(int c, const std::vector<Typed>& args) const;
  // Motive binder types for j on the given path: x : A, then p : t = x in ctx, x.
  std::pair<TyP, TyP> j_binders(const Typed& path) const;
  // Type of the method: motive at the start point and refl.
  TyP j_method_type(const Typed& path, const TyP& motive) const;
  Typed j(const Typed& path, std::string x, std::string p, const TyP& motive, const Typed& pr) const;

  // Propositional computation rule for J on small Id at start point t.
  Typed j_beta(const Typed& t, std::string x, std::string p, const TyP& motive, const Typed& pr) const;

  const Checker& checker() const { return chk_; }
  const Signature& sig() const { return sig_; }

private:
  const Signature& sig_;
  Checker chk_;
  Ctx ctx_;
  void gate(const TmP& t) const { chk_.gate_tm(*t); }
};

// ---------------------------------------------------------------- printing
// Surface-syntax rendering using entry and binder names (fresh-renamed on clash).
std::string print_ty(const Signature& sig, const Ctx& G, const TyP& A);
std::string print_tm(const Signature& sig, const Ctx& G, const TmP& t);
// Whole signature as a .sig file.
std::string print_signature(const Signature& sig);

}  // namespace sigforge::core

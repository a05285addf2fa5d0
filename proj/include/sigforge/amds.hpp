#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sigforge/core.hpp"
#include "sigforge/inner.hpp"

namespace sigforge::amds {

enum class Kind { A, M, D, S };
std::string_view kind_name(Kind k);

// Interpretations of one core variable. A-kind uses a; M uses a (source) and
// a1 (target). Entries a kind does not use stay null; external binders have
// no m, d or s.
struct Slot {
  inner::T a = nullptr, a1 = nullptr, m = nullptr, d = nullptr, s = nullptr;
};
// Indexed by de Bruijn level, one slot per entry of the core context.
using Env = std::vector<Slot>;

// Interpretation clauses for one signature. Binder names are drawn from a
// supply that avoids inner keywords, extern names and earlier choices.
class Interp {
public:
  explicit Interp(const core::Signature& sig);

  inner::T ty_a(const core::Ctx& G, const Env& env, const core::TyP& A, int side = 0);
  inner::T tm_a(const core::Ctx& G, const Env& env, const core::TmP& t, int side = 0);
  inner::T ty_m(const core::Ctx& G, const Env& env, const core::TyP& A, const inner::T& a0, const inner::T& a1);
  inner::T tm_m(const core::Ctx& G, const Env& env, const core::TmP& t);
  inner::T ty_d(const core::Ctx& G, const Env& env, const core::TyP& A, const inner::T& a);
  inner::T tm_d(const core::Ctx& G, const Env& env, const core::TmP& t);
  inner::T ty_s(const core::Ctx& G, const Env& env, const core::TyP& A, const inner::T& a, const inner::T& ad);
  inner::T tm_s(const core::Ctx& G, const Env& env, const core::TmP& t);

  // Fresh ascii name from base plus suffix; agda_suffix is its display form.
  std::string fresh(const std::string& base, const std::string& suffix = "", const std::string& agda_suffix = "");
  void reset_names();
  // Inner keywords and extern names.
  const std::set<std::string>& reserved_names() const { return fixed_; }
  const std::map<std::string, std::string>& display() const { return display_; }

  // Names of the base sort (simple profile): side[0], side[1] for the A
  // components, then the M, D and S components.
  struct SortNames {
    std::string side[2], xm, xd, xs;
  };
  SortNames& sort_names() { return sorts_; }

  // Postulates for the extern types and constants.
  std::vector<inner::Param> postulates() const;

  inner::EqKind el_eq() const;  // equality used by El in M and S

private:
  const core::Signature& sig_;
  core::Checker chk_;
  std::set<std::string> used_;
  std::set<std::string> fixed_;
  std::map<std::string, std::string> display_;
  SortNames sorts_;

  core::TyP type_of(const core::Ctx& G, const core::TmP& t) const;
  inner::T universe() const;
  inner::T var_a(const Slot& s, int side) const { return side ? s.a1 : s.a; }
  [[noreturn]] void unsupported(const core::Tm& t, Kind k) const;
  std::pair<core::TyP, core::TyP> j_binders(const core::Tm& t) const;

  // Large identity transports and the generalised J clauses.
  inner::T id_small_m(const inner::T& aM, const inner::T& t1, const inner::T& tM, const inner::T& u0,
                      const inner::T& u1, const inner::T& uM, const inner::T& p);
  inner::T id_small_s(const inner::T& aS, const inner::T& aD, const inner::T& tA, const inner::T& tD,
                      const inner::T& tS, const inner::T& uD, const inner::T& uS, const inner::T& p);
  inner::T j_m(const core::Ctx& G, const Env& env, const core::Tm& t);
  inner::T j_d(const core::Ctx& G, const Env& env, const core::Tm& t, const inner::T& uA, const inner::T& uD,
               const inner::T& pA, const inner::T& pD);
  inner::T j_s(const core::Ctx& G, const Env& env, const core::Tm& t);
  inner::T pair_ms(const core::Ctx& G, const Env& env, const core::TmP& t, Kind k);
  inner::T proj2_ms(const core::Ctx& G, const Env& env, const core::Tm& t, Kind k);
};

enum class Part { Alg, Mor, DispAlg, Section, Ind, Rec };
std::string_view part_name(Part p);
bool parse_part(std::string_view s, Part& out);
const std::vector<Part>& all_parts();

// Parts the signature admits: Mor, Section, Ind and Rec need the M and S
// clauses of every former it uses.
std::vector<Part> supported_parts(const core::Signature& sig);

// Emits the requested definitions, each checked by the inner checker.
// Throws E_UNSUPPORTED for a weak J on small Id under M or S.
inner::Unit emit(const core::Signature& sig, const std::vector<Part>& parts);

// Curried over the components: (gamma : Alg) -> (gammaD : DispAlg gamma) ->
// Section gamma gammaD. Closed apart from the postulates.
inner::T derive_induction(const core::Signature& sig);
// Curried: (gamma0 gamma1 : Alg) -> Mor gamma0 gamma1.
inner::T derive_recursion(const core::Signature& sig);

// fnv1a-64 over the canonical printed signature, as 16 hex digits.
std::string signature_hash(const core::Signature& sig);

// Whether a clause exists for the former under the kind in the profile;
// false exactly for the documented unsupported cells.
bool clause_exists(Profile p, core::TmK former, Kind k);

}  // namespace sigforge::amds

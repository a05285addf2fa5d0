#include <cstdint>
#include <cstdio>

#include "sigforge/amds.hpp"

namespace sigforge::amds {

namespace in = sigforge::inner;
using in::T;

std::string_view part_name(Part p) {
  switch (p) {
    case Part::Alg: return "alg";
    case Part::Mor: return "mor";
    case Part::DispAlg: return "dispalg";
    case Part::Section: return "section";
    case Part::Ind: return "ind";
    case Part::Rec: return "rec";
  }
  return "?";
}

const std::vector<Part>& all_parts() {
  static const std::vector<Part> ps = {Part::Alg, Part::Mor, Part::DispAlg, Part::Section, Part::Ind, Part::Rec};
  return ps;
}

bool parse_part(std::string_view s, Part& out) {
  for (Part p : all_parts())
    if (part_name(p) == s) {
      out = p;
      return true;
    }
  return false;
}

std::string signature_hash(const core::Signature& sig) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : core::print_signature(sig)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct Comp {
  std::string name;
  T type;
};
using Tele = std::vector<Comp>;

bool simple(const core::Signature& sig) { return sig.profile == Profile::Simple; }

core::Ctx prefix(const core::Signature& sig, std::size_t i) {
  core::Ctx G;
  G.entries.assign(sig.ctx.entries.begin(), sig.ctx.entries.begin() + static_cast<std::ptrdiff_t>(i));
  return G;
}

Env env_prefix(const Env& env, std::size_t i) { return Env(env.begin(), env.begin() + static_cast<std::ptrdiff_t>(i)); }

// Telescopes of components; each fills its column of env.
struct Builder {
  const core::Signature& sig;
  Interp& ip;
  Env env;

  Builder(const core::Signature& s, Interp& i) : sig(s), ip(i), env(s.ctx.size()) {}

  Tele alg(int side, const std::string& suf, const std::string& agda) {
    Tele t;
    if (simple(sig)) {
      std::string x = ip.fresh("X", suf, agda);
      ip.sort_names().side[side] = x;
      t.push_back({x, in::sort(in::Sort::Set)});
    }
    for (std::size_t i = 0; i < sig.ctx.size(); ++i) {
      const auto& e = sig.ctx.entries[i];
      T ty = ip.ty_a(prefix(sig, i), env_prefix(env, i), e.ty, side);
      std::string n = ip.fresh(e.name, suf, agda);
      (side ? env[i].a1 : env[i].a) = in::var(n);
      t.push_back({n, ty});
    }
    return t;
  }

  Tele mor() {
    Tele t;
    if (simple(sig)) {
      std::string x = ip.fresh("X", "M", "ᴹ");
      ip.sort_names().xm = x;
      t.push_back({x, in::arrow(in::var(ip.sort_names().side[0]), in::var(ip.sort_names().side[1]))});
    }
    for (std::size_t i = 0; i < sig.ctx.size(); ++i) {
      const auto& e = sig.ctx.entries[i];
      T ty = ip.ty_m(prefix(sig, i), env_prefix(env, i), e.ty, env[i].a, env[i].a1);
      std::string n = ip.fresh(e.name, "M", "ᴹ");
      env[i].m = in::var(n);
      t.push_back({n, ty});
    }
    return t;
  }

  Tele disp() {
    Tele t;
    if (simple(sig)) {
      std::string x = ip.fresh("X", "D", "ᴰ");
      ip.sort_names().xd = x;
      t.push_back({x, in::arrow(in::var(ip.sort_names().side[0]), in::sort(in::Sort::Set))});
    }
    for (std::size_t i = 0; i < sig.ctx.size(); ++i) {
      const auto& e = sig.ctx.entries[i];
      T ty = ip.ty_d(prefix(sig, i), env_prefix(env, i), e.ty, env[i].a);
      std::string n = ip.fresh(e.name, "D", "ᴰ");
      env[i].d = in::var(n);
      t.push_back({n, ty});
    }
    return t;
  }

  Tele section() {
    Tele t;
    if (simple(sig)) {
      std::string x = ip.fresh("X", "S", "ˢ");
      ip.sort_names().xs = x;
      std::string v = ip.fresh("x");
      T X = in::var(ip.sort_names().side[0]);
      t.push_back({x, in::pi(v, X, in::app(in::var(ip.sort_names().xd), in::var(v)))});
    }
    for (std::size_t i = 0; i < sig.ctx.size(); ++i) {
      const auto& e = sig.ctx.entries[i];
      T ty = ip.ty_s(prefix(sig, i), env_prefix(env, i), e.ty, env[i].a, env[i].d);
      std::string n = ip.fresh(e.name, "S", "ˢ");
      env[i].s = in::var(n);
      t.push_back({n, ty});
    }
    return t;
  }
};

T sigma_of(const Tele& t) {
  if (t.empty()) return in::unit();
  T body = t.back().type;
  for (std::size_t i = t.size() - 1; i-- > 0;) body = in::sigma(t[i].name, t[i].type, body);
  return body;
}

T pi_of(Interp& ip, const Tele& t, T body, const std::string& empty_name) {
  if (t.empty()) return in::pi(ip.fresh(empty_name), in::unit(), body);
  for (std::size_t i = t.size(); i-- > 0;) body = in::pi(t[i].name, t[i].type, body);
  return body;
}

std::vector<in::Param> params_of(const Tele& a, const Tele& b = {}) {
  std::vector<in::Param> ps;
  for (const auto& c : a) ps.push_back({c.name, c.type, false});
  for (const auto& c : b) ps.push_back({c.name, c.type, false});
  return ps;
}

in::Def make_def(Interp& ip, Part p, const core::Signature& sig) {
  ip.reset_names();
  Builder b(sig, ip);
  in::Def d;
  const char* suffix = "";
  switch (p) {
    case Part::Alg: {
      suffix = "Alg";
      d.body = sigma_of(b.alg(0, "", ""));
      break;
    }
    case Part::Mor: {
      suffix = "Mor";
      Tele a0 = b.alg(0, "0", "₀");
      Tele a1 = b.alg(1, "1", "₁");
      d.params = params_of(a0, a1);
      d.body = sigma_of(b.mor());
      break;
    }
    case Part::DispAlg: {
      suffix = "DispAlg";
      Tele a = b.alg(0, "", "");
      ip.sort_names().side[1] = ip.sort_names().side[0];
      d.params = params_of(a);
      d.body = sigma_of(b.disp());
      break;
    }
    case Part::Section: {
      suffix = "Section";
      Tele a = b.alg(0, "", "");
      ip.sort_names().side[1] = ip.sort_names().side[0];
      Tele dd = b.disp();
      d.params = params_of(a, dd);
      d.body = sigma_of(b.section());
      break;
    }
    case Part::Ind: {
      suffix = "Ind";
      Tele a = b.alg(0, "", "");
      ip.sort_names().side[1] = ip.sort_names().side[0];
      Tele dd = b.disp();
      T s = sigma_of(b.section());
      d.body = pi_of(ip, a, pi_of(ip, dd, s, "gammaD"), "gamma");
      break;
    }
    case Part::Rec: {
      suffix = "Rec";
      Tele a0 = b.alg(0, "0", "₀");
      Tele a1 = b.alg(1, "1", "₁");
      T m = sigma_of(b.mor());
      d.body = pi_of(ip, a0, pi_of(ip, a1, m, "gamma1"), "gamma0");
      break;
    }
  }
  d.name = sig.name + suffix;
  std::set<std::string> avoid = ip.reserved_names();
  for (const auto& prm : d.params) avoid.insert(prm.name);
  d.body = in::tidy_names(in::simplify(d.body), avoid);
  for (auto& prm : d.params) prm.type = in::tidy_names(in::simplify(prm.type), avoid);
  return d;
}

}  // namespace

std::vector<Part> supported_parts(const core::Signature& sig) {
  std::vector<Part> out;
  Interp ip(sig);
  for (Part p : all_parts()) {
    try {
      make_def(ip, p, sig);
      out.push_back(p);
    } catch (const Error& e) {
      if (e.diag().code != Code::Unsupported) throw;
    }
  }
  return out;
}

in::Unit emit(const core::Signature& sig, const std::vector<Part>& parts) {
  Interp ip(sig);
  in::Unit u;
  u.title = sig.name + " (" + std::string(profile_name(sig.profile)) + ") fnv1a64:" + signature_hash(sig);
  u.postulates = ip.postulates();
  for (Part p : parts) {
    in::Def d = make_def(ip, p, sig);
    d.sort = in::infer_sort(u.postulates, d.params, d.body);
    u.defs.push_back(std::move(d));
  }
  u.display = ip.display();
  return u;
}

T derive_induction(const core::Signature& sig) {
  Interp ip(sig);
  return make_def(ip, Part::Ind, sig).body;
}

T derive_recursion(const core::Signature& sig) {
  Interp ip(sig);
  return make_def(ip, Part::Rec, sig).body;
}

}  // namespace sigforge::amds

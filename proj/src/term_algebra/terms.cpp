#include <algorithm>

#include "sigforge/elab.hpp"
#include "sigforge/term_algebra.hpp"

namespace sigforge::talg {

namespace {

int arity_of(const core::TyP& A) {
  int n = 0;
  const core::Ty* t = A.get();
  while (t->k == core::TyK::IotaArr) {
    ++n;
    t = t->B.get();
  }
  if (t->k != core::TyK::Iota) fail(Code::Profile, "only simple signatures have term algebras");
  return n;
}

}  // namespace

Node::~Node() {
  tm.reset();  // the children still hold their own core terms
  std::vector<TermValue> pending = std::move(args);
  while (!pending.empty()) {
    TermValue t = std::move(pending.back());
    pending.pop_back();
    if (t.use_count() != 1) continue;
    auto& kids = const_cast<Node&>(*t).args;
    for (auto& k : kids) pending.push_back(std::move(k));
    kids.clear();
  }
}

std::vector<Constructor> constructors(const core::Signature& sig) {
  if (sig.profile != Profile::Simple) fail(Code::Profile, "only simple signatures have term algebras");
  std::vector<Constructor> cs;
  for (const auto& e : sig.ctx.entries) cs.push_back({e.name, arity_of(e.ty)});
  return cs;
}

TermValue make_term(const core::Signature& sig, int head, std::vector<TermValue> args) {
  if (head < 0 || static_cast<std::size_t>(head) >= sig.ctx.size()) fail(Code::Arity, "no such constructor");
  const auto& e = sig.ctx.entries[static_cast<std::size_t>(head)];
  if (arity_of(e.ty) != static_cast<int>(args.size()))
    fail(Code::Arity, e.name + " takes " + std::to_string(arity_of(e.ty)) + " arguments, given " +
                          std::to_string(args.size()));
  auto n = std::make_shared<Node>();
  n->head = head;
  n->tm = core::mk::var(static_cast<int>(sig.ctx.size()) - 1 - head);
  for (const auto& a : args) {
    n->depth = std::max(n->depth, a->depth + 1);
    n->size += a->size;
    n->tm = core::mk::app(n->tm, a->tm);
  }
  n->args = std::move(args);
  return n;
}

TermValue from_core(const core::Signature& sig, const core::TmP& t) {
  std::vector<core::TmP> spine;
  const core::Tm* h = t.get();
  while (h->k == core::TmK::App) {
    spine.push_back(h->b);
    h = h->a.get();
  }
  if (h->k != core::TmK::Var || h->ix < 0 || static_cast<std::size_t>(h->ix) >= sig.ctx.size())
    fail(Code::Type, "not a constructor term: " + core::print_tm(sig, sig.ctx, t));
  std::reverse(spine.begin(), spine.end());
  int head = static_cast<int>(sig.ctx.size()) - 1 - h->ix;
  if (arity_of(sig.ctx.entries[static_cast<std::size_t>(head)].ty) != static_cast<int>(spine.size()))
    fail(Code::Type, "partially applied constructor in " + core::print_tm(sig, sig.ctx, t));
  std::vector<TermValue> args;
  for (const auto& s : spine) args.push_back(from_core(sig, s));
  return make_term(sig, head, std::move(args));
}

TermValue parse_term(const core::Signature& sig, std::string_view src) {
  constructors(sig);
  core::Typed t = elab::elaborate_term(sig, *surface::parse_expr(src));
  if (t.ty->k != core::TyK::Iota)
    fail(Code::Type, "term has type " + core::print_ty(sig, sig.ctx, t.ty) + ", expected iota");
  return from_core(sig, t.tm);
}

std::string print_term(const core::Signature& sig, const TermValue& t) { return core::print_tm(sig, sig.ctx, t->tm); }

std::vector<TermValue> enumerate_terms(const core::Signature& sig, std::size_t max_depth, std::size_t max_terms) {
  auto cs = constructors(sig);
  std::vector<TermValue> all;
  std::size_t shallower = 0;  // all[0, shallower) have depth < d - 1
  for (std::size_t d = 1; d <= max_depth; ++d) {
    std::size_t prev = all.size();  // all[0, prev) have depth <= d - 1
    for (int c = 0; c < static_cast<int>(cs.size()); ++c) {
      int k = cs[static_cast<std::size_t>(c)].arity;
      if (k == 0) {
        if (d == 1) all.push_back(make_term(sig, c, {}));
        continue;
      }
      if (d == 1 || prev == 0) continue;
      // Odometer over argument tuples from all[0, prev); keep those reaching depth d - 1.
      std::vector<std::size_t> ix(static_cast<std::size_t>(k), 0);
      for (;;) {
        bool deep = std::any_of(ix.begin(), ix.end(), [&](std::size_t i) { return i >= shallower; });
        if (deep) {
          std::vector<TermValue> args;
          for (std::size_t i : ix) args.push_back(all[i]);
          all.push_back(make_term(sig, c, std::move(args)));
          if (all.size() > max_terms)
            fail(Code::Overflow, "more than " + std::to_string(max_terms) + " terms up to depth " +
                                     std::to_string(max_depth));
        }
        int p = k - 1;
        while (p >= 0 && ++ix[static_cast<std::size_t>(p)] == prev) ix[static_cast<std::size_t>(p--)] = 0;
        if (p < 0) break;
      }
    }
    shallower = prev;
  }
  return all;
}

TermValue random_term(const core::Signature& sig, std::mt19937_64& rng, std::size_t max_depth) {
  auto cs = constructors(sig);
  std::vector<int> leaves, all;
  for (int c = 0; c < static_cast<int>(cs.size()); ++c) {
    all.push_back(c);
    if (cs[static_cast<std::size_t>(c)].arity == 0) leaves.push_back(c);
  }
  if (leaves.empty() || max_depth == 0) fail(Code::Type, "the base sort has no closed terms of this depth");
  auto pick = [&](const std::vector<int>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  auto go = [&](auto& self, std::size_t budget) -> TermValue {
    int c = pick(budget <= 1 ? leaves : all);
    std::vector<TermValue> args;
    for (int i = 0; i < cs[static_cast<std::size_t>(c)].arity; ++i) args.push_back(self(self, budget - 1));
    return make_term(sig, c, std::move(args));
  };
  return go(go, max_depth);
}

}  // namespace sigforge::talg

#include <gtest/gtest.h>

#include <filesystem>
#include <functional>
#include <fstream>
#include <set>
#include <sstream>

#include "sigforge/elab.hpp"
#include "sigforge/term_algebra.hpp"

using namespace sigforge;
using namespace sigforge::talg;

namespace {

core::Signature load(const std::string& file) {
  std::ifstream f(std::filesystem::path(SIGFORGE_CORPUS_DIR) / file);
  std::stringstream ss;
  ss << f.rdbuf();
  return elab::elaborate_source(ss.str(), file);
}

const core::Signature& nat() {
  static const core::Signature s = load("nat_simple.sig");
  return s;
}

const core::Signature& tree() {
  static const core::Signature s = load("tree_simple.sig");
  return s;
}

std::vector<std::string> printed(const core::Signature& sig, const std::vector<TermValue>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(print_term(sig, t));
  return out;
}

// Number of terms of depth at most d: constants, plus each constructor over
// all argument tuples of depth at most d - 1.
std::uint64_t count_oracle(const std::vector<int>& arities, int d) {
  if (d <= 0) return 0;
  std::uint64_t below = count_oracle(arities, d - 1), n = 0;
  for (int k : arities) {
    std::uint64_t p = 1;
    for (int i = 0; i < k; ++i) p *= below;
    n += k == 0 ? 1 : p;
  }
  return n;
}

TermValue nat_of(int n) {
  TermValue t = make_term(nat(), 0, {});
  for (int i = 0; i < n; ++i) t = make_term(nat(), 1, {t});
  return t;
}

Code code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.diag().code;
  }
  return Code::Usage;
}

const char* kPlus1 = R"({"carrier":"int64","ops":{"zero":"0","suc":"x0 + 1"}})";
const char* kTriangle = R"({"carrier":"int64","ops":{"zero":"0","suc":"ih0 + x0 + 1"}})";

}  // namespace

TEST(TermAlgebra, NatDepthThree) {
  EXPECT_EQ(printed(nat(), enumerate_terms(nat(), 3)),
            (std::vector<std::string>{"zero", "suc zero", "suc (suc zero)"}));
}

TEST(TermAlgebra, TreeDepthTwo) {
  EXPECT_EQ(printed(tree(), enumerate_terms(tree(), 2)), (std::vector<std::string>{"leaf", "node leaf leaf"}));
}

TEST(TermAlgebra, EmptySignatureHasNoTerms) {
  auto sig = elab::elaborate_source("profile simple\nsignature E where\n");
  for (std::size_t d : {0u, 1u, 5u}) EXPECT_TRUE(enumerate_terms(sig, d).empty());
  auto loop = elab::elaborate_source("profile simple\nsignature L where\n  s : iota -> iota\n");
  EXPECT_TRUE(enumerate_terms(loop, 6).empty());
}

TEST(TermAlgebra, CountsMatchOracle) {
  for (const auto* sig : {&nat(), &tree()}) {
    std::vector<int> ar;
    for (const auto& c : constructors(*sig)) ar.push_back(c.arity);
    for (int d = 0; d <= (sig == &nat() ? 12 : 4); ++d)
      EXPECT_EQ(enumerate_terms(*sig, static_cast<std::size_t>(d)).size(), count_oracle(ar, d)) << d;
  }
  auto mixed = elab::elaborate_source(
      "profile simple\nsignature M where\n  a : iota\n  b : iota\n  f : iota -> iota\n  g : iota -> iota -> iota\n");
  for (int d = 0; d <= 3; ++d)
    EXPECT_EQ(enumerate_terms(mixed, static_cast<std::size_t>(d)).size(), count_oracle({0, 0, 1, 2}, d));
}

TEST(TermAlgebra, EnumerationIsSoundAndDistinct) {
  for (const auto* sig : {&nat(), &tree()}) {
    auto ts = enumerate_terms(*sig, sig == &nat() ? 11 : 4);
    core::Checker chk(*sig);
    std::set<std::string> seen;
    std::size_t last_depth = 0;
    for (const auto& t : ts) {
      EXPECT_EQ(chk.infer(sig->ctx, t->tm)->k, core::TyK::Iota);
      EXPECT_TRUE(seen.insert(print_term(*sig, t)).second);
      EXPECT_GE(t->depth, last_depth);
      last_depth = t->depth;
      EXPECT_EQ(print_term(*sig, parse_term(*sig, print_term(*sig, t))), print_term(*sig, t));
    }
  }
  EXPECT_EQ(enumerate_terms(nat(), 11).size(), 11u);
}

TEST(TermAlgebra, EnumerationCap) {
  EXPECT_EQ(code_of([] { enumerate_terms(tree(), 6, 1000); }), Code::Overflow);
}

TEST(TermAlgebra, RecursorExamples) {
  auto plus1 = parse_algebra(nat(), kPlus1);
  EXPECT_EQ(eval_recursor(nat(), plus1, parse_term(nat(), "suc (suc zero)")), 2);
  auto leaves = parse_algebra(tree(), R"({"ops":{"leaf":"1","node":"x0 + x1"}})");
  EXPECT_EQ(eval_recursor(tree(), leaves, parse_term(tree(), "node leaf leaf")), 2);
  auto zero = parse_algebra(tree(), R"({"ops":{"leaf":0,"node":"0"}})");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(eval_recursor(tree(), zero, random_term(tree(), rng, 8)), 0);
}

TEST(TermAlgebra, EliminatorExamples) {
  auto tri = parse_dalgebra(nat(), kTriangle);
  EXPECT_EQ(eval_eliminator(nat(), tri, parse_term(nat(), "suc (suc zero)")), 3);
  for (int n = 0; n <= 40; ++n) {
    std::int64_t loop = 0;
    for (int k = 0; k < n; ++k) loop += k + 1;
    EXPECT_EQ(eval_eliminator(nat(), tri, nat_of(n)), loop) << n;
  }
  auto height = parse_dalgebra(tree(), R"({"ops":{"leaf":"0","node":"max(ih0, ih1) + 1"}})");
  EXPECT_EQ(eval_eliminator(tree(), height, parse_term(tree(), "node leaf leaf")), 1);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    TermValue t = random_term(tree(), rng, 9);
    EXPECT_EQ(eval_eliminator(tree(), height, t), static_cast<std::int64_t>(t->depth) - 1);
  }
  auto zero = parse_dalgebra(nat(), R"({"ops":{"zero":"0","suc":"0"}})");
  EXPECT_EQ(eval_eliminator(nat(), zero, nat_of(9)), 0);
}

TEST(TermAlgebra, RecursorIsMorphism) {
  std::vector<std::pair<const core::Signature*, AlgebraSpec>> algs = {
      {&nat(), parse_algebra(nat(), kPlus1)},
      {&nat(), parse_algebra(nat(), R"({"ops":{"zero":"3","suc":"x0 * 2 - 1"}})")},
      {&tree(), parse_algebra(tree(), R"({"ops":{"leaf":"1","node":"x0 + x1"}})")},
      {&tree(), parse_algebra(tree(), R"j({"ops":{"leaf":"2","node":"max(x0, x1) * 3 - min(x0, -x1)"}})j")},
  };
  std::mt19937_64 rng(2024);
  for (const auto& [sig, alg] : algs) {
    std::vector<TermValue> ts;
    if (sig == &nat()) ts = enumerate_terms(*sig, 11);
    else
      for (int i = 0; i < 200; ++i) ts.push_back(random_term(*sig, rng, 10));
    for (const auto& t : ts) {
      std::vector<std::int64_t> xs;
      for (const auto& u : t->args) xs.push_back(eval_recursor(*sig, alg, u));
      EXPECT_EQ(eval_recursor(*sig, alg, t), eval_expr(alg.ops[static_cast<std::size_t>(t->head)], xs));
    }
  }
}

TEST(TermAlgebra, EliminatorBetaAndAgreement) {
  auto tri = parse_dalgebra(nat(), kTriangle);
  auto para = parse_dalgebra(tree(), R"({"ops":{"leaf":"1","node":"ih0 * 2 + ih1 - x0 + x1"}})");
  std::mt19937_64 rng(99);
  std::vector<std::pair<const core::Signature*, DispAlgebraSpec>> ds = {{&nat(), tri}, {&tree(), para}};
  for (const auto& [sig, d] : ds) {
    std::vector<TermValue> ts;
    if (sig == &nat()) ts = enumerate_terms(*sig, 11);
    else
      for (int i = 0; i < 200; ++i) ts.push_back(random_term(*sig, rng, 10));
    for (const auto& t : ts) {
      std::vector<std::int64_t> xs, ihs;
      for (const auto& u : t->args) {
        xs.push_back(eval_recursor(*sig, d.companion, u));
        ihs.push_back(eval_eliminator(*sig, d, u));
      }
      EXPECT_EQ(eval_eliminator(*sig, d, t), eval_expr(d.methods[static_cast<std::size_t>(t->head)], xs, ihs));
    }
  }
  // Methods that only read ih agree with the recursor of the same operations.
  auto rec = parse_algebra(tree(), R"({"ops":{"leaf":"5","node":"x0 - 2 * x1"}})");
  auto nondep = parse_dalgebra(tree(), R"({"ops":{"leaf":"5","node":"ih0 - 2 * ih1"}})");
  for (const auto& t : enumerate_terms(tree(), 4))
    EXPECT_EQ(eval_eliminator(tree(), nondep, t), eval_recursor(tree(), rec, t));
}

TEST(TermAlgebra, CheckedArithmetic) {
  auto dbl = parse_algebra(nat(), R"({"ops":{"zero":"1","suc":"x0 * 2"}})");
  EXPECT_EQ(eval_recursor(nat(), dbl, nat_of(62)), std::int64_t{1} << 62);
  EXPECT_EQ(code_of([&] { eval_recursor(nat(), dbl, nat_of(63)); }), Code::Overflow);
  auto neg = parse_algebra(nat(), R"({"ops":{"zero":"0 - 9223372036854775807 - 1","suc":"-x0"}})");
  EXPECT_EQ(code_of([&] { eval_recursor(nat(), neg, nat_of(1)); }), Code::Overflow);
  EXPECT_EQ(code_of([] { parse_expr("99999999999999999999", 0, false); }), Code::Overflow);
}

TEST(TermAlgebra, DeepTermsUseTheWorkStack) {
  auto plus1 = parse_algebra(nat(), kPlus1);
  TermValue t = nat_of(200000);
  EXPECT_EQ(eval_recursor(nat(), plus1, t), 200000);
  EXPECT_EQ(code_of([&] { eval_recursor(nat(), plus1, t, Limits{1000}); }), Code::Overflow);
  EXPECT_EQ(eval_recursor(nat(), plus1, nat_of(999), Limits{1000}), 999);
}

TEST(TermAlgebra, MalformedSpecs) {
  for (const char* doc : {
           "[1, 2]",
           "{\"ops\":{\"zero\":\"0\"}}",
           "{\"ops\":{\"zero\":\"0\",\"suc\":\"x1\"}}",
           "{\"ops\":{\"zero\":\"0\",\"suc\":\"ih0\"}}",
           "{\"ops\":{\"zero\":\"0\",\"suc\":\"x0 +\"}}",
           "{\"ops\":{\"zero\":\"0\",\"suc\":\"x0\",\"pred\":\"x0\"}}",
           "{\"carrier\":\"real\",\"ops\":{\"zero\":\"0\",\"suc\":\"x0\"}}",
           "{\"ops\":{\"zero\":true,\"suc\":\"x0\"}}",
           "not json",
       })
    EXPECT_EQ(code_of([&] { parse_algebra(nat(), doc); }), Code::Arity) << doc;
  EXPECT_EQ(code_of([] { parse_dalgebra(nat(), R"({"ops":{"zero":"ih0","suc":"ih0"}})"); }), Code::Arity);
  EXPECT_EQ(code_of([] { parse_algebra(load("nat.sig"), kPlus1); }), Code::Profile);
}

TEST(TermAlgebra, TermParsing) {
  EXPECT_EQ(code_of([] { parse_term(nat(), "suc"); }), Code::Type);
  EXPECT_EQ(code_of([] { parse_term(nat(), "suc (suc one)"); }), Code::Scope);
  EXPECT_EQ(code_of([] { make_term(nat(), 1, {}); }), Code::Arity);
}

TEST(TermAlgebra, ExprPrinting) {
  EXPECT_EQ(print_expr(parse_expr("(x0 + 1) * -x1 - (2 - x0)", 2, false)), "(x0 + 1) * -x1 - (2 - x0)");
  EXPECT_EQ(print_expr(parse_expr("max(ih0, x0 * 2)", 1, true)), "max(ih0, x0 * 2)");
}

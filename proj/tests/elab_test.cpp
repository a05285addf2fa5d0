#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sigforge/elab.hpp"

using namespace sigforge;
using namespace sigforge::core;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Diagnostic diag_of(const std::string& src) {
  try {
    elab::elaborate_source(src);
  } catch (const Error& e) {
    return e.diag();
  }
  ADD_FAILURE() << "expected a diagnostic for:\n" << src;
  return {};
}

Code code_of(const std::string& src) { return diag_of(src).code; }

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> r;
  for (const auto& e : std::filesystem::directory_iterator(SIGFORGE_CORPUS_DIR))
    if (e.path().extension() == ".sig") r.push_back(e.path());
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST(Elab, NatShape) {
  Signature s = elab::elaborate_source(slurp(std::filesystem::path(SIGFORGE_CORPUS_DIR) / "nat.sig"));
  ASSERT_EQ(s.ctx.size(), 3u);
  EXPECT_TRUE(alpha_eq(s.ctx.entries[0].ty, mk::u()));
  EXPECT_TRUE(alpha_eq(s.ctx.entries[1].ty, mk::el(mk::var(0))));
  EXPECT_TRUE(alpha_eq(s.ctx.entries[2].ty, mk::pi("n", mk::var(1), mk::el(mk::var(2)))));
}

TEST(Elab, CorpusElaboratesAndIsStable) {
  auto files = corpus();
  ASSERT_GE(files.size(), 12u);
  for (const auto& f : files) {
    SCOPED_TRACE(f.string());
    Signature s = elab::elaborate_source(slurp(f), f.string());
    Checker(s).verify();
    std::string printed = print_signature(s);
    Signature t = elab::elaborate_source(printed);
    ASSERT_EQ(s.ctx.size(), t.ctx.size()) << printed;
    for (std::size_t i = 0; i < s.ctx.size(); ++i)
      EXPECT_TRUE(alpha_eq(s.ctx.entries[i].ty, t.ctx.entries[i].ty)) << printed;
    EXPECT_EQ(print_signature(t), printed);
  }
}

TEST(Elab, Torus) {
  std::string weak = slurp(std::filesystem::path(SIGFORGE_CORPUS_DIR) / "torus.sig");
  EXPECT_EQ(elab::elaborate_source(weak).ctx.size(), 5u);
  std::string strict = slurp(std::filesystem::path(SIGFORGE_CORPUS_DIR) / "negative" / "torus_strict.sig");
  Diagnostic d = diag_of(strict);
  EXPECT_EQ(d.code, Code::Profile);
  EXPECT_EQ(strict.substr(d.span.begin, 1), "J");
}

TEST(Elab, NestedInductionRejected) {
  EXPECT_EQ(code_of(slurp(std::filesystem::path(SIGFORGE_CORPUS_DIR) / "negative" / "rose.sig")), Code::Extern);
}

TEST(Elab, ExternsInInternalDomains) {
  EXPECT_EQ(code_of("profile fqii\nextern A : Type\nsignature L where\n L : U\n c : A -> El L"), Code::Extern);
  EXPECT_EQ(code_of("profile fqii\nextern A : Type\nextern f : A -> A\nsignature L where\n L : U\n c : El (f L)"),
            Code::Extern);
  EXPECT_EQ(code_of("profile fqii\nextern A : Type\nextern a : A\nextern f : A -> A\nsignature L where\n"
                    " L : A *> U\n c : El (L (f a a))"),
            Code::Arity);
}

TEST(Elab, CategoryError) {
  Diagnostic d = diag_of("profile fqii\nsignature N where\n N : U\n zero : El N\n bad : El zero");
  EXPECT_EQ(d.code, Code::Type);
  EXPECT_EQ(d.expected, "U");
  EXPECT_EQ(d.actual, "El N");
  EXPECT_EQ(d.line, 5);
  EXPECT_EQ(d.col, 11);
}

TEST(Elab, ScopeError) {
  Diagnostic d = diag_of("profile fqii\nsignature N where\n N : U\n zero : El M");
  EXPECT_EQ(d.code, Code::Scope);
  EXPECT_EQ(d.col, 12);
}

TEST(Elab, ReflChecksAgainstId) {
  Signature s = elab::elaborate_source(
      "profile hiit-strict\nsignature S where\n S1 : U\n base : El S1\n loop : El (Id base base)\n"
      " sq : El (Id loop refl)");
  const TyP& sq = s.ctx.entries[3].ty;
  ASSERT_EQ(sq->k, TyK::El);
  EXPECT_EQ(sq->t->k, TmK::IdSmall);
  EXPECT_EQ(sq->t->d->k, TmK::Refl);
}

TEST(Elab, LargeReflInFqii) {
  Signature s = elab::elaborate_source("profile fqii\nsignature E where\n A : U\n a : El A\n e : Id a a\n q : Id e refl\n");
  EXPECT_EQ(s.ctx.entries[3].ty->u->k, TmK::ReflLarge);
  EXPECT_EQ(code_of("profile fqii\nsignature E where\n A : U\n a : El A\n e : El (Id a a)\n"), Code::Profile);
}

TEST(Elab, GatingMatrix) {
  const char* head = "signature G where\n A : U\n a : El A\n";
  struct Case {
    const char* profile;
    const char* entry;
  } cases[] = {
      {"fqii", "x : reflect a"},
      {"hiit-weak", "x : El (reflect a)"},
      {"fqii", "x : El (J (y r. U) A a)"},
      {"hiit-strict", "x : El (J (y r. U) A a)"},
      {"fqii", "x : ID a a"},
      {"hiit-strict", "x : ID a a"},
      {"fqii", "x : El Top"},
      {"fqii", "x : El (Sg (y : A) A)"},
      {"fqii", "x : El (Id a a)"},
      {"hiit-strict", "x : Id a a"},
      {"hiit-weak", "x : Id a a"},
      {"fqii", "x : iota"},
  };
  for (const auto& c : cases) {
    std::string src = std::string("profile ") + c.profile + "\n" + head + " " + c.entry;
    EXPECT_EQ(code_of(src), Code::Profile) << src;
  }
  EXPECT_EQ(code_of("profile fqii\nextern I : Type\nsignature G where\n A : U\n f : El ((i : I) ~> A)"),
            Code::Profile);
  EXPECT_EQ(code_of("profile simple\nsignature G where\n A : U"), Code::Profile);
  EXPECT_EQ(code_of("profile simple\nextern I : Type\nsignature G where\n a : iota"), Code::Profile);
}

TEST(Elab, WeakIdentityFormers) {
  Signature s = elab::elaborate_source(
      "profile hiit-weak\nsignature W where\n A : U\n a : El A\n e : ID a a\n"
      " l : El (Id a a)\n"
      " b : ID (Jbeta (x r. El A) a a) (Jbeta (x r. El A) a a)\n"
      " c : ID (J (x r. El A) a e) a\n"
      " d : ID (J (x r. El A) a l) a");
  EXPECT_EQ(s.ctx.entries[4].ty->t->k, TmK::JBeta);
  EXPECT_EQ(s.ctx.entries[5].ty->t->k, TmK::JLarge);
  EXPECT_EQ(s.ctx.entries[6].ty->t->k, TmK::JSmall);
}

TEST(Elab, StandaloneTerm) {
  Signature s = elab::elaborate_source(slurp(std::filesystem::path(SIGFORGE_CORPUS_DIR) / "nat_simple.sig"));
  Typed t = elab::elaborate_term(s, *surface::parse_expr("suc (suc zero)"));
  EXPECT_EQ(t.ty->k, TyK::Iota);
  EXPECT_EQ(print_tm(s, s.ctx, t.tm), "suc (suc zero)");
}

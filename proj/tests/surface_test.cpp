#include <gtest/gtest.h>

#include "sigforge/surface.hpp"

using namespace sigforge;
using namespace sigforge::surface;

namespace {

Code code_of(std::string_view src) {
  try {
    parse_file(src);
  } catch (const Error& e) {
    return e.diag().code;
  }
  ADD_FAILURE() << "expected a parse failure";
  return Code::Usage;
}

}  // namespace

TEST(Surface, NatSimple) {
  SigFile f = parse_file("profile simple\nsignature Nat where\n zero : iota\n suc : iota -> iota");
  EXPECT_EQ(f.profile, Profile::Simple);
  EXPECT_EQ(f.name, "Nat");
  ASSERT_EQ(f.entries.size(), 2u);
  EXPECT_EQ(f.entries[0].name, "zero");
  EXPECT_EQ(f.entries[0].ty->kind, RawKind::Iota);
  EXPECT_EQ(f.entries[1].ty->kind, RawKind::SArr);
  EXPECT_EQ(f.entries[1].ty->a->kind, RawKind::Iota);
}

TEST(Surface, UnicodeIotaAndArrow) {
  SigFile f = parse_file("profile simple\nsignature Nat where\n zero : ι\n suc : ι → ι");
  ASSERT_EQ(f.entries.size(), 2u);
  EXPECT_EQ(f.entries[1].ty->kind, RawKind::SArr);
}

TEST(Surface, CircleStrict) {
  SigFile f = parse_file("profile hiit-strict\nsignature S1 where\n S1 : U\n base : El S1\n loop : El (Id base base)");
  EXPECT_EQ(f.profile, Profile::HiitStrict);
  ASSERT_EQ(f.entries.size(), 3u);
  const RawExpr& loop = *f.entries[2].ty;
  EXPECT_EQ(loop.kind, RawKind::El);
  EXPECT_EQ(loop.a->kind, RawKind::Id);
}

TEST(Surface, EmptySignature) {
  SigFile f = parse_file("profile fqii\nsignature Empty where");
  EXPECT_TRUE(f.entries.empty());
}

TEST(Surface, BinderGroupsAndContinuationLines) {
  SigFile f = parse_file(
      "profile fqii\n"
      "signature Cat where\n"
      "  Obj : U\n"
      "  Hom : Obj -> Obj -> U\n"
      "  comp : (i j k : Obj) -> Hom j k -> Hom i j\n"
      "         -> El (Hom i k)\n");
  ASSERT_EQ(f.entries.size(), 3u);
  const RawExpr* e = f.entries[2].ty.get();
  for (const char* n : {"i", "j", "k"}) {
    ASSERT_EQ(e->kind, RawKind::PiInt);
    EXPECT_EQ(e->name, n);
    e = e->b.get();
  }
  EXPECT_EQ(e->kind, RawKind::PiInt);
  EXPECT_EQ(e->name, "_");
}

TEST(Surface, ExternsAndExternalProducts) {
  SigFile f = parse_file(
      "profile fqii\n"
      "extern A : Type\n"
      "extern Nat0 : Type\n"
      "extern zero0 : Nat0\n"
      "extern suc0 : Nat0 -> Nat0\n"
      "signature Vec where\n"
      "  Vec : (n : Nat0) *> U\n"
      "  nil : El (Vec zero0)\n"
      "  cons : (n : Nat0) *> (x : A) *> Vec n -> El (Vec (suc0 n))\n");
  ASSERT_EQ(f.externs.size(), 4u);
  EXPECT_TRUE(f.externs[0].is_type);
  EXPECT_FALSE(f.externs[3].is_type);
  EXPECT_EQ(f.externs[3].arg_types, std::vector<std::string>{"Nat0"});
  EXPECT_EQ(f.externs[3].result_type, "Nat0");
  EXPECT_EQ(f.entries[0].ty->kind, RawKind::PiExt);
}

TEST(Surface, JAndPairs) {
  RawPtr e = parse_expr("J (x r. El (Id b x)) p q");
  EXPECT_EQ(e->kind, RawKind::J);
  EXPECT_EQ(e->name, "x");
  EXPECT_EQ(e->name2, "r");
  RawPtr p = parse_expr("proj1 (tt , Sg (x : A) (B x))");
  EXPECT_EQ(p->kind, RawKind::Proj1);
  EXPECT_EQ(p->a->kind, RawKind::Pair);
  EXPECT_EQ(p->a->b->kind, RawKind::Sg);
}

TEST(Surface, Errors) {
  EXPECT_EQ(code_of("signature X where"), Code::ProfileMissing);
  EXPECT_EQ(code_of("profile fqii\nsignature X where\n a : U\n a : U"), Code::DupName);
  EXPECT_EQ(code_of("profile fqii\nsignature X where\n a : U #"), Code::Lex);
  EXPECT_EQ(code_of("profile fqii\nsignature X where\n a : (U"), Code::Parse);
  EXPECT_EQ(code_of("profile nope\nsignature X where"), Code::Parse);
  EXPECT_EQ(code_of("profile fqii\nextern A : Type\nsignature X where\n A : U"), Code::DupName);
}

TEST(Surface, ErrorLocation) {
  std::string src = "profile fqii\nsignature X where\n a : U\n b : El (a";
  try {
    parse_file(src);
    FAIL();
  } catch (Error& e) {
    locate(e.diag(), src, "x.sig");
    EXPECT_EQ(e.diag().line, 4);
    EXPECT_EQ(e.diag().format().rfind("x.sig:4:", 0), 0u);
  }
}

TEST(Surface, RoundTripIsStable) {
  const char* srcs[] = {
      "profile simple\nsignature Tree where\n leaf : iota\n node : iota -> iota -> iota",
      "profile hiit-weak\nsignature T2 where\n T2 : U\n b : El T2\n p : El (Id b b)\n q : El (Id b b)\n"
      " t : El (Id (J (x r. El (Id b x)) p q) (J (x r. El (Id b x)) q p))",
      "profile hiit-strict\nextern I : Type\nsignature W where\n A : U\n f : (i : I) ~> A\n"
      " g : (I ~> A) -> El (Sg (x : A) Top)\n h : El (Id (proj1 (tt , tt)) tt)",
  };
  for (int k = 0; k < 3; ++k) {
    SigFile f = parse_file(srcs[k]);
    std::string printed = pretty(f);
    SigFile g = parse_file(printed);
    EXPECT_TRUE(same_structure(f, g)) << printed;
    EXPECT_EQ(pretty(g), printed);
    EXPECT_TRUE(spans_sound(f, std::string_view(srcs[k]).size()));
  }
}

TEST(Surface, Deterministic) {
  std::string src = "profile fqii\nsignature N where\n N : U\n z : El N\n s : (n : N) -> El N";
  EXPECT_TRUE(same_structure(parse_file(src), parse_file(src)));
}

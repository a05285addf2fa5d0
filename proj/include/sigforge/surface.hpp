#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sigforge/diagnostic.hpp"

namespace sigforge::surface {

enum class RawKind {
  Var,
  Iota,
  SArr,        // iota -> B ; a = B
  U,
  El,          // a
  PiInt,       // (name : a) -> b
  PiExt,       // (name : a) *> b, a names an extern type
  PiSmallExt,  // (name : a) ~> b
  Id,          // Id a b ; small or large is decided by the elaborator
  ID,          // ID a b
  Refl,
  J,           // J (name name2. a) b c
  JBeta,       // Jbeta (name name2. a) b c ; c is the start point
  Top,
  Tt,
  Sg,          // Sg (name : a) b
  Pair,        // (a , b)
  Proj1,
  Proj2,
  App,         // a b
  Reflect,     // reflect a ; parsed so that it can be rejected with a proper code
};

struct RawExpr;
using RawPtr = std::shared_ptr<const RawExpr>;

struct RawExpr {
  RawKind kind = RawKind::Var;
  Span span;
  std::string name;
  std::string name2;
  RawPtr a, b, c;
};

RawPtr mk(RawKind k, Span sp, RawPtr a = nullptr, RawPtr b = nullptr, RawPtr c = nullptr);
RawPtr mk_var(std::string name, Span sp);
RawPtr mk_binder(RawKind k, std::string name, RawPtr dom, RawPtr cod, Span sp);

struct ExternDecl {
  std::string name;
  bool is_type = true;                 // extern X : Type
  std::vector<std::string> arg_types;  // extern f : A -> B -> C
  std::string result_type;
  Span span;
};

struct Entry {
  std::string name;
  RawPtr ty;
  Span span;
};

struct SigFile {
  Profile profile = Profile::Fqii;
  std::string name;
  std::vector<ExternDecl> externs;
  std::vector<Entry> entries;
};

// Throws sigforge::Error with E_LEX / E_PARSE / E_DUPNAME / E_PROFILE_MISSING.
SigFile parse_file(std::string_view source);

// Parses a standalone expression (used for --term).
RawPtr parse_expr(std::string_view source);

std::string pretty(const RawExpr& e);
std::string pretty(const SigFile& f);

// Structural equality ignoring spans.
bool same_structure(const RawExpr& a, const RawExpr& b);
bool same_structure(const SigFile& a, const SigFile& b);

// Every node's span lies within [0, size) and is non-empty.
bool spans_sound(const SigFile& f, std::size_t size);

}  // namespace sigforge::surface

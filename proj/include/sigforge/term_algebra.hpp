#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sigforge/core.hpp"

namespace sigforge::talg {

// A closed term of the base sort: a constructor applied to closed terms.
struct Node;
using TermValue = std::shared_ptr<const Node>;
struct Node {
  int head = 0;  // de Bruijn level of the constructor
  std::vector<TermValue> args;
  std::size_t depth = 1;  // constructor layers on the longest path
  std::size_t size = 1;   // constructor occurrences
  core::TmP tm;           // the same term in core syntax

  Node() = default;
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;
  ~Node();  // iterative, so deep terms do not exhaust the stack
};

struct Constructor {
  std::string name;
  int arity = 0;
};

// Constructors of a simple signature in context order. E_PROFILE otherwise.
std::vector<Constructor> constructors(const core::Signature& sig);

// Throws E_ARITY when args does not match the constructor.
TermValue make_term(const core::Signature& sig, int head, std::vector<TermValue> args);
// Spine view of a closed core term of the base sort. E_TYPE on anything else.
TermValue from_core(const core::Signature& sig, const core::TmP& t);
// Parses and elaborates a term written in signature syntax.
TermValue parse_term(const core::Signature& sig, std::string_view src);
std::string print_term(const core::Signature& sig, const TermValue& t);

// Every term of depth at most max_depth, by depth, then constructor, then
// arguments in enumeration order. E_OVERFLOW past max_terms results.
std::vector<TermValue> enumerate_terms(const core::Signature& sig, std::size_t max_depth,
                                       std::size_t max_terms = 1000000);

// A term of depth at most max_depth, constructors chosen uniformly among those
// that still fit. E_TYPE when the base sort has no closed terms.
TermValue random_term(const core::Signature& sig, std::mt19937_64& rng, std::size_t max_depth);

// ---------------------------------------------------------------- arithmetic

// Integer expression over x0.. (argument values) and ih0.. (eliminator values
// of the arguments): literals, + - *, unary -, min(a, b), max(a, b).
struct Expr {
  enum class Op { Lit, X, Ih, Neg, Add, Sub, Mul, Min, Max };
  Op op = Op::Lit;
  std::int64_t value = 0;  // Lit
  int index = 0;           // X, Ih
  std::vector<Expr> kids;
};

// E_ARITY on syntax errors or variables out of range; ih names only when
// dependent is set.
Expr parse_expr(std::string_view src, int arity, bool dependent);
std::string print_expr(const Expr& e);
// Checked arithmetic; E_OVERFLOW when a step leaves the 64-bit range.
std::int64_t eval_expr(const Expr& e, const std::vector<std::int64_t>& xs, const std::vector<std::int64_t>& ihs = {});

// One operation per constructor, in constructor order.
struct AlgebraSpec {
  std::vector<Expr> ops;
};
// Methods see x_i, the companion recursor value of argument i, and ih_i, its
// eliminator value.
struct DispAlgebraSpec {
  AlgebraSpec companion;
  std::vector<Expr> methods;
};

// {"carrier":"int64","ops":{"zero":"0","suc":"x0 + 1"}}. E_ARITY when the
// document is malformed or an operation is missing, unknown or ill-scoped.
AlgebraSpec parse_algebra(const core::Signature& sig, std::string_view json_text);
// As above, methods under "ops" may use ih names; "algebra" optionally gives
// the companion operations, which default to size_algebra.
DispAlgebraSpec parse_dalgebra(const core::Signature& sig, std::string_view json_text);
// Constants to 0, others to 1 + the sum of their arguments.
AlgebraSpec size_algebra(const core::Signature& sig);

struct Limits {
  std::size_t max_nodes = 1000000;  // E_OVERFLOW beyond this many visited nodes
};

std::int64_t eval_recursor(const core::Signature& sig, const AlgebraSpec& alg, const TermValue& t,
                           const Limits& lim = {});
std::int64_t eval_eliminator(const core::Signature& sig, const DispAlgebraSpec& dalg, const TermValue& t,
                             const Limits& lim = {});

}  // namespace sigforge::talg

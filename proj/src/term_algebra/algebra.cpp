#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <map>

#include <json.hpp>

#include "sigforge/term_algebra.hpp"

namespace sigforge::talg {

namespace {

using Op = Expr::Op;

class ExprParser {
public:
  ExprParser(std::string_view s, int arity, bool dependent) : s_(s), arity_(arity), dependent_(dependent) {}

  Expr parse() {
    Expr e = sum();
    skip();
    if (i_ != s_.size()) bad("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

private:
  std::string_view s_;
  std::size_t i_ = 0;
  int arity_;
  bool dependent_;

  [[noreturn]] void bad(const std::string& m) const {
    fail(Code::Arity, "in expression '" + std::string(s_) + "': " + m);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  static Expr node(Op op, std::vector<Expr> kids) {
    Expr e;
    e.op = op;
    e.kids = std::move(kids);
    return e;
  }

  Expr sum() {
    Expr e = product();
    for (;;) {
      if (eat('+')) e = node(Op::Add, {e, product()});
      else if (eat('-')) e = node(Op::Sub, {e, product()});
      else return e;
    }
  }

  Expr product() {
    Expr e = unary();
    while (eat('*')) e = node(Op::Mul, {e, unary()});
    return e;
  }

  Expr unary() {
    if (eat('-')) return node(Op::Neg, {unary()});
    return atom();
  }

  Expr atom() {
    skip();
    if (eat('(')) {
      Expr e = sum();
      if (!eat(')')) bad("expected ')'");
      return e;
    }
    if (i_ >= s_.size()) bad("unexpected end");
    if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      Expr e;
      auto [p, ec] = std::from_chars(s_.data() + i_, s_.data() + s_.size(), e.value);
      if (ec == std::errc::result_out_of_range) fail(Code::Overflow, "literal out of the 64-bit range");
      i_ = static_cast<std::size_t>(p - s_.data());
      return e;
    }
    std::size_t b = i_;
    while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::string w(s_.substr(b, i_ - b));
    if (w == "min" || w == "max") {
      if (!eat('(')) bad("expected '(' after " + w);
      Expr a = sum();
      if (!eat(',')) bad("expected ','");
      Expr c = sum();
      if (!eat(')')) bad("expected ')'");
      return node(w == "min" ? Op::Min : Op::Max, {a, c});
    }
    for (auto [prefix, op] : {std::pair{"ih", Op::Ih}, std::pair{"x", Op::X}}) {
      std::string_view pre = prefix;
      if (w.size() <= pre.size() || w.compare(0, pre.size(), pre) != 0) continue;
      std::string digits = w.substr(pre.size());
      if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        continue;
      if (op == Op::Ih && !dependent_) bad(w + " is only available to eliminator methods");
      Expr e;
      e.op = op;
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), e.index);
      if (ec != std::errc() || e.index >= arity_)
        bad(w + " is out of range for an operation of arity " + std::to_string(arity_));
      return e;
    }
    bad(w.empty() ? "unexpected '" + std::string(1, s_[i_]) + "'" : "unknown name '" + w + "'");
  }
};

std::int64_t checked(Op op, std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  bool over = false;
  switch (op) {
    case Op::Add: over = __builtin_add_overflow(a, b, &r); break;
    case Op::Sub: over = __builtin_sub_overflow(a, b, &r); break;
    case Op::Mul: over = __builtin_mul_overflow(a, b, &r); break;
    case Op::Min: return std::min(a, b);
    case Op::Max: return std::max(a, b);
    default: break;
  }
  if (over) fail(Code::Overflow, "integer overflow");
  return r;
}

const char* op_text(Op op) {
  switch (op) {
    case Op::Add: return " + ";
    case Op::Sub: return " - ";
    case Op::Mul: return " * ";
    case Op::Min: return "min";
    case Op::Max: return "max";
    default: return "";
  }
}

int prec(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul: return 2;
    case Op::Neg: return 3;
    default: return 4;
  }
}

void print(const Expr& e, std::string& out) {
  auto sub = [&](const Expr& k, int p) {
    bool paren = prec(k.op) < p;
    if (paren) out += "(";
    print(k, out);
    if (paren) out += ")";
  };
  switch (e.op) {
    case Op::Lit: out += std::to_string(e.value); return;
    case Op::X: out += "x" + std::to_string(e.index); return;
    case Op::Ih: out += "ih" + std::to_string(e.index); return;
    case Op::Neg:
      out += "-";
      sub(e.kids[0], 3);
      return;
    case Op::Min:
    case Op::Max:
      out += op_text(e.op);
      out += "(";
      print(e.kids[0], out);
      out += ", ";
      print(e.kids[1], out);
      out += ")";
      return;
    default:
      sub(e.kids[0], prec(e.op));
      out += op_text(e.op);
      sub(e.kids[1], prec(e.op) + 1);
  }
}

nlohmann::json parse_doc(std::string_view text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) fail(Code::Arity, "algebra document is not a JSON object");
  if (doc.contains("carrier") && doc["carrier"] != "int64") fail(Code::Arity, "the only supported carrier is int64");
  return doc;
}

std::vector<Expr> parse_ops(const core::Signature& sig, const nlohmann::json& ops, bool dependent,
                            const std::string& what) {
  if (!ops.is_object()) fail(Code::Arity, "\"" + what + "\" must be an object");
  auto cs = constructors(sig);
  std::map<std::string, int> index;
  for (int c = 0; c < static_cast<int>(cs.size()); ++c) index[cs[static_cast<std::size_t>(c)].name] = c;
  std::vector<Expr> out(cs.size());
  std::vector<bool> seen(cs.size(), false);
  for (const auto& [name, val] : ops.items()) {
    auto it = index.find(name);
    if (it == index.end()) fail(Code::Arity, "\"" + what + "\" names unknown constructor " + name);
    std::string src;
    if (val.is_string()) src = val.get<std::string>();
    else if (val.is_number_integer()) src = val.dump();
    else fail(Code::Arity, "operation " + name + " must be a string or an integer");
    auto c = static_cast<std::size_t>(it->second);
    out[c] = parse_expr(src, cs[c].arity, dependent);
    seen[c] = true;
  }
  for (std::size_t c = 0; c < cs.size(); ++c)
    if (!seen[c]) fail(Code::Arity, "\"" + what + "\" lacks an operation for " + cs[c].name);
  return out;
}

}  // namespace

Expr parse_expr(std::string_view src, int arity, bool dependent) { return ExprParser(src, arity, dependent).parse(); }

std::string print_expr(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

std::int64_t eval_expr(const Expr& e, const std::vector<std::int64_t>& xs, const std::vector<std::int64_t>& ihs) {
  switch (e.op) {
    case Op::Lit: return e.value;
    case Op::X: return xs.at(static_cast<std::size_t>(e.index));
    case Op::Ih: return ihs.at(static_cast<std::size_t>(e.index));
    case Op::Neg: {
      std::int64_t v = eval_expr(e.kids[0], xs, ihs);
      if (v == std::numeric_limits<std::int64_t>::min()) fail(Code::Overflow, "integer overflow");
      return -v;
    }
    default: return checked(e.op, eval_expr(e.kids[0], xs, ihs), eval_expr(e.kids[1], xs, ihs));
  }
}

AlgebraSpec parse_algebra(const core::Signature& sig, std::string_view json_text) {
  nlohmann::json doc = parse_doc(json_text);
  if (!doc.contains("ops")) fail(Code::Arity, "algebra document lacks \"ops\"");
  return {parse_ops(sig, doc["ops"], false, "ops")};
}

DispAlgebraSpec parse_dalgebra(const core::Signature& sig, std::string_view json_text) {
  nlohmann::json doc = parse_doc(json_text);
  if (!doc.contains("ops")) fail(Code::Arity, "algebra document lacks \"ops\"");
  DispAlgebraSpec d;
  d.methods = parse_ops(sig, doc["ops"], true, "ops");
  d.companion = doc.contains("algebra") ? AlgebraSpec{parse_ops(sig, doc["algebra"], false, "algebra")}
                                        : size_algebra(sig);
  return d;
}

AlgebraSpec size_algebra(const core::Signature& sig) {
  AlgebraSpec a;
  for (const auto& c : constructors(sig)) {
    std::string src = c.arity == 0 ? "0" : "1";
    for (int i = 0; i < c.arity; ++i) src += " + x" + std::to_string(i);
    a.ops.push_back(parse_expr(src, c.arity, false));
  }
  return a;
}

namespace {

// Post-order walk with an explicit stack; visit(node, child results) -> result.
template <class R, class F>
R fold(const TermValue& t, const Limits& lim, F visit) {
  struct Frame {
    const Node* n;
    std::size_t next;
  };
  std::vector<Frame> stack{{t.get(), 0}};
  std::vector<R> results;
  std::size_t visited = 1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < f.n->args.size()) {
      const Node* c = f.n->args[f.next++].get();
      if (++visited > lim.max_nodes)
        fail(Code::Overflow, "term has more than " + std::to_string(lim.max_nodes) + " nodes");
      stack.push_back({c, 0});
      continue;
    }
    std::size_t k = f.n->args.size();
    std::vector<R> kids(results.end() - static_cast<std::ptrdiff_t>(k), results.end());
    results.resize(results.size() - k);
    results.push_back(visit(*f.n, kids));
    stack.pop_back();
  }
  return results.back();
}

void check_arity(const core::Signature& sig, const std::vector<Expr>& ops) {
  if (ops.size() != sig.ctx.size()) fail(Code::Arity, "algebra does not match the signature");
}

}  // namespace

std::int64_t eval_recursor(const core::Signature& sig, const AlgebraSpec& alg, const TermValue& t, const Limits& lim) {
  check_arity(sig, alg.ops);
  return fold<std::int64_t>(t, lim, [&](const Node& n, const std::vector<std::int64_t>& xs) {
    return eval_expr(alg.ops[static_cast<std::size_t>(n.head)], xs);
  });
}

std::int64_t eval_eliminator(const core::Signature& sig, const DispAlgebraSpec& dalg, const TermValue& t,
                             const Limits& lim) {
  check_arity(sig, dalg.methods);
  check_arity(sig, dalg.companion.ops);
  using P = std::pair<std::int64_t, std::int64_t>;  // recursor value, eliminator value
  return fold<P>(t, lim,
                 [&](const Node& n, const std::vector<P>& kids) {
                   std::vector<std::int64_t> xs, ihs;
                   for (const auto& [x, ih] : kids) {
                     xs.push_back(x);
                     ihs.push_back(ih);
                   }
                   auto h = static_cast<std::size_t>(n.head);
                   return P{eval_expr(dalg.companion.ops[h], xs), eval_expr(dalg.methods[h], xs, ihs)};
                 })
      .second;
}

}  // namespace sigforge::talg

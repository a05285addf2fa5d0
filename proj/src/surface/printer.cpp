#include "sigforge/surface.hpp"

namespace sigforge::surface {

namespace {

// 0: binder / arrow level, 1: application level, 2: atom
int level_of(const RawExpr& e) {
  switch (e.kind) {
    case RawKind::SArr:
    case RawKind::PiInt:
    case RawKind::PiExt:
    case RawKind::PiSmallExt:
      return 0;
    case RawKind::El:
    case RawKind::Id:
    case RawKind::ID:
    case RawKind::J:
    case RawKind::JBeta:
    case RawKind::Sg:
    case RawKind::Proj1:
    case RawKind::Proj2:
    case RawKind::App:
    case RawKind::Reflect:
      return 1;
    default:
      return 2;
  }
}

void print(const RawExpr& e, int ctx, std::string& out);

void print_at(const RawExpr& e, int ctx, std::string& out) {
  if (level_of(e) < ctx) {
    out += "(";
    print(e, 0, out);
    out += ")";
  } else {
    print(e, ctx, out);
  }
}

const char* arrow_of(RawKind k) {
  switch (k) {
    case RawKind::PiExt: return " *> ";
    case RawKind::PiSmallExt: return " ~> ";
    default: return " -> ";
  }
}

void print(const RawExpr& e, int, std::string& out) {
  switch (e.kind) {
    case RawKind::Var: out += e.name; return;
    case RawKind::Iota: out += "iota"; return;
    case RawKind::U: out += "U"; return;
    case RawKind::Top: out += "Top"; return;
    case RawKind::Tt: out += "tt"; return;
    case RawKind::Refl: out += "refl"; return;
    case RawKind::SArr:
      out += "iota -> ";
      print_at(*e.a, 0, out);
      return;
    case RawKind::PiInt:
    case RawKind::PiExt:
    case RawKind::PiSmallExt:
      if (e.name == "_") {
        // `iota -> B` would re-parse as SArr, so an iota domain keeps its binder
        if (e.a->kind == RawKind::Iota) {
          out += "(_ : iota)";
        } else {
          print_at(*e.a, 1, out);
        }
      } else {
        out += "(" + e.name + " : ";
        print(*e.a, 0, out);
        out += ")";
      }
      out += arrow_of(e.kind);
      print_at(*e.b, 0, out);
      return;
    case RawKind::El:
    case RawKind::Proj1:
    case RawKind::Proj2:
    case RawKind::Reflect:
      out += e.kind == RawKind::El ? "El " : e.kind == RawKind::Proj1 ? "proj1 " : e.kind == RawKind::Proj2 ? "proj2 " : "reflect ";
      print_at(*e.a, 2, out);
      return;
    case RawKind::Id:
    case RawKind::ID:
      out += e.kind == RawKind::Id ? "Id " : "ID ";
      print_at(*e.a, 2, out);
      out += " ";
      print_at(*e.b, 2, out);
      return;
    case RawKind::J:
    case RawKind::JBeta:
      out += (e.kind == RawKind::J ? "J (" : "Jbeta (") + e.name + " " + e.name2 + ". ";
      print(*e.a, 0, out);
      out += ") ";
      print_at(*e.b, 2, out);
      out += " ";
      print_at(*e.c, 2, out);
      return;
    case RawKind::Sg:
      out += "Sg (" + e.name + " : ";
      print(*e.a, 0, out);
      out += ") ";
      print_at(*e.b, 2, out);
      return;
    case RawKind::Pair:
      out += "(";
      print(*e.a, 0, out);
      out += " , ";
      print(*e.b, 0, out);
      out += ")";
      return;
    case RawKind::App:
      print_at(*e.a, 1, out);
      out += " ";
      print_at(*e.b, 2, out);
      return;
  }
}

}  // namespace

std::string pretty(const RawExpr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

std::string pretty(const SigFile& f) {
  std::string out = "profile ";
  out += profile_name(f.profile);
  out += "\n";
  for (const auto& x : f.externs) {
    out += "extern " + x.name + " : ";
    if (x.is_type) {
      out += "Type";
    } else {
      for (const auto& a : x.arg_types) out += a + " -> ";
      out += x.result_type;
    }
    out += "\n";
  }
  out += "signature " + f.name + " where\n";
  for (const auto& en : f.entries) {
    out += "  " + en.name + " : " + pretty(*en.ty) + "\n";
  }
  return out;
}

bool same_structure(const RawExpr& a, const RawExpr& b) {
  if (a.kind != b.kind || a.name != b.name || a.name2 != b.name2) return false;
  auto child = [](const RawPtr& x, const RawPtr& y) {
    if (!x || !y) return !x && !y;
    return same_structure(*x, *y);
  };
  return child(a.a, b.a) && child(a.b, b.b) && child(a.c, b.c);
}

bool same_structure(const SigFile& a, const SigFile& b) {
  if (a.profile != b.profile || a.name != b.name) return false;
  if (a.externs.size() != b.externs.size() || a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.externs.size(); ++i) {
    const auto& x = a.externs[i];
    const auto& y = b.externs[i];
    if (x.name != y.name || x.is_type != y.is_type || x.arg_types != y.arg_types || x.result_type != y.result_type)
      return false;
  }
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].name != b.entries[i].name) return false;
    if (!same_structure(*a.entries[i].ty, *b.entries[i].ty)) return false;
  }
  return true;
}

namespace {
bool spans_ok(const RawExpr& e, std::size_t size) {
  if (e.span.begin >= e.span.end || e.span.end > size) return false;
  for (const RawPtr& c : {e.a, e.b, e.c})
    if (c && !spans_ok(*c, size)) return false;
  return true;
}
}  // namespace

bool spans_sound(const SigFile& f, std::size_t size) {
  for (const auto& en : f.entries) {
    if (en.span.begin >= en.span.end || en.span.end > size) return false;
    if (!spans_ok(*en.ty, size)) return false;
  }
  return true;
}

}  // namespace sigforge::surface

#include "sigforge/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "sigforge/amds.hpp"
#include "sigforge/elab.hpp"
#include "sigforge/term_algebra.hpp"

namespace sigforge::cli {

namespace {

struct Config {
  std::string command;
  std::vector<std::string> inputs;
  std::string what;
  std::string style = "ascii";
  std::string out = "stdout";
  bool diag_json = false;
  std::string algebra, dalgebra, term;
  std::size_t depth = 0;
};

struct Usage {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    Diagnostic d;
    d.code = Code::Io;
    d.file = path;
    d.message = "cannot read " + path;
    throw Error(d);
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const Config& c, const std::string& text, std::ostream& out) {
  if (c.out == "stdout") {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!(f << text)) {
    Diagnostic d;
    d.code = Code::Io;
    d.file = c.out;
    d.message = "cannot write " + c.out;
    throw Error(d);
  }
}

// SIGFORGE_COLOR=1 or 0 forces colour on or off; unset means a terminal.
bool use_color(std::ostream& err) {
  if (const char* v = std::getenv("SIGFORGE_COLOR")) return std::string(v) == "1";
  return &err == &std::cerr && isatty(STDERR_FILENO);
}

std::vector<amds::Part> parse_what(const std::string& what) {
  std::vector<amds::Part> parts;
  std::stringstream ss(what);
  std::string item;
  while (std::getline(ss, item, ',')) {
    static const std::pair<const char*, amds::Part> shorts[] = {
        {"a", amds::Part::Alg}, {"m", amds::Part::Mor}, {"d", amds::Part::DispAlg}, {"s", amds::Part::Section}};
    amds::Part p{};
    bool ok = amds::parse_part(item, p);
    for (const auto& [n, q] : shorts)
      if (item == n) {
        p = q;
        ok = true;
      }
    if (!ok) throw Usage{"unknown part '" + item + "' in --what (use a,m,d,s,ind,rec)"};
    parts.push_back(p);
  }
  if (parts.empty()) throw Usage{"--what needs at least one part"};
  return parts;
}

core::Signature load_signature(const std::string& path) { return elab::elaborate_source(read_file(path), path); }

// Runs fn; an Error becomes a diagnostic with the file filled in.
template <class F>
bool guarded(const std::string& file, std::vector<Diagnostic>& diags, F fn) {
  try {
    fn();
    return true;
  } catch (const Error& e) {
    Diagnostic d = e.diag();
    if (d.file.empty()) d.file = file;
    diags.push_back(std::move(d));
    return false;
  }
}

void validate(const Config& c) {
  if (c.inputs.empty()) throw Usage{"no input file"};
  if (c.out != "stdout" && c.inputs.size() > 1) throw Usage{"--out takes a single input file"};
  if (c.style != "ascii" && c.style != "agda") throw Usage{"--style must be ascii or agda"};
  if (c.command == "emit" && !c.what.empty()) parse_what(c.what);
  if (c.command == "eval") {
    if (c.term.empty()) throw Usage{"eval needs --term"};
    if (c.algebra.empty() == c.dalgebra.empty()) throw Usage{"eval needs exactly one of --algebra and --dalgebra"};
    if (c.inputs.size() != 1) throw Usage{"eval takes a single input file"};
  }
  if (c.command == "enumerate" && c.inputs.size() != 1) throw Usage{"enumerate takes a single input file"};
}

std::string run_file(const Config& c, const std::string& path) {
  core::Signature sig = load_signature(path);
  if (c.command == "check") {
    core::Checker(sig).verify();
    return "ok " + sig.name + " (" + std::string(profile_name(sig.profile)) + ") " +
           std::to_string(sig.ctx.size()) + " entries\n";
  }
  if (c.command == "emit") {
    std::vector<amds::Part> parts = c.what.empty() ? amds::supported_parts(sig) : parse_what(c.what);
    inner::Unit u = amds::emit(sig, parts);
    inner::check_unit(u);
    return inner::print_unit(u, c.style == "agda" ? inner::Style::Agda : inner::Style::Ascii);
  }
  if (c.command == "eval") {
    talg::TermValue t = talg::parse_term(sig, c.term);
    std::int64_t v = 0;
    if (!c.algebra.empty()) {
      std::string doc = read_file(c.algebra);
      talg::AlgebraSpec a;
      try {
        a = talg::parse_algebra(sig, doc);
      } catch (Error& e) {
        e.diag().file = c.algebra;
        throw;
      }
      v = talg::eval_recursor(sig, a, t);
    } else {
      std::string doc = read_file(c.dalgebra);
      talg::DispAlgebraSpec d;
      try {
        d = talg::parse_dalgebra(sig, doc);
      } catch (Error& e) {
        e.diag().file = c.dalgebra;
        throw;
      }
      v = talg::eval_eliminator(sig, d, t);
    }
    return std::to_string(v) + "\n";
  }
  std::string text;
  for (const auto& t : talg::enumerate_terms(sig, c.depth)) text += talg::print_term(sig, t) + "\n";
  return text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"sigforge: signatures of inductive types, their algebras and term models", "sigforge"};
  app.require_subcommand(1);
  app.add_flag("--diag-json", c.diag_json, "report diagnostics as JSON on stderr");

  auto* check = app.add_subcommand("check", "parse, elaborate and type check signatures");
  auto* emit = app.add_subcommand("emit", "emit algebra, morphism, displayed algebra and section types");
  auto* eval = app.add_subcommand("eval", "evaluate a term in an algebra (simple profile)");
  auto* enumerate = app.add_subcommand("enumerate", "list the closed terms up to a depth (simple profile)");
  for (auto* sub : {check, emit, eval, enumerate}) {
    sub->add_option("input", c.inputs, "signature files")->required();
    sub->add_flag("--diag-json", c.diag_json, "report diagnostics as JSON on stderr");
    sub->add_option("--out", c.out, "output file, or stdout");
  }
  emit->add_option("--what", c.what, "comma separated parts: a,m,d,s,ind,rec (default: all supported)");
  emit->add_option("--style", c.style, "ascii or agda")->check(CLI::IsMember({"ascii", "agda"}));
  eval->add_option("--algebra", c.algebra, "algebra JSON file (recursor)");
  eval->add_option("--dalgebra", c.dalgebra, "displayed algebra JSON file (eliminator)");
  eval->add_option("--term", c.term, "closed term of the base sort")->required();
  enumerate->add_option("--depth", c.depth, "maximum depth")->required();

  try {
    app.parse(argc, argv);
    for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
    validate(c);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "sigforge: " << e.what() << "\n" << "run 'sigforge --help' for usage\n";
    return 2;
  } catch (const Usage& u) {
    err << "sigforge: " << u.message << "\n";
    return 2;
  }

  std::vector<Diagnostic> diags;
  std::string text;
  for (const auto& path : c.inputs) {
    std::string buf;  // per file, so a failing file writes nothing
    if (guarded(path, diags, [&] { buf = run_file(c, path); })) text += buf;
  }
  if (diags.empty()) {
    std::vector<Diagnostic> write_diags;
    if (!guarded(c.out, write_diags, [&] { write_output(c, text, out); })) diags = write_diags;
  } else if (c.out == "stdout") {
    out << text;
  }
  if (diags.empty()) {
    if (c.diag_json) err << diagnostics_to_json({}) << "\n";
    return 0;
  }
  if (c.diag_json) {
    err << diagnostics_to_json(diags) << "\n";
  } else {
    bool color = use_color(err);
    for (const auto& d : diags) {
      std::string s = d.format();
      if (color) {
        std::string code(code_name(d.code));
        auto at = s.find(code);
        if (at != std::string::npos) s.replace(at, code.size(), "\x1b[31m" + code + "\x1b[0m");
      }
      err << s << "\n";
    }
  }
  return 1;
}

}  // namespace sigforge::cli

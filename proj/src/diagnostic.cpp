#include "sigforge/diagnostic.hpp"

#include "json.hpp"

namespace sigforge {

std::string_view profile_name(Profile p) {
  switch (p) {
    case Profile::Simple: return "simple";
    case Profile::Fqii: return "fqii";
    case Profile::HiitStrict: return "hiit-strict";
    case Profile::HiitWeak: return "hiit-weak";
  }
  return "?";
}

bool parse_profile_name(std::string_view s, Profile& out) {
  if (s == "simple") out = Profile::Simple;
  else if (s == "fqii") out = Profile::Fqii;
  else if (s == "hiit-strict") out = Profile::HiitStrict;
  else if (s == "hiit-weak") out = Profile::HiitWeak;
  else return false;
  return true;
}

std::string_view code_name(Code c) {
  switch (c) {
    case Code::Lex: return "E_LEX";
    case Code::Parse: return "E_PARSE";
    case Code::DupName: return "E_DUPNAME";
    case Code::ProfileMissing: return "E_PROFILE_MISSING";
    case Code::Scope: return "E_SCOPE";
    case Code::Type: return "E_TYPE";
    case Code::Profile: return "E_PROFILE";
    case Code::Extern: return "E_EXTERN";
    case Code::InnerType: return "E_INNER_TYPE";
    case Code::Unsupported: return "E_UNSUPPORTED";
    case Code::Arity: return "E_ARITY";
    case Code::Overflow: return "E_OVERFLOW";
    case Code::Usage: return "E_USAGE";
    case Code::Io: return "E_IO";
  }
  return "E_?";
}

std::string Diagnostic::format() const {
  std::string out = file.empty() ? std::string("<input>") : file;
  if (line > 0) out += ":" + std::to_string(line) + ":" + std::to_string(col);
  out += ": ";
  out += code_name(code);
  out += ": ";
  out += message;
  if (!expected.empty()) out += "\n  expected: " + expected;
  if (!actual.empty()) out += "\n  actual:   " + actual;
  return out;
}

Error::Error(Diagnostic d) : std::runtime_error(d.message), diag_(std::move(d)) {}

void fail(Code c, std::string msg, Span sp) {
  Diagnostic d;
  d.code = c;
  d.message = std::move(msg);
  d.span = sp;
  throw Error(std::move(d));
}

void locate(Diagnostic& d, std::string_view source, std::string_view file) {
  d.file = std::string(file);
  int line = 1, col = 1;
  std::size_t lim = std::min(d.span.begin, source.size());
  for (std::size_t i = 0; i < lim; ++i) {
    unsigned char ch = static_cast<unsigned char>(source[i]);
    if (ch == '\n') {
      ++line;
      col = 1;
    } else if ((ch & 0xC0) != 0x80) {
      ++col;
    }
  }
  d.line = line;
  d.col = col;
}

std::string diagnostics_to_json(const std::vector<Diagnostic>& ds) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : ds) {
    nlohmann::json j;
    j["file"] = d.file;
    j["line"] = d.line;
    j["col"] = d.col;
    j["code"] = std::string(code_name(d.code));
    j["message"] = d.message;
    j["span"] = {{"begin", d.span.begin}, {"end", d.span.end}};
    if (!d.profile.empty()) j["profile"] = d.profile;
    if (!d.expected.empty()) j["expected"] = d.expected;
    if (!d.actual.empty()) j["actual"] = d.actual;
    arr.push_back(std::move(j));
  }
  nlohmann::json root;
  root["diagnostics"] = std::move(arr);
  return root.dump(2);
}

}  // namespace sigforge

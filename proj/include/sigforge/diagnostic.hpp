#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sigforge {

enum class Profile { Simple, Fqii, HiitStrict, HiitWeak };

std::string_view profile_name(Profile p);          // "simple", "fqii", ...
bool parse_profile_name(std::string_view s, Profile& out);

// Byte range [begin, end) into the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class Code {
  Lex,
  Parse,
  DupName,
  ProfileMissing,
  Scope,
  Type,
  Profile,
  Extern,
  InnerType,
  Unsupported,
  Arity,
  Overflow,
  Usage,
  Io,
};

std::string_view code_name(Code c);  // "E_LEX", ...

struct Diagnostic {
  Code code = Code::Parse;
  std::string message;
  Span span;
  std::string file;
  int line = 0;  // 1-based, 0 when unknown
  int col = 0;
  std::string profile;   // empty when no profile was in force
  std::string expected;  // printed types for mismatches
  std::string actual;

  std::string format() const;  // file:line:col: CODE: message
};

// Thrown by every pipeline stage; carries one structured diagnostic.
class Error : public std::runtime_error {
public:
  explicit Error(Diagnostic d);
  const Diagnostic& diag() const { return diag_; }
  Diagnostic& diag() { return diag_; }

private:
  Diagnostic diag_;
};

[[noreturn]] void fail(Code c, std::string msg, Span sp = {});

// Fill line/col of d from its span.
void locate(Diagnostic& d, std::string_view source, std::string_view file);

std::string diagnostics_to_json(const std::vector<Diagnostic>& ds);

}  // namespace sigforge

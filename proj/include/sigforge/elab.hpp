#pragma once

#include <string_view>

#include "sigforge/core.hpp"
#include "sigforge/surface.hpp"

namespace sigforge::elab {

// Elaborates a parsed file into a checked core signature. Throws Error with
// E_SCOPE, E_TYPE, E_PROFILE, E_EXTERN or E_ARITY; the span points at the
// offending subexpression.
core::Signature elaborate(const surface::SigFile& f);

// Parse and elaborate; diagnostics carry line and column relative to source.
core::Signature elaborate_source(std::string_view source, std::string_view file = "<input>");

// Elaborates a closed term over the whole signature context.
core::Typed elaborate_term(const core::Signature& sig, const surface::RawExpr& e);

}  // namespace sigforge::elab

#pragma once

#include <string>

#include "mforge/motivic.hpp"

namespace mforge::motivic {

/// Recursive-descent parser for the CLI expression grammar:
///
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' rational)?
///   atom   := 'L' | integer | 'e(' name args ')' | '(' expr ')'
///
/// Failures throw errc::parse_error with the offending offset in the message
/// (also available via parse_error_offset on the thrown object's text).
MotivicElement parse_expression(const std::string& text);

}  // namespace mforge::motivic

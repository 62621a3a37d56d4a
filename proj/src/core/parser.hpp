//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#ifndef STABLELOG_PARSER_HPP
#define STABLELOG_PARSER_HPP

#include "syntax.hpp"

#include <string_view>

namespace stablelog {

/// Parses program text.
///
///   0.5::a.            probabilistic fact
///   t(0.3)::b. t(_)::c. learnable facts
///   0.6::h :- b, \+c.  annotated rule (kept as written; see desugar)
///   neg h :- b.        classical negation in the head
///   query(a). evidence(a, true).
///
/// `%` starts a line comment. Throws ParseError with line and column on
/// malformed input, out-of-range probabilities, reserved predicate names
/// and rules that are not range restricted.
Program parseProgram(std::string_view text);

/// Parses a single atom such as `arg(a1)`; surrounding blanks are allowed.
Atom parseAtom(std::string_view text);

} // namespace stablelog

#endif

//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#ifndef STABLELOG_TRANSFORM_HPP
#define STABLELOG_TRANSFORM_HPP

#include "syntax.hpp"

namespace stablelog {

/// Replaces every annotated rule `p::h :- body.` by a fresh probabilistic
/// fact `p::aux_i(V).` plus `h :- aux_i(V), body.`, where V are the rule's
/// variables. Auxiliary indices follow rule order.
///
/// A labeled fact is desugared the same way when its head is negated, when
/// its predicate is also defined by other rules, or when the same atom is
/// labeled twice; that keeps probabilistic-fact atoms disjoint from derived
/// atoms so that several causes combine by noisy-or.
Program desugar(const Program& program);

/// Interprets classical head negation as inhibition. For every atom h that
/// occurs under `neg`, heads h become h_pos, heads `neg h` become h_neg, and
/// `h :- h_pos, \+h_neg.` is added.
///
/// The rewrite is per ground atom when every head of h's predicate is
/// ground. Otherwise it is per predicate with a non-ground bridge rule,
/// which is equivalent after grounding because h_neg instances without
/// rules are false.
Program rewriteNegatedHeads(const Program& program);

/// desugar followed by rewriteNegatedHeads.
Program normalize(const Program& program);

} // namespace stablelog

#endif

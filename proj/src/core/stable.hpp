//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#ifndef STABLELOG_STABLE_HPP
#define STABLELOG_STABLE_HPP

#include "bitset.hpp"
#include "ground.hpp"

#include <functional>
#include <span>
#include <vector>

namespace stablelog {

/// Set of true atoms over a ground program's atom table.
using Interpretation = Bitset;

/// A definite rule: head :- pos.
struct DefiniteRule {
	AtomId              head;
	std::vector<AtomId> pos;

	friend bool operator==(const DefiniteRule&, const DefiniteRule&) = default;
};

/// Negation-free program produced by the reduct.
struct ReducedProgram {
	std::size_t               atomCount = 0;
	std::vector<DefiniteRule> rules;
};

/// Gelfond-Lifschitz reduct: drops rules with \+a for a in S and strips the
/// remaining naf literals.
ReducedProgram reduct(std::span<const GroundRule> rules, std::size_t atomCount, const Interpretation& s);

/// Least fixpoint of the immediate-consequence operator.
Interpretation leastModel(const ReducedProgram& r);

/// True iff leastModel(reduct(rules, S)) == S.
bool isStable(std::span<const GroundRule> rules, std::size_t atomCount, const Interpretation& s);

struct SolverOptions {
	/// Below this many open atoms the solver enumerates all candidates.
	std::size_t bruteForceThreshold = 4;
	/// 0 means unbounded.
	std::size_t maxModels = 0;
};

/// Stable models of a normal program over atoms [0, atomCount). Atoms
/// listed in `trueFacts` get a fact rule, atoms in `falseFacts` are forced
/// false (they must not head any rule). Results are sorted.
std::vector<Interpretation> stableModels(std::span<const GroundRule> rules, std::size_t atomCount,
                                         std::span<const AtomId> trueFacts = {},
                                         std::span<const AtomId> falseFacts = {},
                                         const SolverOptions& options = {});

/// Stable models of the subprogram a total choice induces on `g`:
/// fact f is included iff choice.test(f).
std::vector<Interpretation> stableModels(const GroundProgram& g, const Bitset& choice, const SolverOptions& options = {});

/// Reference enumeration: filters all 2^k assignments of the non-fact atoms
/// through isStable. Only for small programs.
std::vector<Interpretation> stableModelsBruteForce(const GroundProgram& g, const Bitset& choice);

/// Two-valued model of a program without negative cycles, computed stratum
/// by stratum. Used as an independent cross-check of the solver.
Interpretation stratifiedModel(const GroundProgram& g, const Bitset& choice);

} // namespace stablelog

#endif

//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#ifndef STABLELOG_SEMANTICS_HPP
#define STABLELOG_SEMANTICS_HPP

#include "stable.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace stablelog {

/// Inclusion decision per probabilistic fact; bit f set = fact f included.
using TotalChoice = Bitset;

using EvidenceList = std::vector<std::pair<AtomId, bool>>;

struct WorldRecord {
	TotalChoice                 choice;
	double                      probability = 0.0;
	std::vector<Interpretation> models;
};

struct QueryResult {
	std::vector<std::pair<AtomId, double>> probabilities;
	/// Some world that contributed had more than one stable model.
	bool   usedMultipleModels = false;
	/// Probability mass of worlds with at least one stable model.
	double consistentMass = 1.0;
};

struct SemanticsOptions {
	/// Refuse programs with more probabilistic facts than this.
	std::size_t   factCap = 24;
	/// Drop worlds without stable models and renormalize instead of raising
	/// InvalidProgram.
	bool          allowInconsistent = false;
	SolverOptions solver;
};

/// Product of p_f over included facts and (1 - p_f) over excluded ones.
double choiceProbability(const TotalChoice& choice, std::span<const double> labels);

/// Human-readable total choice: `{f1, f2}` listing included facts.
std::string describeChoice(const GroundProgram& g, const TotalChoice& choice);

/// Visits all 2^n total choices in index order (bit f of the index is fact
/// f). Throws InvalidProgram on the first world without a stable model
/// unless options.allowInconsistent is set.
void forEachWorld(const GroundProgram& g, const SemanticsOptions& options,
                  const std::function<void(const WorldRecord&)>& visit);

std::vector<WorldRecord> enumerateWorlds(const GroundProgram& g, const SemanticsOptions& options = {});

/// Throws InvalidProgram with a witness choice if some world has no model.
void validate(const GroundProgram& g, const SemanticsOptions& options = {});

/// Sum over stable models containing q of P(w)/|M(w)|.
double marginal(const GroundProgram& g, AtomId q, const SemanticsOptions& options = {});

/// P(q | evidence). Throws ZeroProbabilityEvidence if P(evidence) = 0.
double conditional(const GroundProgram& g, AtomId q, const EvidenceList& evidence,
                   const SemanticsOptions& options = {});

/// All queries in one pass over the worlds.
QueryResult infer(const GroundProgram& g, std::span<const AtomId> queries, const EvidenceList& evidence,
                  const SemanticsOptions& options = {});

bool satisfies(const Interpretation& s, const EvidenceList& evidence);

} // namespace stablelog

#endif

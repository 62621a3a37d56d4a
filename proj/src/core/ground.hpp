//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#ifndef STABLELOG_GROUND_HPP
#define STABLELOG_GROUND_HPP

#include "syntax.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace stablelog {

using AtomId = uint32_t;

struct GroundRule {
	AtomId              head = 0;
	std::vector<AtomId> pos;
	std::vector<AtomId> neg;

	friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

struct GroundFact {
	ProbLabel label;
	int       source = -1; // input rule the fact stems from
};

/// A finite propositional program. Probabilistic facts occupy atom ids
/// [0, factCount()); every other atom is derived.
class GroundProgram {
public:
	std::size_t atomCount() const { return atoms_.size(); }
	std::size_t factCount() const { return facts_.size(); }
	bool isFact(AtomId id) const { return id < facts_.size(); }

	const Atom& atom(AtomId id) const { return atoms_[id]; }
	std::optional<AtomId> find(const Atom& a) const;
	/// Like find but throws UnknownAtom.
	AtomId require(const Atom& a) const;

	const GroundFact&              fact(AtomId id) const { return facts_[id]; }
	const std::vector<GroundFact>& facts() const { return facts_; }
	double probability(AtomId fact) const { return facts_[fact].label.value; }
	void   setProbability(AtomId fact, double p) { facts_[fact].label.value = p; }
	std::vector<double> probabilities() const;

	const std::vector<GroundRule>&               rules() const { return rules_; }
	const std::vector<AtomId>&                   queries() const { return queries_; }
	const std::vector<std::pair<AtomId, bool>>&  evidence() const { return evidence_; }
	void setEvidence(std::vector<std::pair<AtomId, bool>> e) { evidence_ = std::move(e); }
	void setQueries(std::vector<AtomId> q) { queries_ = std::move(q); }

	/// Rule indices grouped by head atom.
	std::vector<std::vector<std::size_t>> rulesByHead() const;

	/// Program text in the input syntax (facts, rules, queries, evidence).
	std::string toString() const;

	/// Builds a ground program directly. `facts` are the probabilistic atoms
	/// (ids 0..n-1), `derived` follow.
	static GroundProgram build(std::vector<Atom> facts, std::vector<ProbLabel> labels, std::vector<Atom> derived,
	                           std::vector<GroundRule> rules, std::vector<AtomId> queries = {},
	                           std::vector<std::pair<AtomId, bool>> evidence = {});

private:
	friend class Grounder;
	void index();

	std::vector<Atom>                       atoms_;
	std::unordered_map<Atom, AtomId, AtomHash> ids_;
	std::vector<GroundFact>                 facts_;
	std::vector<GroundRule>                 rules_;
	std::vector<AtomId>                     queries_;
	std::vector<std::pair<AtomId, bool>>    evidence_;
};

struct GroundOptions {
	std::size_t       atomLimit = 1'000'000;
	/// Additional relevance seeds, e.g. atoms observed in training data.
	std::vector<Atom> extraSeeds;
	/// Keep every derivable atom regardless of queries.
	bool              keepAll = false;
};

/// Bottom-up grounding of a normalized program (see normalize()). Only
/// rules reachable backwards from queries, evidence and extra seeds are
/// kept; with no seeds everything is kept. Non-ground queries select all
/// matching derivable atoms. Throws LimitExceeded past `atomLimit` atoms.
GroundProgram ground(const Program& program, const GroundOptions& options = {});

/// Signed dependency graph: an edge b -> h for every body literal b of a rule
/// with head h, negative when b occurs under \+.
struct DependencyGraph {
	struct Edge {
		AtomId to;
		bool   negative;
	};
	std::vector<std::vector<Edge>> out;

	explicit DependencyGraph(const GroundProgram& g);
	/// Strongly connected component index per atom.
	std::vector<uint32_t> components() const;
};

/// True iff some strongly connected component contains a negative edge.
bool hasNegativeCycle(const GroundProgram& g);

} // namespace stablelog

#endif

//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
// Random programs and argument graphs for property tests.
#ifndef STABLELOG_TESTS_GENERATORS_HPP
#define STABLELOG_TESTS_GENERATORS_HPP

#include "argue.hpp"

#include <random>
#include <sstream>
#include <string>

namespace gen {

struct Shape {
	int    facts     = 4;
	int    derived   = 5;
	int    rules     = 8;
	int    maxBody   = 3;
	double naf       = 0.35;
	double annotated = 0.15;
	double negHead   = 0.1;
	bool   queryAll  = true;
};

inline double roll(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }
inline int pick(std::mt19937_64& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

// Two-decimal label in [0.05, 0.95].
inline double label(std::mt19937_64& rng) { return (5 + pick(rng, 91)) / 100.0; }

/// Propositional program over facts f0.. and derived atoms d0..; every
/// rule body is nonempty. Annotated rules and negated heads are included
/// with the shape's probabilities.
inline std::string programText(std::mt19937_64& rng, const Shape& s) {
	std::ostringstream os;
	for (int f = 0; f < s.facts; ++f) os << label(rng) << "::f" << f << ".\n";
	auto atomName = [&](int i) { return i < s.facts ? "f" + std::to_string(i) : "d" + std::to_string(i - s.facts); };
	for (int r = 0; r < s.rules; ++r) {
		const int head = pick(rng, s.derived);
		if (roll(rng) < s.annotated) os << label(rng) << "::";
		if (roll(rng) < s.negHead) os << "neg ";
		os << 'd' << head << " :- ";
		const int len = 1 + pick(rng, s.maxBody);
		for (int b = 0; b < len; ++b) {
			if (b) os << ", ";
			if (roll(rng) < s.naf) os << "\\+";
			os << atomName(pick(rng, s.facts + s.derived));
		}
		os << ".\n";
	}
	if (s.queryAll) {
		for (int f = 0; f < s.facts; ++f) os << "query(f" << f << ").\n";
		for (int d = 0; d < s.derived; ++d) os << "query(d" << d << ").\n";
	}
	return os.str();
}

/// Graph with `n` arguments and `edges` random attacks/supports (no self
/// loops). Set attacks appear with probability `setEdges`.
inline stablelog::ArgGraph graph(std::mt19937_64& rng, int n, int edges, double setEdges = 0.0) {
	stablelog::ArgGraph g;
	for (int i = 0; i < n; ++i) g.arguments.push_back({"a" + std::to_string(i + 1), label(rng)});
	for (int e = 0; e < edges; ++e) {
		stablelog::ArgGraph::Edge edge;
		int target = pick(rng, n);
		int src    = pick(rng, n - 1);
		if (src >= target) ++src;
		edge.sources.push_back(g.arguments[src].name);
		if (n > 2 && roll(rng) < setEdges) {
			int other = pick(rng, n);
			if (other != target && other != src) edge.sources.push_back(g.arguments[other].name);
		}
		edge.target      = g.arguments[target].name;
		edge.probability = label(rng);
		(roll(rng) < 0.4 ? g.attacks : g.supports).push_back(std::move(edge));
	}
	return g;
}

/// Tree-shaped bipolar graph: every argument but the first attacks or
/// supports one earlier argument, as in annotated argumentation corpora.
inline stablelog::ArgGraph tree(std::mt19937_64& rng, int n, double attackShare = 0.32) {
	stablelog::ArgGraph g;
	for (int i = 0; i < n; ++i) g.arguments.push_back({"a" + std::to_string(i + 1), label(rng)});
	for (int i = 1; i < n; ++i) {
		stablelog::ArgGraph::Edge edge;
		edge.sources.push_back(g.arguments[i].name);
		edge.target      = g.arguments[pick(rng, i)].name;
		edge.probability = label(rng);
		(roll(rng) < attackShare ? g.attacks : g.supports).push_back(std::move(edge));
	}
	return g;
}

} // namespace gen

#endif

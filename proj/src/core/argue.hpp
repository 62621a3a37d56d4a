//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#ifndef STABLELOG_ARGUE_HPP
#define STABLELOG_ARGUE_HPP

#include "syntax.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stablelog {

/// Probabilistic bipolar argument graph.
struct ArgGraph {
	struct Argument {
		std::string name;
		double      prior = 0.0;
	};
	struct Edge {
		std::vector<std::string> sources; // conjunction of arguments
		std::string              target;
		double                   probability = 0.0;
	};
	struct Proponent {
		std::string              name;
		double                   trust = 0.0;
		std::vector<std::string> arguments;
	};

	std::vector<Argument>  arguments;
	std::vector<Edge>      attacks;
	std::vector<Edge>      supports;
	std::vector<Proponent> proponents;
};

/// Line format, `#` starts a comment:
///
///   arg <name> <prob>
///   att <src>[,<src>...] <target> <prob>
///   sup <src>[,<src>...] <target> <prob>
///   prop <name> <trust> <arg>[,<arg>...]
///
/// Throws ParseError on unknown arguments, duplicates, bad probabilities.
ArgGraph parseGraph(std::string_view text);

struct Translation {
	Program                            program;
	std::map<std::string, Atom>        atoms; // argument name -> arg(name)
};

/// Priors become `p::base_arg(a).` plus `arg(a) :- base_arg(a).`, attacks
/// `p::neg arg(b) :- arg(a1), ...`, supports `p::arg(b) :- arg(a1), ...`.
/// Proponents add `t::prop(n).`, `proposes(n, a).` and one shared rule
/// `base_arg(A) :- proposes(P, A), prop(P).` Every arg/1 atom is queried.
Translation translate(const ArgGraph& g);

} // namespace stablelog

#endif

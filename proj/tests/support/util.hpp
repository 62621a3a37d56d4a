//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#ifndef STABLELOG_TESTS_UTIL_HPP
#define STABLELOG_TESTS_UTIL_HPP

#include "circuit.hpp"
#include "parser.hpp"
#include "transform.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#ifndef STABLELOG_DATA_DIR
#define STABLELOG_DATA_DIR "data"
#endif

namespace testutil {

inline std::string readData(const std::string& name) {
	std::ifstream in(std::string(STABLELOG_DATA_DIR) + "/" + name);
	if (!in) throw std::runtime_error("missing data file " + name);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

inline stablelog::GroundProgram groundText(const std::string& text, const stablelog::GroundOptions& opts = {}) {
	return stablelog::ground(stablelog::normalize(stablelog::parseProgram(text)), opts);
}

inline stablelog::AtomId id(const stablelog::GroundProgram& g, const std::string& atom) {
	return g.require(stablelog::parseAtom(atom));
}

inline double probabilityOf(const stablelog::QueryResult& r, stablelog::AtomId a) {
	for (const auto& [q, p] : r.probabilities)
		if (q == a) return p;
	throw std::runtime_error("atom not queried");
}

} // namespace testutil

#endif

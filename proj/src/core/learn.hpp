//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#ifndef STABLELOG_LEARN_HPP
#define STABLELOG_LEARN_HPP

#include "circuit.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace stablelog {

/// Truth values for an observed subset of atoms.
using PartialInterpretation = std::vector<std::pair<Atom, bool>>;

/// One interpretation per line, comma-separated atoms, `-` marks false.
/// Blank lines and `%` comments are skipped.
std::vector<PartialInterpretation> parseDataset(std::string_view text);
std::string formatInterpretation(const PartialInterpretation& i);
std::string formatDataset(const std::vector<PartialInterpretation>& data);

/// Maps atoms to ids of `g`; throws UnknownAtom for atoms the program lacks.
EvidenceList bindInterpretation(const GroundProgram& g, const PartialInterpretation& i);

/// Deterministic uniform draws in [0, 1) from a 64-bit Mersenne twister.
/// The top 53 bits are used directly so draws do not depend on the
/// standard library's distribution implementation.
class Rng {
public:
	explicit Rng(uint64_t seed) : engine_(seed) {}
	double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
	std::mt19937_64 engine_;
};

/// Forward sampling: flip every fact, pick one stable model of the world
/// uniformly, keep the observable atoms (in atom-id order).
std::vector<PartialInterpretation> sample(const GroundProgram& g, std::size_t n, uint64_t seed,
                                          const std::function<bool(const Atom&)>& observable,
                                          const SolverOptions& solver = {});

/// Learnable facts grouped by the input rule they come from. Facts in one
/// group share a parameter.
std::vector<std::vector<AtomId>> parameterGroups(const GroundProgram& g);

/// Relative frequency of each learnable fact. Every interpretation must
/// assign every learnable fact (CoverageError otherwise). Returns the full
/// label vector with learnable entries replaced.
std::vector<double> learnFullyObserved(const GroundProgram& g, const std::vector<PartialInterpretation>& data);

struct EmOptions {
	std::size_t maxIterations = 100;
	double      tolerance     = 1e-4;
	double      epsilon       = 1e-6;
	/// Drop worlds without stable models (likelihoods are renormalized).
	bool        allowInconsistent = false;
	std::size_t nodeLimit         = 20'000'000;
};

struct EmResult {
	std::vector<double> probabilities; // per fact
	/// Log-likelihood of the data before the first update and after each one.
	std::vector<double> logLikelihood;
	std::size_t         iterations = 0;
	bool                converged  = false;
};

/// Expectation maximization over learnable facts. The E-step computes
/// P(f | I) for every fact and interpretation on one compiled circuit whose
/// split nodes carry the 1/|M(w)| normalization.
EmResult learnEm(const GroundProgram& g, const std::vector<PartialInterpretation>& data, const EmOptions& options = {});

/// Same, with the conditionals computed by enumerating every world.
EmResult learnEmByEnumeration(const GroundProgram& g, const std::vector<PartialInterpretation>& data,
                              const EmOptions& options = {});

/// `original` with each learnable label replaced by the fitted value of its
/// ground facts (the mean when tied facts differ).
Program applyLearnedLabels(const Program& original, const GroundProgram& g, const std::vector<double>& probabilities);

/// Mean absolute error over learnable facts.
double meanAbsoluteError(const GroundProgram& g, const std::vector<double>& learned, const std::vector<double>& truth);

} // namespace stablelog

#endif

//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "semantics.hpp"

#include "errors.hpp"

namespace stablelog {

double choiceProbability(const TotalChoice& choice, std::span<const double> labels) {
	double p = 1.0;
	for (std::size_t f = 0; f < labels.size(); ++f) p *= choice.test(f) ? labels[f] : 1.0 - labels[f];
	return p;
}

std::string describeChoice(const GroundProgram& g, const TotalChoice& choice) {
	std::string out = "{";
	bool first = true;
	for (AtomId f = 0; f < g.factCount(); ++f) {
		if (!choice.test(f)) continue;
		out += (first ? "" : ", ") + toString(g.atom(f));
		first = false;
	}
	return out + "}";
}

namespace {

[[noreturn]] void throwInvalid(const GroundProgram& g, const TotalChoice& choice) {
	std::vector<bool> witness(g.factCount());
	for (std::size_t f = 0; f < witness.size(); ++f) witness[f] = choice.test(f);
	std::string text = describeChoice(g, choice);
	throw InvalidProgram("invalid program: total choice " + text + " has no stable model", std::move(witness), text);
}

} // namespace

void forEachWorld(const GroundProgram& g, const SemanticsOptions& options,
                  const std::function<void(const WorldRecord&)>& visit) {
	const std::size_t n = g.factCount();
	if (n > options.factCap || n >= 63)
		throw LimitExceeded("enumeration engine refuses " + std::to_string(n) + " probabilistic facts (cap " +
		                    std::to_string(options.factCap) + ")");
	const auto labels = g.probabilities();
	WorldRecord w;
	w.choice = TotalChoice(n);
	for (uint64_t k = 0; k < (uint64_t{1} << n); ++k) {
		for (std::size_t f = 0; f < n; ++f) w.choice.set(f, (k >> f) & 1U);
		w.probability = choiceProbability(w.choice, labels);
		w.models      = stableModels(g, w.choice, options.solver);
		if (w.models.empty() && !options.allowInconsistent) throwInvalid(g, w.choice);
		visit(w);
	}
}

std::vector<WorldRecord> enumerateWorlds(const GroundProgram& g, const SemanticsOptions& options) {
	std::vector<WorldRecord> out;
	forEachWorld(g, options, [&](const WorldRecord& w) { out.push_back(w); });
	return out;
}

void validate(const GroundProgram& g, const SemanticsOptions& options) {
	SemanticsOptions strict = options;
	strict.allowInconsistent = false;
	forEachWorld(g, strict, [](const WorldRecord&) {});
}

bool satisfies(const Interpretation& s, const EvidenceList& evidence) {
	for (const auto& [a, v] : evidence)
		if (s.test(a) != v) return false;
	return true;
}

QueryResult infer(const GroundProgram& g, std::span<const AtomId> queries, const EvidenceList& evidence,
                  const SemanticsOptions& options) {
	for (AtomId q : queries)
		if (q >= g.atomCount()) throw UnknownAtom("query atom id out of range");
	std::vector<double> joint(queries.size(), 0.0);
	double evidenceMass = 0.0, consistent = 0.0;
	bool multi = false;
	forEachWorld(g, options, [&](const WorldRecord& w) {
		if (w.models.empty()) return;
		consistent += w.probability;
		const double share = w.probability / static_cast<double>(w.models.size());
		for (const auto& s : w.models) {
			if (!satisfies(s, evidence)) continue;
			if (w.models.size() > 1) multi = true;
			evidenceMass += share;
			for (std::size_t i = 0; i < queries.size(); ++i)
				if (s.test(queries[i])) joint[i] += share;
		}
	});
	QueryResult out;
	out.usedMultipleModels = multi;
	out.consistentMass     = consistent;
	if (!(evidenceMass > 0.0)) throw ZeroProbabilityEvidence("evidence has probability zero");
	// Without evidence and with a valid program the denominator is the total
	// mass, 1 up to rounding; the plain sum is reported in that case.
	const bool normalize = !evidence.empty() || options.allowInconsistent;
	for (std::size_t i = 0; i < queries.size(); ++i)
		out.probabilities.emplace_back(queries[i], normalize ? joint[i] / evidenceMass : joint[i]);
	return out;
}

double marginal(const GroundProgram& g, AtomId q, const SemanticsOptions& options) {
	AtomId qs[] = {q};
	return infer(g, qs, {}, options).probabilities.front().second;
}

double conditional(const GroundProgram& g, AtomId q, const EvidenceList& evidence, const SemanticsOptions& options) {
	AtomId qs[] = {q};
	return infer(g, qs, evidence, options).probabilities.front().second;
}

} // namespace stablelog

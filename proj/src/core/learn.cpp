//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "learn.hpp"

#include "errors.hpp"
#include "parser.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace stablelog {

// ---------------------------------------------------------------------------
// Datasets

std::vector<PartialInterpretation> parseDataset(std::string_view text) {
	std::vector<PartialInterpretation> out;
	int lineNo = 0;
	while (!text.empty()) {
		++lineNo;
		std::size_t nl = text.find('\n');
		std::string_view line = text.substr(0, nl);
		text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
		if (auto pct = line.find('%'); pct != std::string_view::npos) line = line.substr(0, pct);
		if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

		PartialInterpretation interp;
		int depth = 0;
		std::size_t start = 0;
		for (std::size_t i = 0; i <= line.size(); ++i) {
			char ch = i < line.size() ? line[i] : ',';
			if (ch == '(') ++depth;
			else if (ch == ')') --depth;
			if (depth < 0 || (i == line.size() && depth > 0))
				throw ParseError("unbalanced parentheses in interpretation", lineNo, static_cast<int>(i + 1));
			if (ch != ',' || depth > 0) continue;
			std::string_view item = line.substr(start, i - start);
			start = i + 1;
			auto b = item.find_first_not_of(" \t\r");
			if (b == std::string_view::npos) throw ParseError("empty item in interpretation", lineNo, static_cast<int>(i + 1));
			item = item.substr(b);
			bool value = true;
			if (item.front() == '-') {
				value = false;
				item.remove_prefix(1);
			}
			try {
				interp.emplace_back(parseAtom(item), value);
			}
			catch (const ParseError& e) {
				throw ParseError(std::string("bad atom in interpretation: ") + e.what(), lineNo, static_cast<int>(b + 1));
			}
		}
		out.push_back(std::move(interp));
	}
	return out;
}

std::string formatInterpretation(const PartialInterpretation& i) {
	std::string out;
	for (const auto& [a, v] : i) {
		if (!out.empty()) out += ", ";
		if (!v) out += '-';
		out += toString(a);
	}
	return out;
}

std::string formatDataset(const std::vector<PartialInterpretation>& data) {
	std::string out;
	for (const auto& i : data) out += formatInterpretation(i) + '\n';
	return out;
}

EvidenceList bindInterpretation(const GroundProgram& g, const PartialInterpretation& i) {
	EvidenceList out;
	out.reserve(i.size());
	for (const auto& [a, v] : i) out.emplace_back(g.require(a), v);
	return out;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<PartialInterpretation> sample(const GroundProgram& g, std::size_t n, uint64_t seed,
                                          const std::function<bool(const Atom&)>& observable,
                                          const SolverOptions& solver) {
	std::vector<AtomId> observed;
	for (AtomId a = 0; a < g.atomCount(); ++a)
		if (observable(g.atom(a))) observed.push_back(a);

	Rng rng(seed);
	std::vector<PartialInterpretation> out;
	out.reserve(n);
	TotalChoice choice(g.factCount());
	for (std::size_t k = 0; k < n; ++k) {
		for (AtomId f = 0; f < g.factCount(); ++f) choice.set(f, rng.uniform() < g.probability(f));
		auto models = stableModels(g, choice, solver);
		if (models.empty()) {
			std::vector<bool> witness(g.factCount());
			for (AtomId f = 0; f < g.factCount(); ++f) witness[f] = choice.test(f);
			std::string text = describeChoice(g, choice);
			throw InvalidProgram("invalid program: total choice " + text + " has no stable model", std::move(witness),
			                     text);
		}
		std::size_t pick = static_cast<std::size_t>(rng.uniform() * static_cast<double>(models.size()));
		pick = std::min(pick, models.size() - 1);
		PartialInterpretation interp;
		for (AtomId a : observed) interp.emplace_back(g.atom(a), models[pick].test(a));
		out.push_back(std::move(interp));
	}
	return out;
}

// ---------------------------------------------------------------------------
// Parameter estimation

std::vector<std::vector<AtomId>> parameterGroups(const GroundProgram& g) {
	std::map<int, std::vector<AtomId>> bySource;
	std::vector<std::vector<AtomId>> out;
	for (AtomId f = 0; f < g.factCount(); ++f) {
		const auto& fact = g.fact(f);
		if (!fact.label.learnable) continue;
		if (fact.source < 0) out.push_back({f});
		else bySource[fact.source].push_back(f);
	}
	for (auto& [src, facts] : bySource) out.push_back(std::move(facts));
	std::sort(out.begin(), out.end());
	return out;
}

std::vector<double> learnFullyObserved(const GroundProgram& g, const std::vector<PartialInterpretation>& data) {
	if (data.empty()) throw CoverageError("empty dataset");
	std::vector<double> probs = g.probabilities();
	std::vector<EvidenceList> bound;
	for (const auto& i : data) bound.push_back(bindInterpretation(g, i));
	for (const auto& group : parameterGroups(g)) {
		double trueCount = 0.0;
		for (const auto& ev : bound)
			for (AtomId f : group) {
				auto it = std::find_if(ev.begin(), ev.end(), [&](const auto& o) { return o.first == f; });
				if (it == ev.end())
					throw CoverageError("learnable fact " + toString(g.atom(f)) + " is not observed in every interpretation");
				if (it->second) trueCount += 1.0;
			}
		const double p = trueCount / static_cast<double>(bound.size() * group.size());
		for (AtomId f : group) probs[f] = p;
	}
	return probs;
}

namespace {

struct Grouped {
	std::vector<EvidenceList> items;
	std::vector<double>       counts;
	double                    total = 0.0;
};

Grouped groupData(const GroundProgram& g, const std::vector<PartialInterpretation>& data) {
	if (data.empty()) throw CoverageError("empty dataset");
	std::map<EvidenceList, std::size_t> seen;
	Grouped out;
	for (const auto& i : data) {
		EvidenceList ev = bindInterpretation(g, i);
		std::sort(ev.begin(), ev.end());
		ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
		for (std::size_t k = 1; k < ev.size(); ++k)
			if (ev[k].first == ev[k - 1].first)
				throw ZeroProbabilityEvidence("interpretation assigns both values to " + toString(g.atom(ev[k].first)));
		auto [it, fresh] = seen.try_emplace(ev, out.items.size());
		if (fresh) {
			out.items.push_back(ev);
			out.counts.push_back(0.0);
		}
		out.counts[it->second] += 1.0;
	}
	out.total = static_cast<double>(data.size());
	return out;
}

struct Expectation {
	double              logLikelihood = 0.0;
	std::vector<double> factTrue; // sum over data of P(f | I)
};

// Runs the EM loop given an E-step that returns the data log-likelihood and
// expected true counts under the current labels.
template <class EStep>
EmResult runEm(const GroundProgram& g, std::size_t dataSize, const EmOptions& options, EStep&& estep) {
	const auto groups = parameterGroups(g);
	EmResult res;
	res.probabilities = g.probabilities();
	for (const auto& group : groups)
		for (AtomId f : group) res.probabilities[f] = std::clamp(res.probabilities[f], options.epsilon, 1.0 - options.epsilon);

	Expectation ex = estep(res.probabilities);
	res.logLikelihood.push_back(ex.logLikelihood);
	while (res.iterations < options.maxIterations) {
		double delta = 0.0;
		std::vector<double> next = res.probabilities;
		for (const auto& group : groups) {
			double sum = 0.0;
			for (AtomId f : group) sum += ex.factTrue[f];
			double p = sum / (static_cast<double>(dataSize) * static_cast<double>(group.size()));
			p = std::clamp(p, options.epsilon, 1.0 - options.epsilon);
			for (AtomId f : group) {
				delta = std::max(delta, std::abs(p - res.probabilities[f]));
				next[f] = p;
			}
		}
		res.probabilities = std::move(next);
		++res.iterations;
		ex = estep(res.probabilities);
		res.logLikelihood.push_back(ex.logLikelihood);
		if (delta < options.tolerance) {
			res.converged = true;
			break;
		}
	}
	return res;
}

} // namespace

EmResult learnEm(const GroundProgram& g, const std::vector<PartialInterpretation>& data, const EmOptions& options) {
	const Grouped grouped = groupData(g, data);
	CompileOptions co;
	co.allowInconsistent = options.allowInconsistent;
	co.nodeLimit         = options.nodeLimit;
	const Circuit c = smooth(compile(g, co));
	NormalizedCircuit nc(c);
	std::vector<double> dPos, dNeg;

	return runEm(g, data.size(), options, [&](const std::vector<double>& labels) {
		Expectation ex;
		ex.factTrue.assign(g.factCount(), 0.0);
		WeightMap base = WeightMap::fromLabels(g.atomCount(), labels);
		const double z = options.allowInconsistent ? nc.forward(base) : 1.0;
		for (std::size_t k = 0; k < grouped.items.size(); ++k) {
			WeightMap w = base;
			w.instantiate(grouped.items[k]);
			const double pi = nc.forward(w);
			if (!(pi > 0.0))
				throw ZeroProbabilityEvidence("interpretation has probability zero under the current parameters");
			nc.backward(w, dPos, dNeg);
			ex.logLikelihood += grouped.counts[k] * std::log(pi / z);
			for (AtomId f = 0; f < g.factCount(); ++f)
				ex.factTrue[f] += grouped.counts[k] * std::clamp(w.pos[f] * dPos[f] / pi, 0.0, 1.0);
		}
		return ex;
	});
}

EmResult learnEmByEnumeration(const GroundProgram& g, const std::vector<PartialInterpretation>& data,
                              const EmOptions& options) {
	const Grouped grouped = groupData(g, data);
	SemanticsOptions so;
	so.factCap           = 62;
	so.allowInconsistent = options.allowInconsistent;
	// Per world: the choice and, per distinct interpretation, the fraction of
	// its stable models satisfying it.
	struct World {
		TotalChoice         choice;
		std::vector<double> share;
		bool                consistent;
	};
	std::vector<World> worlds;
	forEachWorld(g, so, [&](const WorldRecord& w) {
		World rec{w.choice, std::vector<double>(grouped.items.size(), 0.0), !w.models.empty()};
		for (std::size_t k = 0; k < grouped.items.size(); ++k) {
			std::size_t hits = 0;
			for (const auto& s : w.models) hits += satisfies(s, grouped.items[k]);
			if (!w.models.empty()) rec.share[k] = static_cast<double>(hits) / static_cast<double>(w.models.size());
		}
		worlds.push_back(std::move(rec));
	});

	return runEm(g, data.size(), options, [&](const std::vector<double>& labels) {
		Expectation ex;
		ex.factTrue.assign(g.factCount(), 0.0);
		double z = 0.0;
		std::vector<double> pi(grouped.items.size(), 0.0);
		std::vector<std::vector<double>> joint(grouped.items.size(), std::vector<double>(g.factCount(), 0.0));
		for (const auto& w : worlds) {
			const double p = choiceProbability(w.choice, labels);
			if (w.consistent) z += p;
			for (std::size_t k = 0; k < grouped.items.size(); ++k) {
				const double m = p * w.share[k];
				if (m == 0.0) continue;
				pi[k] += m;
				w.choice.forEach([&](std::size_t f) { joint[k][f] += m; });
			}
		}
		if (!options.allowInconsistent) z = 1.0;
		for (std::size_t k = 0; k < grouped.items.size(); ++k) {
			if (!(pi[k] > 0.0))
				throw ZeroProbabilityEvidence("interpretation has probability zero under the current parameters");
			ex.logLikelihood += grouped.counts[k] * std::log(pi[k] / z);
			for (AtomId f = 0; f < g.factCount(); ++f) ex.factTrue[f] += grouped.counts[k] * joint[k][f] / pi[k];
		}
		return ex;
	});
}

Program applyLearnedLabels(const Program& original, const GroundProgram& g, const std::vector<double>& probabilities) {
	Program out = original;
	std::map<int, std::pair<double, std::size_t>> bySource;
	for (AtomId f = 0; f < g.factCount(); ++f) {
		const auto& fact = g.fact(f);
		if (!fact.label.learnable || fact.source < 0) continue;
		auto& acc = bySource[fact.source];
		acc.first += probabilities[f];
		++acc.second;
	}
	for (const auto& [src, acc] : bySource) {
		auto& rule = out.rules.at(static_cast<std::size_t>(src));
		if (!rule.label) continue;
		rule.label->value           = acc.first / static_cast<double>(acc.second);
		rule.label->learnable       = false;
		rule.label->explicitInitial = true;
	}
	return out;
}

double meanAbsoluteError(const GroundProgram& g, const std::vector<double>& learned, const std::vector<double>& truth) {
	double sum = 0.0;
	std::size_t n = 0;
	for (AtomId f = 0; f < g.factCount(); ++f) {
		if (!g.fact(f).label.learnable) continue;
		sum += std::abs(learned[f] - truth[f]);
		++n;
	}
	return n ? sum / static_cast<double>(n) : 0.0;
}

} // namespace stablelog

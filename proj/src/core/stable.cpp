//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "stable.hpp"

#include "errors.hpp"

#include <algorithm>

namespace stablelog {

ReducedProgram reduct(std::span<const GroundRule> rules, std::size_t atomCount, const Interpretation& s) {
	ReducedProgram out;
	out.atomCount = atomCount;
	for (const auto& r : rules) {
		bool blocked = std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return s.test(a); });
		if (!blocked) out.rules.push_back({r.head, r.pos});
	}
	return out;
}

Interpretation leastModel(const ReducedProgram& r) {
	Interpretation m(r.atomCount);
	std::vector<std::vector<std::size_t>> watch(r.atomCount);
	std::vector<std::size_t> missing(r.rules.size());
	std::vector<AtomId> queue;
	for (std::size_t i = 0; i < r.rules.size(); ++i) {
		missing[i] = r.rules[i].pos.size();
		for (AtomId p : r.rules[i].pos) watch[p].push_back(i);
		if (missing[i] == 0 && !m.test(r.rules[i].head)) {
			m.set(r.rules[i].head);
			queue.push_back(r.rules[i].head);
		}
	}
	while (!queue.empty()) {
		AtomId a = queue.back();
		queue.pop_back();
		for (std::size_t ri : watch[a]) {
			// Duplicate body atoms are counted once per occurrence, which the
			// decrement below matches.
			if (--missing[ri] == 0 && !m.test(r.rules[ri].head)) {
				m.set(r.rules[ri].head);
				queue.push_back(r.rules[ri].head);
			}
		}
	}
	return m;
}

bool isStable(std::span<const GroundRule> rules, std::size_t atomCount, const Interpretation& s) {
	return leastModel(reduct(rules, atomCount, s)) == s;
}

namespace {

// DPLL over the Clark completion with a stability check on every total
// assignment. Values: -1 open, 0 false, 1 true.
class Search {
public:
	Search(std::span<const GroundRule> rules, std::size_t n, const SolverOptions& opts)
		: rules_(rules.begin(), rules.end()), n_(n), opts_(opts), support_(n) {
		for (std::size_t i = 0; i < rules_.size(); ++i) support_[rules_[i].head].push_back(i);
	}

	void addFact(AtomId a) {
		rules_.push_back({a, {}, {}});
		support_[a].push_back(rules_.size() - 1);
	}

	std::vector<Interpretation> run(std::vector<int8_t> vals) {
		search(std::move(vals));
		std::sort(models_.begin(), models_.end());
		return std::move(models_);
	}

private:
	enum class Status { False, True, Open };

	Status status(const GroundRule& r, const std::vector<int8_t>& v, std::size_t& open, AtomId& lastOpen, bool& lastNeg) const {
		open = 0;
		for (AtomId p : r.pos) {
			if (v[p] == 0) return Status::False;
			if (v[p] < 0) { ++open; lastOpen = p; lastNeg = false; }
		}
		for (AtomId q : r.neg) {
			if (v[q] == 1) return Status::False;
			if (v[q] < 0) { ++open; lastOpen = q; lastNeg = true; }
		}
		return open == 0 ? Status::True : Status::Open;
	}

	bool assign(std::vector<int8_t>& v, AtomId a, int8_t val, bool& changed) const {
		if (v[a] == val) return true;
		if (v[a] >= 0) return false;
		v[a]    = val;
		changed = true;
		return true;
	}

	// Returns false on conflict.
	bool propagate(std::vector<int8_t>& v) const {
		bool changed = true;
		while (changed) {
			changed = false;
			for (AtomId a = 0; a < n_; ++a) {
				std::size_t nonFalse = 0, lastRule = 0;
				bool anyTrue = false;
				for (std::size_t ri : support_[a]) {
					std::size_t open; AtomId lo = 0; bool ln = false;
					Status s = status(rules_[ri], v, open, lo, ln);
					if (s == Status::False) continue;
					++nonFalse;
					lastRule = ri;
					if (s == Status::True) anyTrue = true;
				}
				if (anyTrue && !assign(v, a, 1, changed)) return false;
				if (nonFalse == 0 && !assign(v, a, 0, changed)) return false;
				if (v[a] == 1 && nonFalse == 1) {
					// The only remaining support must hold.
					const GroundRule& r = rules_[lastRule];
					for (AtomId p : r.pos)
						if (!assign(v, p, 1, changed)) return false;
					for (AtomId q : r.neg)
						if (!assign(v, q, 0, changed)) return false;
				}
				if (v[a] == 0) {
					for (std::size_t ri : support_[a]) {
						std::size_t open; AtomId lo = 0; bool ln = false;
						Status s = status(rules_[ri], v, open, lo, ln);
						if (s == Status::True) return false;
						if (s == Status::Open && open == 1 && !assign(v, lo, ln ? 1 : 0, changed)) return false;
					}
				}
			}
		}
		return true;
	}

	void record(const std::vector<int8_t>& v) {
		Interpretation s(n_);
		for (AtomId a = 0; a < n_; ++a)
			if (v[a] == 1) s.set(a);
		if (!isStable(rules_, n_, s)) return;
		models_.push_back(std::move(s));
		if (opts_.maxModels && models_.size() > opts_.maxModels)
			throw LimitExceeded("stable model enumeration exceeded " + std::to_string(opts_.maxModels) + " models");
	}

	void bruteForce(std::vector<int8_t>& v, const std::vector<AtomId>& open, std::size_t k) {
		if (k == open.size()) {
			record(v);
			return;
		}
		for (int8_t val : {int8_t{0}, int8_t{1}}) {
			v[open[k]] = val;
			bruteForce(v, open, k + 1);
		}
		v[open[k]] = -1;
	}

	void search(std::vector<int8_t> v) {
		if (!propagate(v)) return;
		std::vector<AtomId> open;
		for (AtomId a = 0; a < n_; ++a)
			if (v[a] < 0) open.push_back(a);
		if (open.empty()) {
			record(v);
			return;
		}
		if (open.size() <= opts_.bruteForceThreshold) {
			bruteForce(v, open, 0);
			return;
		}
		for (int8_t val : {int8_t{0}, int8_t{1}}) {
			std::vector<int8_t> next = v;
			next[open.front()] = val;
			search(std::move(next));
		}
	}

	std::vector<GroundRule>               rules_;
	std::size_t                           n_;
	SolverOptions                         opts_;
	std::vector<std::vector<std::size_t>> support_;
	std::vector<Interpretation>           models_;
};

} // namespace

std::vector<Interpretation> stableModels(std::span<const GroundRule> rules, std::size_t atomCount,
                                         std::span<const AtomId> trueFacts, std::span<const AtomId> falseFacts,
                                         const SolverOptions& options) {
	Search s(rules, atomCount, options);
	std::vector<int8_t> vals(atomCount, -1);
	for (AtomId f : trueFacts) s.addFact(f);
	for (AtomId f : falseFacts) vals[f] = 0;
	return s.run(std::move(vals));
}

std::vector<Interpretation> stableModels(const GroundProgram& g, const Bitset& choice, const SolverOptions& options) {
	std::vector<AtomId> in, out;
	for (AtomId f = 0; f < g.factCount(); ++f) (choice.test(f) ? in : out).push_back(f);
	return stableModels(g.rules(), g.atomCount(), in, out, options);
}

std::vector<Interpretation> stableModelsBruteForce(const GroundProgram& g, const Bitset& choice) {
	const std::size_t n = g.atomCount(), k = n - g.factCount();
	if (k > 24) throw LimitExceeded("brute-force stable model check limited to 24 derived atoms");
	std::vector<GroundRule> rules = g.rules();
	for (AtomId f = 0; f < g.factCount(); ++f)
		if (choice.test(f)) rules.push_back({f, {}, {}});
	std::vector<Interpretation> out;
	for (uint64_t mask = 0; mask < (uint64_t{1} << k); ++mask) {
		Interpretation s(n);
		for (AtomId f = 0; f < g.factCount(); ++f)
			if (choice.test(f)) s.set(f);
		for (std::size_t j = 0; j < k; ++j)
			if ((mask >> j) & 1U) s.set(g.factCount() + j);
		if (isStable(rules, n, s)) out.push_back(std::move(s));
	}
	std::sort(out.begin(), out.end());
	return out;
}

Interpretation stratifiedModel(const GroundProgram& g, const Bitset& choice) {
	DependencyGraph dg(g);
	auto comp = dg.components();
	uint32_t nComp = 0;
	for (auto c : comp) nComp = std::max(nComp, c + 1);
	std::vector<std::vector<std::size_t>> rulesOf(nComp);
	for (std::size_t i = 0; i < g.rules().size(); ++i) rulesOf[comp[g.rules()[i].head]].push_back(i);

	Interpretation m(g.atomCount());
	for (AtomId f = 0; f < g.factCount(); ++f)
		if (choice.test(f)) m.set(f);
	// Tarjan numbers components so that body components come later.
	for (uint32_t c = nComp; c-- > 0;) {
		bool changed = true;
		while (changed) {
			changed = false;
			for (std::size_t ri : rulesOf[c]) {
				const GroundRule& r = g.rules()[ri];
				if (m.test(r.head)) continue;
				bool fires = std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return m.test(a); }) &&
				             std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return m.test(a); });
				if (fires) {
					m.set(r.head);
					changed = true;
				}
			}
		}
	}
	return m;
}

} // namespace stablelog

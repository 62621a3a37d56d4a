//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "circuit.hpp"

#include "errors.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <unordered_map>

namespace stablelog {
namespace {

struct KeyHash {
	std::size_t operator()(const std::vector<uint32_t>& v) const noexcept {
		std::size_t h = v.size();
		for (uint32_t x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
		return h;
	}
};

class Compiler {
public:
	Compiler(const GroundProgram& g, const CompileOptions& o)
		: g_(g), opts_(o), c_(g.atomCount(), g.factCount()), vals_(g.atomCount(), -1) {}

	Circuit run() {
		std::vector<AtomId> atoms(g_.atomCount());
		std::iota(atoms.begin(), atoms.end(), AtomId{0});
		NodeId root = expand(atoms, g_.rules(), std::nullopt);
		if (isFalse(root)) {
			TotalChoice none(g_.factCount());
			throw InvalidProgram("invalid program: no total choice has a stable model", std::vector<bool>(g_.factCount()),
			                     describeChoice(g_, none));
		}
		c_.setRoot(root);
		return std::move(c_);
	}

private:
	bool isFalse(NodeId n) const { return falseNode_ && *falseNode_ == n; }
	NodeId falseNode() {
		if (!falseNode_) falseNode_ = c_.disjoin({});
		return *falseNode_;
	}

	void assign(AtomId a, int8_t v) {
		vals_[a] = v;
		trail_.push_back(a);
	}

	void checkLimit() const {
		if (c_.size() > opts_.nodeLimit)
			throw LimitExceeded("circuit exceeded " + std::to_string(opts_.nodeLimit) + " nodes");
	}

	// Applies `decision`, simplifies the residual program (atoms, rules) and
	// returns the conjunction of determined literals and compiled components.
	NodeId expand(const std::vector<AtomId>& atoms, const std::vector<GroundRule>& rules,
	              std::optional<std::pair<AtomId, bool>> decision) {
		const std::size_t mark = trail_.size();
		if (decision) assign(decision->first, decision->second ? 1 : 0);

		std::vector<GroundRule> live = rules;
		std::vector<uint32_t> support(g_.atomCount(), 0);
		for (bool changed = true; changed;) {
			changed = false;
			std::vector<GroundRule> next;
			next.reserve(live.size());
			for (const auto& r : live) {
				if (vals_[r.head] == 1) continue;
				GroundRule s{r.head, {}, {}};
				bool dead = false;
				for (AtomId p : r.pos) {
					if (vals_[p] == 0) { dead = true; break; }
					if (vals_[p] < 0) s.pos.push_back(p);
				}
				if (dead) continue;
				for (AtomId q : r.neg) {
					if (vals_[q] == 1) { dead = true; break; }
					if (vals_[q] < 0) s.neg.push_back(q);
				}
				if (dead) continue;
				if (s.pos.empty() && s.neg.empty()) {
					assign(r.head, 1);
					changed = true;
					continue;
				}
				next.push_back(std::move(s));
			}
			live = std::move(next);
			for (AtomId a : atoms) support[a] = 0;
			for (const auto& r : live) ++support[r.head];
			for (AtomId a : atoms) {
				if (vals_[a] < 0 && !g_.isFact(a) && support[a] == 0) {
					assign(a, 0);
					changed = true;
				}
			}
		}

		// Split open atoms into independent components.
		std::unordered_map<AtomId, AtomId> parent;
		std::vector<AtomId> open;
		for (AtomId a : atoms)
			if (vals_[a] < 0) {
				open.push_back(a);
				parent[a] = a;
			}
		auto findRoot = [&](AtomId a) {
			while (parent[a] != a) a = parent[a] = parent[parent[a]];
			return a;
		};
		for (const auto& r : live) {
			AtomId h = findRoot(r.head);
			for (auto* part : {&r.pos, &r.neg})
				for (AtomId b : *part) {
					AtomId x = findRoot(b);
					if (x != h) parent[std::max(x, h)] = std::min(x, h), h = std::min(x, h);
				}
		}
		std::unordered_map<AtomId, std::size_t> slot;
		std::vector<std::vector<AtomId>>     compAtoms;
		std::vector<std::vector<GroundRule>> compRules;
		for (AtomId a : open) {
			AtomId r = findRoot(a);
			auto [it, fresh] = slot.try_emplace(r, compAtoms.size());
			if (fresh) {
				compAtoms.emplace_back();
				compRules.emplace_back();
			}
			compAtoms[it->second].push_back(a);
		}
		for (auto& r : live) compRules[slot[findRoot(r.head)]].push_back(std::move(r));

		std::vector<NodeId> parts;
		for (AtomId a : atoms)
			if (vals_[a] >= 0) parts.push_back(c_.literal(a, vals_[a] == 1));
		bool unsat = false;
		for (std::size_t k = 0; k < compAtoms.size() && !unsat; ++k) {
			NodeId n = component(std::move(compAtoms[k]), std::move(compRules[k]));
			if (isFalse(n)) unsat = true;
			parts.push_back(n);
		}

		while (trail_.size() > mark) {
			vals_[trail_.back()] = -1;
			trail_.pop_back();
		}
		if (unsat) return falseNode();
		NodeId out = parts.size() == 1 ? parts.front() : c_.conjoin(std::move(parts));
		checkLimit();
		return out;
	}

	static std::vector<uint32_t> keyOf(const std::vector<AtomId>& atoms, std::vector<GroundRule>& rules) {
		for (auto& r : rules) {
			std::sort(r.pos.begin(), r.pos.end());
			r.pos.erase(std::unique(r.pos.begin(), r.pos.end()), r.pos.end());
			std::sort(r.neg.begin(), r.neg.end());
			r.neg.erase(std::unique(r.neg.begin(), r.neg.end()), r.neg.end());
		}
		std::sort(rules.begin(), rules.end(), [](const GroundRule& a, const GroundRule& b) {
			return std::tie(a.head, a.pos, a.neg) < std::tie(b.head, b.pos, b.neg);
		});
		rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
		std::vector<uint32_t> key;
		key.push_back(static_cast<uint32_t>(atoms.size()));
		key.insert(key.end(), atoms.begin(), atoms.end());
		for (const auto& r : rules) {
			key.push_back(r.head);
			key.push_back(static_cast<uint32_t>(r.pos.size()));
			key.insert(key.end(), r.pos.begin(), r.pos.end());
			key.push_back(static_cast<uint32_t>(r.neg.size()));
			key.insert(key.end(), r.neg.begin(), r.neg.end());
		}
		return key;
	}

	NodeId component(std::vector<AtomId> atoms, std::vector<GroundRule> rules) {
		std::sort(atoms.begin(), atoms.end());
		auto key = keyOf(atoms, rules);
		if (auto it = cache_.find(key); it != cache_.end()) return it->second;

		NodeId out;
		if (g_.isFact(atoms.front())) {
			const AtomId f = atoms.front();
			std::vector<NodeId> kids;
			for (bool v : {true, false}) {
				NodeId branch = expand(atoms, rules, std::make_pair(f, v));
				if (!isFalse(branch)) kids.push_back(branch);
			}
			if (kids.empty()) out = falseNode();
			else if (kids.size() == 1) out = kids.front();
			else out = c_.disjoin(std::move(kids));
		}
		else {
			out = leaf(atoms, rules);
		}
		cache_.emplace(std::move(key), out);
		return out;
	}

	// All facts decided: the component's stable models, one conjunction each.
	NodeId leaf(const std::vector<AtomId>& atoms, const std::vector<GroundRule>& rules) {
		std::unordered_map<AtomId, AtomId> local;
		for (AtomId i = 0; i < atoms.size(); ++i) local[atoms[i]] = i;
		std::vector<GroundRule> lr;
		lr.reserve(rules.size());
		for (const auto& r : rules) {
			GroundRule x{local.at(r.head), {}, {}};
			for (AtomId p : r.pos) x.pos.push_back(local.at(p));
			for (AtomId q : r.neg) x.neg.push_back(local.at(q));
			lr.push_back(std::move(x));
		}
		auto models = stableModels(lr, atoms.size(), {}, {}, opts_.solver);
		if (models.empty()) {
			if (!opts_.allowInconsistent) throwWitness();
			return falseNode();
		}
		std::vector<NodeId> alts;
		for (const auto& m : models) {
			std::vector<NodeId> lits;
			for (AtomId i = 0; i < atoms.size(); ++i) lits.push_back(c_.literal(atoms[i], m.test(i)));
			alts.push_back(lits.size() == 1 ? lits.front() : c_.conjoin(std::move(lits)));
		}
		if (alts.size() == 1) return alts.front();
		NodeId n = c_.disjoin(std::move(alts));
		c_.setSplitCount(n, static_cast<uint32_t>(models.size()));
		return n;
	}

	[[noreturn]] void throwWitness() const {
		TotalChoice choice(g_.factCount());
		std::vector<bool> witness(g_.factCount());
		for (AtomId f = 0; f < g_.factCount(); ++f) {
			witness[f] = vals_[f] == 1;
			choice.set(f, witness[f]);
		}
		std::string text = describeChoice(g_, choice);
		throw InvalidProgram("invalid program: total choice " + text + " has no stable model", std::move(witness), text);
	}

	const GroundProgram& g_;
	CompileOptions       opts_;
	Circuit              c_;
	std::vector<int8_t>  vals_;
	std::vector<AtomId>  trail_;
	std::optional<NodeId> falseNode_;
	std::unordered_map<std::vector<uint32_t>, NodeId, KeyHash> cache_;
};

} // namespace

Circuit compile(const GroundProgram& g, const CompileOptions& options) { return Compiler(g, options).run(); }

} // namespace stablelog

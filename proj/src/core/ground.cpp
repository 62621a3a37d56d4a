//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "ground.hpp"

#include "errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace stablelog {

std::optional<AtomId> GroundProgram::find(const Atom& a) const {
	auto it = ids_.find(a);
	if (it == ids_.end()) return std::nullopt;
	return it->second;
}

AtomId GroundProgram::require(const Atom& a) const {
	if (auto id = find(a)) return *id;
	throw UnknownAtom("unknown ground atom " + stablelog::toString(a));
}

std::vector<double> GroundProgram::probabilities() const {
	std::vector<double> out;
	out.reserve(facts_.size());
	for (const auto& f : facts_) out.push_back(f.label.value);
	return out;
}

std::vector<std::vector<std::size_t>> GroundProgram::rulesByHead() const {
	std::vector<std::vector<std::size_t>> out(atoms_.size());
	for (std::size_t i = 0; i < rules_.size(); ++i) out[rules_[i].head].push_back(i);
	return out;
}

void GroundProgram::index() {
	ids_.clear();
	for (AtomId i = 0; i < atoms_.size(); ++i) ids_.emplace(atoms_[i], i);
}

std::string GroundProgram::toString() const {
	std::ostringstream os;
	for (AtomId f = 0; f < facts_.size(); ++f)
		os << stablelog::toString(facts_[f].label) << "::" << stablelog::toString(atoms_[f]) << ".\n";
	for (const auto& r : rules_) {
		os << stablelog::toString(atoms_[r.head]);
		if (!r.pos.empty() || !r.neg.empty()) {
			os << " :- ";
			bool first = true;
			for (auto b : r.pos) {
				os << (first ? "" : ", ") << stablelog::toString(atoms_[b]);
				first = false;
			}
			for (auto b : r.neg) {
				os << (first ? "" : ", ") << "\\+" << stablelog::toString(atoms_[b]);
				first = false;
			}
		}
		os << ".\n";
	}
	for (auto q : queries_) os << "query(" << stablelog::toString(atoms_[q]) << ").\n";
	for (const auto& [a, v] : evidence_)
		os << "evidence(" << stablelog::toString(atoms_[a]) << ", " << (v ? "true" : "false") << ").\n";
	return os.str();
}

GroundProgram GroundProgram::build(std::vector<Atom> facts, std::vector<ProbLabel> labels, std::vector<Atom> derived,
                                   std::vector<GroundRule> rules, std::vector<AtomId> queries,
                                   std::vector<std::pair<AtomId, bool>> evidence) {
	GroundProgram g;
	g.atoms_ = std::move(facts);
	for (auto& l : labels) g.facts_.push_back({l, -1});
	g.atoms_.insert(g.atoms_.end(), std::make_move_iterator(derived.begin()), std::make_move_iterator(derived.end()));
	g.rules_    = std::move(rules);
	g.queries_  = std::move(queries);
	g.evidence_ = std::move(evidence);
	g.index();
	return g;
}

namespace {

using Signature = std::pair<std::string, std::size_t>;
using Binding   = std::vector<std::pair<std::string, Term>>;

const Term* lookup(const Binding& b, const std::string& var) {
	for (const auto& [k, v] : b)
		if (k == var) return &v;
	return nullptr;
}

Atom substitute(const Atom& a, const Binding& b) {
	Atom out = a;
	for (auto& t : out.args)
		if (t.isVariable())
			if (const Term* v = lookup(b, t.name)) t = *v;
	return out;
}

bool unify(const Atom& pattern, const Atom& ground, Binding& b) {
	for (std::size_t i = 0; i < pattern.args.size(); ++i) {
		const Term& p = pattern.args[i];
		if (!p.isVariable()) {
			if (p != ground.args[i]) return false;
			continue;
		}
		if (const Term* v = lookup(b, p.name)) {
			if (*v != ground.args[i]) return false;
		}
		else {
			b.emplace_back(p.name, ground.args[i]);
		}
	}
	return true;
}

} // namespace

class Grounder {
public:
	Grounder(const Program& p, const GroundOptions& o) : prog_(p), opts_(o) {}

	GroundProgram run() {
		classify();
		saturate();
		return assemble();
	}

private:
	struct Seen {
		Atom   atom;
		bool   derivable = false;
		int    factSource = -1;   // >= 0 for probabilistic facts: rule index
		std::size_t factOrder = 0; // creation order among facts
		std::size_t derivOrder = 0;
	};
	struct Instance {
		uint32_t              head;
		std::vector<uint32_t> pos;
		std::vector<uint32_t> neg;
		bool operator<(const Instance& o) const {
			return std::tie(head, pos, neg) < std::tie(o.head, o.pos, o.neg);
		}
	};

	uint32_t intern(const Atom& a) {
		auto [it, fresh] = tmp_.try_emplace(a, static_cast<uint32_t>(seen_.size()));
		if (fresh) {
			seen_.push_back({a});
			if (seen_.size() > opts_.atomLimit)
				throw LimitExceeded("grounding exceeded the limit of " + std::to_string(opts_.atomLimit) + " atoms");
		}
		return it->second;
	}

	bool markDerivable(uint32_t id) {
		if (seen_[id].derivable) return false;
		seen_[id].derivable = true;
		seen_[id].derivOrder = derivCounter_++;
		bySig_[{seen_[id].atom.predicate, seen_[id].atom.arity()}].push_back(id);
		return true;
	}

	void addFact(const Atom& a, std::size_t rule) {
		uint32_t id = intern(a);
		if (seen_[id].factSource < 0) {
			seen_[id].factSource = static_cast<int>(rule);
			seen_[id].factOrder  = factCounter_++;
		}
		markDerivable(id);
	}

	void classify() {
		for (std::size_t i = 0; i < prog_.rules.size(); ++i) {
			const Rule& r = prog_.rules[i];
			if (r.headNegated) throw Error("grounding requires a program without negated heads: " + toString(r));
			if (r.label && !r.body.empty()) throw Error("grounding requires a desugared program: " + toString(r));
			if (r.label) {
				if (r.head.isGround()) addFact(r.head, i);
				else schemas_[{r.head.predicate, r.head.arity()}] = i;
				continue;
			}
			if (r.body.empty()) {
				uint32_t id = intern(r.head);
				markDerivable(id);
				instances_.insert({id, {}, {}});
				continue;
			}
			rules_.push_back(i);
		}
	}

	bool isSchema(const Atom& a) const { return schemas_.count({a.predicate, a.arity()}) > 0; }

	void saturate() {
		bool changed = true;
		while (changed) {
			changed = false;
			for (std::size_t ri : rules_) {
				const Rule& r = prog_.rules[ri];
				std::vector<const Literal*> joins, deferred;
				for (const auto& l : r.body) {
					if (l.naf) continue;
					(isSchema(l.atom) ? deferred : joins).push_back(&l);
				}
				Binding b;
				join(r, joins, deferred, 0, b, changed);
			}
		}
	}

	void join(const Rule& r, const std::vector<const Literal*>& joins, const std::vector<const Literal*>& deferred,
	          std::size_t k, Binding& b, bool& changed) {
		if (k == joins.size()) {
			emit(r, deferred, b, changed);
			return;
		}
		const Atom& pat = joins[k]->atom;
		auto it = bySig_.find({pat.predicate, pat.arity()});
		if (it == bySig_.end()) return;
		// The candidate list may grow while we iterate; index-based on purpose.
		const auto& cands = it->second;
		for (std::size_t c = 0; c < cands.size(); ++c) {
			std::size_t mark = b.size();
			if (unify(pat, seen_[cands[c]].atom, b)) join(r, joins, deferred, k + 1, b, changed);
			b.resize(mark);
		}
	}

	void emit(const Rule& r, const std::vector<const Literal*>& deferred, const Binding& b, bool& changed) {
		for (const Literal* l : deferred) {
			Atom a = substitute(l->atom, b);
			if (!a.isGround()) throw Error("probabilistic fact " + toString(l->atom) + " is not bound by the rule body in " + toString(r));
			uint32_t id = intern(a);
			if (!seen_[id].derivable) {
				addFact(a, schemas_.at({a.predicate, a.arity()}));
				changed = true;
			}
		}
		Instance inst;
		inst.head = intern(substitute(r.head, b));
		for (const auto& l : r.body) {
			uint32_t id = intern(substitute(l.atom, b));
			(l.naf ? inst.neg : inst.pos).push_back(id);
		}
		if (instances_.insert(inst).second) changed = true;
		if (markDerivable(inst.head)) changed = true;
	}

	GroundProgram assemble() {
		// Seeds.
		std::vector<uint32_t> queries;
		for (const auto& q : prog_.queries) {
			if (q.isGround()) {
				queries.push_back(intern(q));
				continue;
			}
			auto it = bySig_.find({q.predicate, q.arity()});
			if (it == bySig_.end()) continue;
			for (uint32_t id : it->second) {
				Binding b;
				if (unify(q, seen_[id].atom, b)) queries.push_back(id);
			}
		}
		std::vector<std::pair<uint32_t, bool>> evidence;
		for (const auto& e : prog_.evidence) evidence.emplace_back(intern(e.atom), e.value);
		std::vector<uint32_t> seeds = queries;
		for (const auto& [a, v] : evidence) seeds.push_back(a);
		for (const auto& a : opts_.extraSeeds) seeds.push_back(intern(a));

		// Drop naf literals on atoms that can never be derived.
		std::vector<Instance> insts;
		for (Instance inst : instances_) {
			std::erase_if(inst.neg, [&](uint32_t a) { return !seen_[a].derivable; });
			std::sort(inst.neg.begin(), inst.neg.end());
			inst.neg.erase(std::unique(inst.neg.begin(), inst.neg.end()), inst.neg.end());
			insts.push_back(std::move(inst));
		}

		std::vector<char> relevant(seen_.size(), 0);
		bool keepAll = opts_.keepAll || seeds.empty();
		if (keepAll) {
			for (std::size_t i = 0; i < seen_.size(); ++i) relevant[i] = seen_[i].derivable;
			for (uint32_t s : seeds) relevant[s] = 1;
		}
		else {
			std::vector<std::vector<std::size_t>> byHead(seen_.size());
			for (std::size_t i = 0; i < insts.size(); ++i) byHead[insts[i].head].push_back(i);
			std::vector<uint32_t> stack;
			for (uint32_t s : seeds)
				if (!relevant[s]) {
					relevant[s] = 1;
					stack.push_back(s);
				}
			while (!stack.empty()) {
				uint32_t a = stack.back();
				stack.pop_back();
				for (std::size_t ri : byHead[a]) {
					for (auto* part : {&insts[ri].pos, &insts[ri].neg})
						for (uint32_t b : *part)
							if (!relevant[b]) {
								relevant[b] = 1;
								stack.push_back(b);
							}
				}
			}
		}

		// Numbering: facts by (source rule, creation), then derived atoms by
		// derivation order, then atoms that are only queried or observed.
		std::vector<uint32_t> factIds, derivedIds, inertIds;
		for (uint32_t i = 0; i < seen_.size(); ++i) {
			if (!relevant[i]) continue;
			if (seen_[i].factSource >= 0) factIds.push_back(i);
			else if (seen_[i].derivable) derivedIds.push_back(i);
			else inertIds.push_back(i);
		}
		std::sort(factIds.begin(), factIds.end(), [&](uint32_t a, uint32_t b) {
			return std::tie(seen_[a].factSource, seen_[a].factOrder) < std::tie(seen_[b].factSource, seen_[b].factOrder);
		});
		std::sort(derivedIds.begin(), derivedIds.end(),
		          [&](uint32_t a, uint32_t b) { return seen_[a].derivOrder < seen_[b].derivOrder; });

		GroundProgram g;
		std::vector<AtomId> remap(seen_.size(), UINT32_MAX);
		auto place = [&](uint32_t t) {
			remap[t] = static_cast<AtomId>(g.atoms_.size());
			g.atoms_.push_back(seen_[t].atom);
		};
		for (uint32_t t : factIds) {
			place(t);
			g.facts_.push_back({*prog_.rules[seen_[t].factSource].label, prog_.rules[seen_[t].factSource].source});
		}
		for (uint32_t t : derivedIds) place(t);
		for (uint32_t t : inertIds) place(t);
		g.index();

		// Rules in head-derivation order for stable output.
		std::vector<GroundRule> rules;
		std::set<std::tuple<AtomId, std::vector<AtomId>, std::vector<AtomId>>> dedupe;
		for (const auto& inst : insts) {
			if (!relevant[inst.head]) continue;
			GroundRule gr;
			gr.head = remap[inst.head];
			for (uint32_t b : inst.pos) gr.pos.push_back(remap[b]);
			for (uint32_t b : inst.neg) gr.neg.push_back(remap[b]);
			if (dedupe.insert({gr.head, gr.pos, gr.neg}).second) rules.push_back(std::move(gr));
		}
		std::stable_sort(rules.begin(), rules.end(), [](const GroundRule& a, const GroundRule& b) { return a.head < b.head; });
		g.rules_ = std::move(rules);

		std::set<AtomId> seenQ;
		for (uint32_t q : queries)
			if (seenQ.insert(remap[q]).second) g.queries_.push_back(remap[q]);
		for (const auto& [a, v] : evidence) g.evidence_.emplace_back(remap[a], v);
		return g;
	}

	const Program&       prog_;
	const GroundOptions& opts_;

	std::vector<Seen>                             seen_;
	std::unordered_map<Atom, uint32_t, AtomHash>  tmp_;
	std::map<Signature, std::vector<uint32_t>>    bySig_;
	std::map<Signature, std::size_t>              schemas_;
	std::vector<std::size_t>                      rules_;
	std::set<Instance>                            instances_;
	std::size_t                                   factCounter_ = 0;
	std::size_t                                   derivCounter_ = 0;
};

GroundProgram ground(const Program& program, const GroundOptions& options) {
	return Grounder(program, options).run();
}

DependencyGraph::DependencyGraph(const GroundProgram& g) : out(g.atomCount()) {
	for (const auto& r : g.rules()) {
		for (auto b : r.pos) out[b].push_back({r.head, false});
		for (auto b : r.neg) out[b].push_back({r.head, true});
	}
}

std::vector<uint32_t> DependencyGraph::components() const {
	// Iterative Tarjan.
	const std::size_t n = out.size();
	constexpr uint32_t kUnset = UINT32_MAX;
	std::vector<uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
	std::vector<char>     onStack(n, 0);
	std::vector<uint32_t> stack;
	std::vector<std::pair<uint32_t, std::size_t>> call;
	uint32_t counter = 0, nComp = 0;
	for (uint32_t root = 0; root < n; ++root) {
		if (index[root] != kUnset) continue;
		call.push_back({root, 0});
		while (!call.empty()) {
			auto& [v, edge] = call.back();
			if (edge == 0 && index[v] == kUnset) {
				index[v] = low[v] = counter++;
				stack.push_back(v);
				onStack[v] = 1;
			}
			if (edge < out[v].size()) {
				uint32_t w = out[v][edge++].to;
				if (index[w] == kUnset) call.push_back({w, 0});
				else if (onStack[w]) low[v] = std::min(low[v], index[w]);
				continue;
			}
			if (low[v] == index[v]) {
				uint32_t w;
				do {
					w = stack.back();
					stack.pop_back();
					onStack[w] = 0;
					comp[w]    = nComp;
				} while (w != v);
				++nComp;
			}
			uint32_t done = v;
			call.pop_back();
			if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
		}
	}
	return comp;
}

bool hasNegativeCycle(const GroundProgram& g) {
	DependencyGraph dg(g);
	auto comp = dg.components();
	for (std::size_t v = 0; v < dg.out.size(); ++v)
		for (const auto& e : dg.out[v])
			if (e.negative && comp[v] == comp[e.to]) return true;
	return false;
}

} // namespace stablelog

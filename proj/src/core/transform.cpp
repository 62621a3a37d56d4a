//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "transform.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace stablelog {
namespace {

using Signature = std::pair<std::string, std::size_t>;

Signature signatureOf(const Atom& a) { return {a.predicate, a.arity()}; }

bool isLabeledFact(const Rule& r) { return r.label && r.body.empty(); }

int firstFreeAuxIndex(const Program& p) {
	int next = 0;
	auto scan = [&](const Atom& a) {
		if (!a.predicate.starts_with(kAuxPrefix)) return;
		std::string_view rest(a.predicate);
		rest.remove_prefix(kAuxPrefix.size());
		if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }))
			return;
		next = std::max(next, std::stoi(std::string(rest)) + 1);
	};
	for (const auto& r : p.rules) {
		scan(r.head);
		for (const auto& l : r.body) scan(l.atom);
	}
	return next;
}

Atom renamed(const Atom& a, std::string_view suffix) {
	Atom out = a;
	out.predicate += suffix;
	return out;
}

} // namespace

Program desugar(const Program& program) {
	std::set<Signature> derived;
	std::map<Atom, int> labeledCount;
	for (const auto& r : program.rules) {
		if (isLabeledFact(r)) ++labeledCount[r.head];
		else derived.insert(signatureOf(r.head));
	}
	auto needsSugar = [&](const Rule& r) {
		if (!r.label) return false;
		if (!r.body.empty() || r.headNegated) return true;
		return derived.count(signatureOf(r.head)) > 0 || labeledCount[r.head] > 1;
	};

	Program out;
	out.queries  = program.queries;
	out.evidence = program.evidence;
	int next     = firstFreeAuxIndex(program);
	for (const auto& r : program.rules) {
		if (!needsSugar(r)) {
			out.rules.push_back(r);
			continue;
		}
		Atom aux(std::string(kAuxPrefix) + std::to_string(next++));
		for (const auto& v : variablesOf(r)) aux.args.push_back(Term::variable(v));

		Rule fact;
		fact.head   = aux;
		fact.label  = r.label;
		fact.source = r.source;

		Rule rule   = r;
		rule.label  = std::nullopt;
		rule.body.insert(rule.body.begin(), Literal{aux, false});

		out.rules.push_back(std::move(fact));
		out.rules.push_back(std::move(rule));
	}
	return out;
}

Program rewriteNegatedHeads(const Program& program) {
	std::vector<Signature> negSigs; // first-occurrence order
	for (const auto& r : program.rules)
		if (r.headNegated && std::find(negSigs.begin(), negSigs.end(), signatureOf(r.head)) == negSigs.end())
			negSigs.push_back(signatureOf(r.head));
	if (negSigs.empty()) return program;

	std::set<Signature> groundOnly;
	for (const auto& sig : negSigs) {
		bool allGround = std::all_of(program.rules.begin(), program.rules.end(), [&](const Rule& r) {
			return signatureOf(r.head) != sig || r.head.isGround();
		});
		if (allGround) groundOnly.insert(sig);
	}

	std::map<Signature, std::vector<Atom>> negatedAtoms;
	for (const auto& r : program.rules) {
		if (!r.headNegated || !groundOnly.count(signatureOf(r.head))) continue;
		auto& v = negatedAtoms[signatureOf(r.head)];
		if (std::find(v.begin(), v.end(), r.head) == v.end()) v.push_back(r.head);
	}
	auto isInhibited = [&](const Atom& a) {
		auto sig = signatureOf(a);
		if (std::find(negSigs.begin(), negSigs.end(), sig) == negSigs.end()) return false;
		if (!groundOnly.count(sig)) return true;
		const auto& v = negatedAtoms[sig];
		return std::find(v.begin(), v.end(), a) != v.end();
	};

	Program out;
	out.queries  = program.queries;
	out.evidence = program.evidence;
	for (const auto& r : program.rules) {
		Rule copy = r;
		if (isInhibited(r.head)) {
			copy.head        = renamed(r.head, r.headNegated ? kNegSuffix : kPosSuffix);
			copy.headNegated = false;
		}
		out.rules.push_back(std::move(copy));
	}

	auto bridge = [&](const Atom& h) {
		Rule b;
		b.head = h;
		b.body = {Literal{renamed(h, kPosSuffix), false}, Literal{renamed(h, kNegSuffix), true}};
		out.rules.push_back(std::move(b));
	};
	for (const auto& sig : negSigs) {
		if (groundOnly.count(sig)) {
			for (const auto& h : negatedAtoms[sig]) bridge(h);
			continue;
		}
		Atom h(sig.first);
		for (std::size_t i = 0; i < sig.second; ++i) h.args.push_back(Term::variable("X" + std::to_string(i + 1)));
		bridge(h);
	}
	return out;
}

Program normalize(const Program& program) { return rewriteNegatedHeads(desugar(program)); }

} // namespace stablelog

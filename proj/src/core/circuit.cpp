//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "circuit.hpp"

#include "errors.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace stablelog {

NodeId Circuit::add(CircuitNode n) {
	nodes_.push_back(std::move(n));
	split_.push_back(0);
	return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Circuit::literal(AtomId atom, bool positive) {
	if (literalIds_.size() < 2 * atomCount_) literalIds_.resize(2 * atomCount_, 0);
	NodeId& slot = literalIds_[2 * atom + (positive ? 1 : 0)];
	if (!slot) slot = add({CircuitNode::Kind::Literal, atom, positive, {}}) + 1;
	return slot - 1;
}

NodeId Circuit::conjoin(std::vector<NodeId> children) {
	return add({CircuitNode::Kind::And, 0, true, std::move(children)});
}

NodeId Circuit::disjoin(std::vector<NodeId> children) {
	return add({CircuitNode::Kind::Or, 0, true, std::move(children)});
}

std::string Circuit::dump() const {
	// Renumber so that only nodes reachable from the root appear, root last.
	std::vector<char> live(nodes_.size(), 0);
	live[root_] = 1;
	for (NodeId i = root_ + 1; i-- > 0;)
		if (live[i])
			for (NodeId ch : nodes_[i].children) live[ch] = 1;
	std::vector<NodeId> id(nodes_.size(), 0);
	NodeId next = 0;
	for (NodeId i = 0; i <= root_; ++i)
		if (live[i]) id[i] = next++;
	std::ostringstream os;
	for (NodeId i = 0; i <= root_; ++i) {
		if (!live[i]) continue;
		const auto& n = nodes_[i];
		if (n.kind == CircuitNode::Kind::Literal) {
			os << "L " << (n.positive ? "" : "-") << (n.atom + 1) << '\n';
			continue;
		}
		os << (n.kind == CircuitNode::Kind::And ? 'A' : 'O');
		for (NodeId ch : n.children) os << ' ' << id[ch];
		os << '\n';
	}
	return os.str();
}

std::vector<Bitset> Circuit::variableSets() const {
	std::vector<Bitset> vars(nodes_.size(), Bitset(atomCount_));
	for (NodeId i = 0; i < nodes_.size(); ++i) {
		const auto& n = nodes_[i];
		if (n.kind == CircuitNode::Kind::Literal) vars[i].set(n.atom);
		for (NodeId ch : n.children) vars[i] |= vars[ch];
	}
	return vars;
}

bool Circuit::isDecomposable() const {
	auto vars = variableSets();
	for (const auto& n : nodes_) {
		if (n.kind != CircuitNode::Kind::And) continue;
		Bitset seen(atomCount_);
		for (NodeId ch : n.children) {
			if (seen.intersects(vars[ch])) return false;
			seen |= vars[ch];
		}
	}
	return true;
}

bool Circuit::isSmooth() const {
	auto vars = variableSets();
	for (const auto& n : nodes_) {
		if (n.kind != CircuitNode::Kind::Or) continue;
		for (NodeId ch : n.children)
			if (!(vars[ch] == vars[n.children.front()])) return false;
	}
	return true;
}

bool Circuit::isDeterministic(std::size_t modelLimit) const {
	auto vars = variableSets();
	// Models per node as sets of true atoms over the node's variables.
	std::vector<std::vector<Bitset>> models(nodes_.size());
	for (NodeId i = 0; i < nodes_.size(); ++i) {
		const auto& n = nodes_[i];
		auto& out = models[i];
		switch (n.kind) {
			case CircuitNode::Kind::Literal: {
				Bitset b(atomCount_);
				if (n.positive) b.set(n.atom);
				out.push_back(std::move(b));
				break;
			}
			case CircuitNode::Kind::And: {
				out.push_back(Bitset(atomCount_));
				for (NodeId ch : n.children) {
					std::vector<Bitset> next;
					for (const auto& a : out)
						for (const auto& b : models[ch]) {
							Bitset m = a;
							m |= b;
							next.push_back(std::move(m));
							if (next.size() > modelLimit) throw LimitExceeded("determinism check: too many models");
						}
					out = std::move(next);
				}
				break;
			}
			case CircuitNode::Kind::Or: {
				for (std::size_t x = 0; x < n.children.size(); ++x)
					for (std::size_t y = x + 1; y < n.children.size(); ++y) {
						Bitset common = vars[n.children[x]];
						common &= vars[n.children[y]];
						std::unordered_set<Bitset, BitsetHash> proj;
						for (Bitset m : models[n.children[x]]) {
							m &= common;
							proj.insert(std::move(m));
						}
						for (Bitset m : models[n.children[y]]) {
							m &= common;
							if (proj.count(m)) return false;
						}
					}
				for (NodeId ch : n.children) out.insert(out.end(), models[ch].begin(), models[ch].end());
				if (out.size() > modelLimit) throw LimitExceeded("determinism check: too many models");
				break;
			}
		}
	}
	return true;
}

Circuit smooth(const Circuit& c) {
	auto vars = c.variableSets();
	Circuit out(c.atomCount(), c.factCount());
	std::vector<NodeId> map(c.size());
	auto gadget = [&](AtomId a) { return out.disjoin({out.literal(a, true), out.literal(a, false)}); };
	auto pad = [&](NodeId child, const Bitset& have, const Bitset& want) {
		std::vector<NodeId> parts{child};
		want.forEach([&](std::size_t a) {
			if (!have.test(a)) parts.push_back(gadget(static_cast<AtomId>(a)));
		});
		return parts.size() == 1 ? child : out.conjoin(std::move(parts));
	};
	for (NodeId i = 0; i < c.size(); ++i) {
		const auto& n = c.node(i);
		if (n.kind == CircuitNode::Kind::Literal) {
			map[i] = out.literal(n.atom, n.positive);
			continue;
		}
		std::vector<NodeId> kids;
		for (NodeId ch : n.children)
			kids.push_back(n.kind == CircuitNode::Kind::Or ? pad(map[ch], vars[ch], vars[i]) : map[ch]);
		map[i] = n.kind == CircuitNode::Kind::And ? out.conjoin(std::move(kids)) : out.disjoin(std::move(kids));
		out.setSplitCount(map[i], c.splitCount(i));
	}
	Bitset all(c.atomCount());
	for (AtomId a = 0; a < c.atomCount(); ++a) all.set(a);
	out.setRoot(pad(map[c.root()], vars[c.root()], all));
	return out;
}

} // namespace stablelog

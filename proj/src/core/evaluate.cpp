//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "circuit.hpp"

#include "errors.hpp"

#include <algorithm>
#include <numeric>

namespace stablelog {

// ---------------------------------------------------------------------------
// Model index

ChoiceModelIndex::ChoiceModelIndex(std::size_t atomCount, std::size_t factCount, std::vector<uint64_t> rows)
	: atomCount_(atomCount), factCount_(factCount), words_((atomCount + 63) / 64) {
	if (!words_) words_ = 1;
	const std::size_t n = rows.size() / words_;
	const std::size_t prefixWords = (factCount + 63) / 64;
	auto prefixWord = [&](const uint64_t* r, std::size_t w) {
		uint64_t v = r[w];
		if (w + 1 == prefixWords && (factCount & 63)) v &= (uint64_t{1} << (factCount & 63)) - 1;
		return v;
	};
	auto prefixLess = [&](const uint64_t* a, const uint64_t* b) {
		for (std::size_t w = 0; w < prefixWords; ++w) {
			uint64_t x = prefixWord(a, w), y = prefixWord(b, w);
			if (x != y) return x < y;
		}
		return false;
	};

	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), std::size_t{0});
	std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
		const uint64_t* ra = &rows[a * words_];
		const uint64_t* rb = &rows[b * words_];
		if (prefixLess(ra, rb)) return true;
		if (prefixLess(rb, ra)) return false;
		return std::lexicographical_compare(ra, ra + words_, rb, rb + words_);
	});
	rows_.reserve(rows.size());
	for (std::size_t i : order) rows_.insert(rows_.end(), rows.begin() + i * words_, rows.begin() + (i + 1) * words_);

	for (std::size_t r = 0; r < n; ++r) {
		const uint64_t* cur = &rows_[r * words_];
		if (r > 0 && !prefixLess(&rows_[(r - 1) * words_], cur)) {
			++entries_.back().count;
			continue;
		}
		entries_.push_back({r, 1});
	}
	for (std::size_t e = 0; e < entries_.size(); ++e)
		if (entries_[e].count > 1) multi_.push_back(e);
}

Interpretation ChoiceModelIndex::model(std::size_t row) const {
	Interpretation s(atomCount_);
	for (std::size_t w = 0; w < s.words().size(); ++w) s.words()[w] = rows_[row * words_ + w];
	return s;
}

TotalChoice ChoiceModelIndex::choice(const Entry& e) const {
	TotalChoice c(factCount_);
	for (AtomId f = 0; f < factCount_; ++f) c.set(f, test(e.first, f));
	return c;
}

double ChoiceModelIndex::choiceProbability(const Entry& e, std::span<const double> labels) const {
	double p = 1.0;
	for (AtomId f = 0; f < factCount_; ++f) p *= test(e.first, f) ? labels[f] : 1.0 - labels[f];
	return p;
}

const ChoiceModelIndex::Entry* ChoiceModelIndex::find(const TotalChoice& choice) const {
	auto cmp = [&](const Entry& e, const TotalChoice& c) {
		const std::size_t prefixWords = (factCount_ + 63) / 64;
		for (std::size_t w = 0; w < prefixWords; ++w) {
			uint64_t x = rows_[e.first * words_ + w];
			if (w + 1 == prefixWords && (factCount_ & 63)) x &= (uint64_t{1} << (factCount_ & 63)) - 1;
			uint64_t y = c.words()[w];
			if (x != y) return x < y;
		}
		return false;
	};
	auto it = std::lower_bound(entries_.begin(), entries_.end(), choice, cmp);
	if (it == entries_.end()) return nullptr;
	for (AtomId f = 0; f < factCount_; ++f)
		if (test(it->first, f) != choice.test(f)) return nullptr;
	return &*it;
}

ChoiceModelIndex enumerateModels(const Circuit& c, std::size_t modelLimit) {
	const std::size_t words = std::max<std::size_t>(1, (c.atomCount() + 63) / 64);
	const NodeId root = c.root();

	// Parents still waiting for each node's rows, so rows can be freed early.
	std::vector<uint32_t> pending(c.size(), 0);
	std::vector<char> live(c.size(), 0);
	live[root] = 1;
	for (NodeId i = root + 1; i-- > 0;) {
		if (!live[i]) continue;
		for (NodeId ch : c.node(i).children) {
			live[ch] = 1;
			++pending[ch];
		}
	}

	std::vector<std::vector<uint64_t>> rows(c.size());
	auto release = [&](NodeId ch) {
		if (--pending[ch] == 0) std::vector<uint64_t>().swap(rows[ch]);
	};
	auto guard = [&](std::size_t count) {
		if (count > modelLimit)
			throw LimitExceeded("model enumeration exceeded " + std::to_string(modelLimit) + " models");
	};

	for (NodeId i = 0; i <= root; ++i) {
		if (!live[i]) continue;
		const auto& n = c.node(i);
		auto& out = rows[i];
		switch (n.kind) {
			case CircuitNode::Kind::Literal:
				out.assign(words, 0);
				if (n.positive) out[n.atom >> 6] |= uint64_t{1} << (n.atom & 63);
				break;
			case CircuitNode::Kind::Or: {
				std::size_t total = 0;
				for (NodeId ch : n.children) total += rows[ch].size();
				guard(total / words);
				out.reserve(total);
				for (NodeId ch : n.children) {
					out.insert(out.end(), rows[ch].begin(), rows[ch].end());
					release(ch);
				}
				break;
			}
			case CircuitNode::Kind::And: {
				out.assign(words, 0);
				for (NodeId ch : n.children) {
					const auto& rhs = rows[ch];
					const std::size_t a = out.size() / words, b = rhs.size() / words;
					guard(a * b);
					std::vector<uint64_t> next(a * b * words);
					for (std::size_t x = 0; x < a; ++x)
						for (std::size_t y = 0; y < b; ++y)
							for (std::size_t w = 0; w < words; ++w)
								next[(x * b + y) * words + w] = out[x * words + w] | rhs[y * words + w];
					out = std::move(next);
					release(ch);
				}
				break;
			}
		}
	}
	return ChoiceModelIndex(c.atomCount(), c.factCount(), std::move(rows[root]));
}

// ---------------------------------------------------------------------------
// Weighted model counting

WeightMap WeightMap::fromLabels(std::size_t atomCount, std::span<const double> labels) {
	WeightMap w;
	w.pos.assign(atomCount, 1.0);
	w.neg.assign(atomCount, 1.0);
	for (std::size_t f = 0; f < labels.size(); ++f) {
		w.pos[f] = labels[f];
		w.neg[f] = 1.0 - labels[f];
	}
	return w;
}

void WeightMap::instantiate(const EvidenceList& evidence) {
	for (const auto& [a, v] : evidence) (v ? neg : pos)[a] = 0.0;
}

namespace {

void forwardPass(const Circuit& c, const WeightMap& w, std::vector<double>& value, bool normalize) {
	value.assign(c.size(), 0.0);
	for (NodeId i = 0; i <= c.root() && i < c.size(); ++i) {
		const auto& n = c.node(i);
		switch (n.kind) {
			case CircuitNode::Kind::Literal:
				value[i] = n.positive ? w.pos[n.atom] : w.neg[n.atom];
				break;
			case CircuitNode::Kind::And: {
				double v = 1.0;
				for (NodeId ch : n.children) v *= value[ch];
				value[i] = v;
				break;
			}
			case CircuitNode::Kind::Or: {
				double v = 0.0;
				for (NodeId ch : n.children) v += value[ch];
				if (normalize && c.splitCount(i) > 1) v /= c.splitCount(i);
				value[i] = v;
				break;
			}
		}
	}
}

} // namespace

double weightedModelCount(const Circuit& c, const WeightMap& w) {
	std::vector<double> value;
	forwardPass(c, w, value, false);
	return value[c.root()];
}

Evaluation evaluate(const Circuit& c, const ChoiceModelIndex& idx, std::span<const double> labels, AtomId query,
                    const EvidenceList& evidence) {
	if (query >= c.atomCount()) throw UnknownAtom("query atom id out of range");
	const WeightMap base = WeightMap::fromLabels(c.atomCount(), labels);

	WeightMap we = base;
	we.instantiate(evidence);
	EvidenceList qe = evidence;
	qe.emplace_back(query, true);
	WeightMap wqe = base;
	wqe.instantiate(qe);

	Evaluation out;
	out.denominator = weightedModelCount(c, we);
	out.numerator   = weightedModelCount(c, wqe);

	auto holds = [&](std::size_t row, const EvidenceList& ev) {
		for (const auto& [a, v] : ev)
			if (idx.test(row, a) != v) return false;
		return true;
	};
	for (std::size_t e : idx.multiModelEntries()) {
		const auto& entry = idx.entries()[e];
		bool reached = false;
		for (std::size_t r = entry.first; r < entry.first + entry.count && !reached; ++r) reached = holds(r, evidence);
		if (!reached) continue;
		const double n    = entry.count;
		const double over = idx.choiceProbability(entry, labels) * (n - 1.0) / n;
		for (std::size_t r = entry.first; r < entry.first + entry.count; ++r) {
			if (!holds(r, evidence)) continue;
			out.denominator -= over;
			if (idx.test(r, query)) out.numerator -= over;
		}
	}
	out.numerator = std::max(0.0, out.numerator);
	if (!(out.denominator > 0.0)) throw ZeroProbabilityEvidence("evidence has probability zero");
	return out;
}

double NormalizedCircuit::forward(const WeightMap& w) {
	forwardPass(c_, w, value_, true);
	return value_[c_.root()];
}

void NormalizedCircuit::backward(const WeightMap&, std::vector<double>& dPos, std::vector<double>& dNeg) {
	dPos.assign(c_.atomCount(), 0.0);
	dNeg.assign(c_.atomCount(), 0.0);
	std::fill(adjoint_.begin(), adjoint_.end(), 0.0);
	adjoint_[c_.root()] = 1.0;
	std::vector<double> suffix;
	for (NodeId i = c_.root() + 1; i-- > 0;) {
		const double adj = adjoint_[i];
		if (adj == 0.0) continue;
		const auto& n = c_.node(i);
		switch (n.kind) {
			case CircuitNode::Kind::Literal:
				(n.positive ? dPos : dNeg)[n.atom] += adj;
				break;
			case CircuitNode::Kind::Or: {
				const double scale = c_.splitCount(i) > 1 ? adj / c_.splitCount(i) : adj;
				for (NodeId ch : n.children) adjoint_[ch] += scale;
				break;
			}
			case CircuitNode::Kind::And: {
				// Product of the siblings without division, so zeros are safe.
				const std::size_t k = n.children.size();
				suffix.assign(k + 1, 1.0);
				for (std::size_t j = k; j-- > 0;) suffix[j] = suffix[j + 1] * value_[n.children[j]];
				double prefix = 1.0;
				for (std::size_t j = 0; j < k; ++j) {
					adjoint_[n.children[j]] += adj * prefix * suffix[j + 1];
					prefix *= value_[n.children[j]];
				}
				break;
			}
		}
	}
}

// ---------------------------------------------------------------------------

QueryResult inferWithCircuit(const GroundProgram& g, std::span<const AtomId> queries, const EvidenceList& evidence,
                             const CircuitOptions& options, PhaseTimings* timings) {
	using Clock = std::chrono::steady_clock;
	auto seconds = [](Clock::time_point a, Clock::time_point b) { return std::chrono::duration<double>(b - a).count(); };
	for (AtomId q : queries)
		if (q >= g.atomCount()) throw UnknownAtom("query atom id out of range");

	auto t0 = Clock::now();
	Circuit c = smooth(compile(g, options.compile));
	auto t1 = Clock::now();
	ChoiceModelIndex idx = enumerateModels(c, options.modelLimit);
	auto t2 = Clock::now();

	const auto labels = g.probabilities();
	QueryResult out;
	out.consistentMass = 0.0;
	for (const auto& e : idx.entries()) out.consistentMass += idx.choiceProbability(e, labels);
	for (std::size_t e : idx.multiModelEntries()) {
		const auto& entry = idx.entries()[e];
		for (std::size_t r = entry.first; r < entry.first + entry.count && !out.usedMultipleModels; ++r) {
			bool ok = true;
			for (const auto& [a, v] : evidence) ok = ok && idx.test(r, a) == v;
			out.usedMultipleModels = ok;
		}
		if (out.usedMultipleModels) break;
	}
	// Surface impossible evidence even without queries.
	if (queries.empty() && !evidence.empty()) evaluate(c, idx, labels, evidence.front().first, evidence);
	for (AtomId q : queries) out.probabilities.emplace_back(q, evaluate(c, idx, labels, q, evidence).value());
	auto t3 = Clock::now();

	if (timings) {
		timings->compileSeconds   = seconds(t0, t1);
		timings->enumerateSeconds = seconds(t1, t2);
		timings->evaluateSeconds  = seconds(t2, t3);
	}
	return out;
}

} // namespace stablelog

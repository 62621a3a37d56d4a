//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#ifndef STABLELOG_CIRCUIT_HPP
#define STABLELOG_CIRCUIT_HPP

#include "semantics.hpp"

#include <chrono>
#include <span>
#include <string>
#include <vector>

namespace stablelog {

using NodeId = uint32_t;

struct CircuitNode {
	enum class Kind : uint8_t { Literal, And, Or };

	Kind                kind     = Kind::And;
	AtomId              atom     = 0;    // literals only
	bool                positive = true; // literals only
	std::vector<NodeId> children;
};

/// NNF DAG over fact and derived atoms. Children always have smaller ids
/// than their parents. An empty AND is true, an empty OR is false.
///
/// OR nodes that list the stable models of a fully decided component carry
/// the number of those models in splitCount(); every other node has 0.
class Circuit {
public:
	Circuit() = default;
	Circuit(std::size_t atomCount, std::size_t factCount) : atomCount_(atomCount), factCount_(factCount) {}

	std::size_t atomCount() const { return atomCount_; }
	std::size_t factCount() const { return factCount_; }
	std::size_t size() const { return nodes_.size(); }

	const CircuitNode& node(NodeId id) const { return nodes_[id]; }
	NodeId   root() const { return root_; }
	void     setRoot(NodeId r) { root_ = r; }
	uint32_t splitCount(NodeId id) const { return split_[id]; }
	void     setSplitCount(NodeId id, uint32_t k) { split_[id] = k; }

	NodeId literal(AtomId atom, bool positive);
	NodeId conjoin(std::vector<NodeId> children);
	NodeId disjoin(std::vector<NodeId> children);

	/// Line-based dump: `L <lit>`, `A <ids>`, `O <ids>`, one node per line,
	/// root last. Literals are signed 1-based atom ids.
	std::string dump() const;

	/// Atoms mentioned below each node.
	std::vector<Bitset> variableSets() const;

	bool isDecomposable() const;
	bool isSmooth() const;
	/// Checks pairwise inconsistency of OR children by enumerating their
	/// models; throws LimitExceeded past `modelLimit` models per node.
	bool isDeterministic(std::size_t modelLimit = 1u << 16) const;

private:
	NodeId add(CircuitNode n);

	std::size_t              atomCount_ = 0;
	std::size_t              factCount_ = 0;
	std::vector<CircuitNode> nodes_;
	std::vector<uint32_t>    split_;
	std::vector<NodeId>      literalIds_; // 2 * atom + positive -> id + 1
	NodeId                   root_ = 0;
};

/// Rebuilds `c` so that every OR's children mention the same atoms and the
/// root mentions every atom, inserting (a | -a) gadgets where needed.
Circuit smooth(const Circuit& c);

struct CompileOptions {
	bool          allowInconsistent = false;
	std::size_t   nodeLimit         = 20'000'000;
	SolverOptions solver;
};

/// Decision-DNNF compilation: Shannon expansion on probabilistic facts,
/// simplification and component splitting of the residual program, caching
/// of identical residual components. Once a component has no open facts its
/// stable models become an OR of full-assignment conjunctions. Throws
/// InvalidProgram (with a witness) when a world has no stable model unless
/// options.allowInconsistent is set.
Circuit compile(const GroundProgram& g, const CompileOptions& options = {});

/// Stable models grouped by total choice. Models are stored as packed bit
/// rows over all atoms, sorted by choice (the fact prefix) and then by the
/// model itself.
class ChoiceModelIndex {
public:
	struct Entry {
		std::size_t first = 0; // row of the first model
		uint32_t    count = 0; // |M(w)|
	};

	ChoiceModelIndex() = default;
	ChoiceModelIndex(std::size_t atomCount, std::size_t factCount, std::vector<uint64_t> rows);

	std::size_t atomCount() const { return atomCount_; }
	std::size_t factCount() const { return factCount_; }
	std::size_t modelCount() const { return words_ ? rows_.size() / words_ : 0; }
	const std::vector<Entry>&       entries() const { return entries_; }
	/// Entries with more than one model.
	const std::vector<std::size_t>& multiModelEntries() const { return multi_; }

	bool        test(std::size_t row, AtomId a) const { return (rows_[row * words_ + (a >> 6)] >> (a & 63)) & 1U; }
	Interpretation model(std::size_t row) const;
	TotalChoice    choice(const Entry& e) const;
	double         choiceProbability(const Entry& e, std::span<const double> labels) const;
	/// Entry for a total choice, or nullptr.
	const Entry*   find(const TotalChoice& choice) const;

private:
	std::size_t              atomCount_ = 0;
	std::size_t              factCount_ = 0;
	std::size_t              words_     = 0;
	std::vector<uint64_t>    rows_;
	std::vector<Entry>       entries_;
	std::vector<std::size_t> multi_;
};

/// Bottom-up model enumeration: literals give singleton partial models, OR
/// is union, AND is cartesian product. Throws LimitExceeded past
/// `modelLimit` partial models at any node.
ChoiceModelIndex enumerateModels(const Circuit& c, std::size_t modelLimit = 50'000'000);

/// Literal weights for arithmetic-circuit evaluation, indexed by atom.
struct WeightMap {
	std::vector<double> pos;
	std::vector<double> neg;

	/// p / 1-p on facts, 1 on derived atoms.
	static WeightMap fromLabels(std::size_t atomCount, std::span<const double> labels);
	/// Zeroes the polarity each observation excludes.
	void instantiate(const EvidenceList& evidence);
};

/// Plain weighted model count at the root.
double weightedModelCount(const Circuit& c, const WeightMap& w);

/// Corrected counts for one query under one evidence assignment.
struct Evaluation {
	double numerator   = 0.0; // corrected w*(q & e)
	double denominator = 0.0; // corrected w*(e)
	double value() const { return numerator / denominator; }
};

/// Weighted model count with the multiple-model correction: for every
/// choice w with n = |M(w)| > 1 of which some model satisfies the evidence,
/// P(w)(n-1)/n is removed once per model satisfying q and the evidence.
/// Throws ZeroProbabilityEvidence when the corrected w*(e) is zero.
Evaluation evaluate(const Circuit& c, const ChoiceModelIndex& idx, std::span<const double> labels, AtomId query,
                    const EvidenceList& evidence);

/// Forward/backward evaluation with the per-leaf normalization 1/k placed
/// on split OR nodes. The root value is sum over models S of P(w)/|M(w)|
/// restricted to the weights' support; gradients are d root / d weight.
class NormalizedCircuit {
public:
	explicit NormalizedCircuit(const Circuit& c) : c_(c), value_(c.size()), adjoint_(c.size()) {}

	double forward(const WeightMap& w);
	/// Requires a preceding forward() with the same weights.
	void backward(const WeightMap& w, std::vector<double>& dPos, std::vector<double>& dNeg);

private:
	const Circuit&      c_;
	std::vector<double> value_;
	std::vector<double> adjoint_;
};

struct PhaseTimings {
	double compileSeconds   = 0.0;
	double enumerateSeconds = 0.0;
	double evaluateSeconds  = 0.0;
};

struct CircuitOptions {
	CompileOptions compile;
	std::size_t    modelLimit = 50'000'000;
};

/// compile, enumerateModels and evaluate for every query, timed per phase.
QueryResult inferWithCircuit(const GroundProgram& g, std::span<const AtomId> queries, const EvidenceList& evidence,
                             const CircuitOptions& options = {}, PhaseTimings* timings = nullptr);

} // namespace stablelog

#endif

//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "errors.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"
#include "support/util.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace stablelog;
using testutil::groundText;
using testutil::id;
using testutil::readData;

namespace {

constexpr double kTol = 1e-9;

const char* kCoins = "0.5::a. 0.5::b. c :- a. d :- b. c :- \\+d. d :- \\+c.";

ChoiceModelIndex indexOf(const GroundProgram& g, const CompileOptions& opts = {}) {
	return enumerateModels(smooth(compile(g, opts)));
}

// (choice, model) pairs, both as bitsets, from the enumeration engine.
std::set<std::pair<Bitset, Bitset>> oracleModels(const GroundProgram& g, bool allowInconsistent = false) {
	SemanticsOptions opts;
	opts.allowInconsistent = allowInconsistent;
	std::set<std::pair<Bitset, Bitset>> out;
	forEachWorld(g, opts, [&](const WorldRecord& w) {
		for (const auto& m : w.models) out.emplace(w.choice, m);
	});
	return out;
}

std::set<std::pair<Bitset, Bitset>> circuitModels(const ChoiceModelIndex& idx) {
	std::set<std::pair<Bitset, Bitset>> out;
	for (const auto& e : idx.entries())
		for (std::size_t r = e.first; r < e.first + e.count; ++r) out.emplace(idx.choice(e), idx.model(r));
	return out;
}

std::vector<GroundProgram> validPrograms(uint64_t seed, int count, int maxFacts = 6) {
	std::mt19937_64 rng(seed);
	std::vector<GroundProgram> out;
	while (static_cast<int>(out.size()) < count) {
		gen::Shape s;
		s.facts   = 1 + gen::pick(rng, maxFacts);
		s.derived = 2 + gen::pick(rng, 6);
		s.rules   = 2 + gen::pick(rng, 10);
		s.naf     = 0.45;
		GroundProgram g = groundText(gen::programText(rng, s));
		if (reference::solve(reference::fromGround(g), {}).valid) out.push_back(std::move(g));
	}
	return out;
}

std::vector<AtomId> allAtoms(const GroundProgram& g) {
	std::vector<AtomId> out;
	for (AtomId a = 0; a < g.atomCount(); ++a) out.push_back(a);
	return out;
}

} // namespace

TEST_SUITE("circuit engine") {
	TEST_CASE("coin program models") {
		GroundProgram g = groundText(kCoins);
		auto idx = indexOf(g);
		CHECK(idx.modelCount() == 5);
		REQUIRE(idx.entries().size() == 4);
		CHECK(idx.multiModelEntries().size() == 1);
		const auto* empty = idx.find(Bitset(2));
		REQUIRE(empty != nullptr);
		CHECK(empty->count == 2);
		CHECK(circuitModels(idx) == oracleModels(g));
	}

	TEST_CASE("single fact has two models") {
		GroundProgram g = groundText("0.5::a.");
		auto idx = indexOf(g);
		CHECK(idx.modelCount() == 2);
		CHECK(idx.multiModelEntries().empty());
	}

	TEST_CASE("argumentation program model set") {
		GroundProgram g = groundText(readData("argumentation.smpl"));
		auto idx = indexOf(g);
		CHECK(circuitModels(idx) == oracleModels(g));
		CHECK_FALSE(idx.multiModelEntries().empty());
		for (std::size_t e : idx.multiModelEntries()) CHECK(idx.entries()[e].count == 2);
	}

	TEST_CASE("smokers in permissive mode keep only consistent worlds") {
		GroundProgram g = groundText(readData("smokers/t1.smpl"));
		CompileOptions co;
		co.allowInconsistent = true;
		auto idx = indexOf(g, co);
		CHECK(circuitModels(idx) == oracleModels(g, true));
		CHECK(idx.entries().size() < (std::size_t{1} << g.factCount()));
	}

	TEST_CASE("compiled circuits are decomposable, deterministic and smooth after smoothing") {
		for (const auto& g : validPrograms(61, 40)) {
			Circuit raw = compile(g);
			CHECK(raw.isDecomposable());
			CHECK(raw.isDeterministic());
			Circuit c = smooth(raw);
			CHECK(c.isDecomposable());
			CHECK(c.isDeterministic());
			CHECK(c.isSmooth());
		}
	}

	TEST_CASE("structural checks reject bad circuits") {
		Circuit c(2, 1);
		NodeId a = c.literal(0, true), na = c.literal(0, false), b = c.literal(1, true);
		c.setRoot(c.conjoin({a, na}));
		CHECK_FALSE(c.isDecomposable());

		Circuit d(2, 1);
		a = d.literal(0, true);
		b = d.literal(1, true);
		d.setRoot(d.disjoin({a, d.conjoin({a, b})}));
		CHECK(d.isDecomposable());
		CHECK_FALSE(d.isDeterministic());
		CHECK_FALSE(d.isSmooth());
	}

	TEST_CASE("smoothing a hand-built circuit") {
		Circuit c(2, 2);
		NodeId a = c.literal(0, true), nb = c.literal(1, false), na = c.literal(0, false);
		c.setRoot(c.disjoin({c.conjoin({a, nb}), na}));
		CHECK_FALSE(c.isSmooth());
		Circuit s = smooth(c);
		CHECK(s.isSmooth());
		CHECK(s.isDeterministic());
		CHECK(s.isDecomposable());
		auto idx = enumerateModels(s);
		CHECK(idx.modelCount() == 3);
		WeightMap w = WeightMap::fromLabels(2, std::vector<double>{0.3, 0.6});
		CHECK(weightedModelCount(s, w) == doctest::Approx(0.3 * 0.4 + 0.7).epsilon(kTol));
	}

	TEST_CASE("unnormalized count weighs each world by its number of models") {
		for (const auto& g : validPrograms(67, 40)) {
			Circuit c = smooth(compile(g));
			double expected = 0.0;
			forEachWorld(g, {}, [&](const WorldRecord& w) { expected += w.probability * w.models.size(); });
			CHECK(weightedModelCount(c, WeightMap::fromLabels(g.atomCount(), g.probabilities())) ==
			      doctest::Approx(expected).epsilon(kTol));
		}
	}

	TEST_CASE("programs without negative cycles need no correction") {
		std::mt19937_64 rng(71);
		int checked = 0;
		while (checked < 40) {
			gen::Shape s;
			s.facts = 1 + gen::pick(rng, 6);
			GroundProgram g = groundText(gen::programText(rng, s));
			if (hasNegativeCycle(g)) continue;
			++checked;
			Circuit c = smooth(compile(g));
			auto idx = enumerateModels(c);
			CHECK(idx.multiModelEntries().empty());
			const auto labels = g.probabilities();
			for (AtomId q = 0; q < g.atomCount(); ++q) {
				Evaluation e = evaluate(c, idx, labels, q, {});
				CHECK(e.denominator == doctest::Approx(1.0).epsilon(kTol));
				CHECK(e.value() == doctest::Approx(marginal(g, q)).epsilon(kTol));
			}
		}
	}

	TEST_CASE("circuit answers match the enumeration engine") {
		std::mt19937_64 rng(73);
		for (const auto& g : validPrograms(79, 80, 8)) {
			auto qs = allAtoms(g);
			auto expected = infer(g, qs, {});
			auto got      = inferWithCircuit(g, qs, {});
			CHECK(got.usedMultipleModels == expected.usedMultipleModels);
			for (std::size_t i = 0; i < qs.size(); ++i)
				CHECK(std::abs(got.probabilities[i].second - expected.probabilities[i].second) <= kTol);

			// One random positive or negative observation.
			const AtomId o = static_cast<AtomId>(gen::pick(rng, static_cast<int>(g.atomCount())));
			EvidenceList ev = {{o, gen::roll(rng) < 0.5}};
			auto ref = reference::solve(reference::fromGround(g), qs, {{o, ev[0].second}});
			if (ref.evidenceMass <= 1e-12) {
				CHECK_THROWS_AS(inferWithCircuit(g, qs, ev), ZeroProbabilityEvidence);
				continue;
			}
			auto cond = inferWithCircuit(g, qs, ev);
			for (std::size_t i = 0; i < qs.size(); ++i)
				CHECK(std::abs(cond.probabilities[i].second - ref.probabilities[i]) <= kTol);
		}
	}

	TEST_CASE("normalized circuit gives the same conditionals") {
		for (const auto& g : validPrograms(83, 40)) {
			Circuit c = smooth(compile(g));
			NormalizedCircuit nc(c);
			const auto labels = g.probabilities();
			WeightMap base = WeightMap::fromLabels(g.atomCount(), labels);
			CHECK(nc.forward(base) == doctest::Approx(1.0).epsilon(kTol));
			auto idx = enumerateModels(c);
			for (AtomId q = 0; q < g.atomCount(); ++q) {
				WeightMap wq = base;
				wq.instantiate({{q, true}});
				CHECK(nc.forward(wq) == doctest::Approx(evaluate(c, idx, labels, q, {}).value()).epsilon(kTol));
			}
			// Gradient: P(f) = p_f * dZ/dw+_f for facts.
			std::vector<double> dPos, dNeg;
			nc.forward(base);
			nc.backward(base, dPos, dNeg);
			for (AtomId f = 0; f < g.factCount(); ++f)
				CHECK(base.pos[f] * dPos[f] == doctest::Approx(labels[f]).epsilon(kTol));
		}
	}

	TEST_CASE("evaluation on the argumentation program") {
		GroundProgram g = groundText(readData("argumentation.smpl"));
		std::vector<AtomId> qs(g.queries().begin(), g.queries().end());
		auto expected = infer(g, qs, {});
		PhaseTimings t;
		auto got = inferWithCircuit(g, qs, {}, {}, &t);
		for (std::size_t i = 0; i < qs.size(); ++i)
			CHECK(got.probabilities[i].second == doctest::Approx(expected.probabilities[i].second).epsilon(kTol));
		CHECK(t.compileSeconds >= 0.0);
		CHECK(t.enumerateSeconds >= 0.0);
		CHECK(t.evaluateSeconds >= 0.0);
	}

	TEST_CASE("dump lists reachable nodes with the root last") {
		Circuit c(2, 2);
		NodeId a = c.literal(0, true);
		c.literal(1, false); // unreachable
		NodeId b = c.literal(1, true);
		c.setRoot(c.conjoin({a, b}));
		CHECK(c.dump() == "L 1\nL 2\nA 0 1\n");
	}

	TEST_CASE("strict compilation reports a witness") {
		GroundProgram g = groundText("0.5::a. b :- a, \\+b.");
		try {
			compile(g);
			FAIL("expected InvalidProgram");
		}
		catch (const InvalidProgram& e) {
			REQUIRE(e.witness().size() == 1);
			CHECK(e.witness()[0]);
			CHECK(e.witnessText().find('a') != std::string::npos);
		}
		CompileOptions co;
		co.allowInconsistent = true;
		auto idx = indexOf(g, co);
		CHECK(idx.entries().size() == 1);
	}

	TEST_CASE("node and model limits") {
		GroundProgram g = groundText(readData("argumentation.smpl"));
		CompileOptions co;
		co.nodeLimit = 10;
		CHECK_THROWS_AS(compile(g, co), LimitExceeded);
		Circuit c = smooth(compile(g));
		CHECK_THROWS_AS(enumerateModels(c, 10), LimitExceeded);
	}
}

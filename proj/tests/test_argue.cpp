//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "argue.hpp"
#include "errors.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"
#include "support/util.hpp"

#include <doctest.h>

using namespace stablelog;
using testutil::readData;

namespace {

constexpr double kTol = 1e-9;

struct Beliefs {
	GroundProgram       program;
	std::vector<double> values; // per argument, in graph order
};

Beliefs beliefs(const ArgGraph& graph, const EvidenceList& evidence = {}) {
	Translation t = translate(graph);
	Beliefs out{ground(normalize(t.program)), {}};
	std::vector<AtomId> qs;
	for (const auto& a : graph.arguments) qs.push_back(out.program.require(t.atoms.at(a.name)));
	for (const auto& [q, p] : inferWithCircuit(out.program, qs, evidence).probabilities) out.values.push_back(p);
	return out;
}

std::size_t indexOf(const ArgGraph& g, const std::string& name) {
	for (std::size_t i = 0; i < g.arguments.size(); ++i)
		if (g.arguments[i].name == name) return i;
	throw std::runtime_error("no argument " + name);
}

} // namespace

TEST_SUITE("argument graphs") {
	TEST_CASE("running example file") {
		ArgGraph g = parseGraph(readData("running_example.arg"));
		CHECK(g.arguments.size() == 6);
		CHECK(g.attacks.size() == 4);
		CHECK(g.supports.size() == 2);
		CHECK(g.proponents.empty());
		CHECK(g.arguments[1].prior == doctest::Approx(0.8));
		CHECK(g.supports[0].sources == std::vector<std::string>{"a5"});
	}

	TEST_CASE("empty file") {
		ArgGraph g = parseGraph("");
		CHECK(g.arguments.empty());
		CHECK(g.attacks.empty());
		CHECK(parseGraph("# nothing\n\n").arguments.empty());
	}

	TEST_CASE("malformed graphs") {
		CHECK_THROWS_AS(parseGraph("arg a1 0.5\natt a1 a9 0.5"), ParseError);
		CHECK_THROWS_AS(parseGraph("arg a1 1.5"), ParseError);
		CHECK_THROWS_AS(parseGraph("arg a1 0.5\narg a1 0.4"), ParseError);
		CHECK_THROWS_AS(parseGraph("arg a1 x"), ParseError);
		CHECK_THROWS_AS(parseGraph("arg a1"), ParseError);
		CHECK_THROWS_AS(parseGraph("attack a1 a2 0.5"), ParseError);
		CHECK_THROWS_AS(parseGraph("arg A1 0.5"), ParseError);
		CHECK_THROWS_AS(parseGraph("arg a1 0.5\nprop p 0.3 a2"), ParseError);
	}

	TEST_CASE("set edges and proponents") {
		ArgGraph g = parseGraph("arg a1 0.1\narg a4 0.2\narg a5 0.3\natt a4,a5 a1 0.6\nprop p1 0.9 a1,a4\n");
		REQUIRE(g.attacks.size() == 1);
		CHECK(g.attacks[0].sources == std::vector<std::string>{"a4", "a5"});
		REQUIRE(g.proponents.size() == 1);
		CHECK(g.proponents[0].arguments == std::vector<std::string>{"a1", "a4"});
		CHECK(g.proponents[0].trust == doctest::Approx(0.9));
	}
}

TEST_SUITE("translation") {
	TEST_CASE("single argument") {
		ArgGraph g = parseGraph("arg a 0.4");
		Translation t = translate(g);
		CHECK(toString(t.program) == "0.4::base_arg(a).\narg(a) :- base_arg(a).\nquery(arg(a)).\n");
		CHECK(beliefs(g).values[0] == doctest::Approx(0.4).epsilon(kTol));
	}

	TEST_CASE("set attack rule") {
		ArgGraph g = parseGraph("arg a1 0.1\narg a4 0.2\narg a5 0.3\natt a4,a5 a1 0.6");
		std::string text = toString(translate(g).program);
		CHECK(text.find("0.6::neg arg(a1) :- arg(a4), arg(a5).") != std::string::npos);
	}

	TEST_CASE("support rule") {
		std::string text = toString(translate(parseGraph("arg a 0.1\narg b 0.2\nsup a b 0.6")).program);
		CHECK(text.find("0.6::arg(b) :- arg(a).") != std::string::npos);
	}

	TEST_CASE("running example matches the bundled program") {
		ArgGraph graph = parseGraph(readData("running_example.arg"));
		Beliefs b = beliefs(graph);
		GroundProgram bundled = testutil::groundText(readData("argumentation.smpl"));
		auto expected = infer(bundled, bundled.queries(), {});
		for (std::size_t i = 0; i < graph.arguments.size(); ++i) {
			const AtomId q = bundled.require(parseAtom("arg(" + graph.arguments[i].name + ")"));
			CHECK(b.values[i] == doctest::Approx(testutil::probabilityOf(expected, q)).epsilon(kTol));
		}
		CHECK(b.program.factCount() == 12);
	}

	TEST_CASE("proponents against the brute-force reference") {
		ArgGraph g = parseGraph("arg a1 0.2\narg a2 0.5\natt a2 a1 0.4\nprop p 0.7 a1\nprop q 0.3 a1,a2\n");
		Beliefs b = beliefs(g);
		auto ref = reference::fromGround(b.program);
		std::vector<uint32_t> qs;
		for (const auto& a : g.arguments) qs.push_back(b.program.require(parseAtom("arg(" + a.name + ")")));
		auto expected = reference::solve(ref, qs);
		for (std::size_t i = 0; i < qs.size(); ++i) CHECK(b.values[i] == doctest::Approx(expected.probabilities[i]).epsilon(kTol));
		// Unattacked a2: prior and the proponent bias combine by noisy-or.
		CHECK(b.values[1] == doctest::Approx(1.0 - 0.5 * 0.7).epsilon(kTol));
	}

	TEST_CASE("unattacked, unsupported arguments keep their prior") {
		std::mt19937_64 rng(97);
		for (int k = 0; k < 30; ++k) {
			ArgGraph g = gen::graph(rng, 5 + gen::pick(rng, 3), 4 + gen::pick(rng, 4), 0.2);
			std::vector<bool> targeted(g.arguments.size(), false);
			for (const auto* edges : {&g.attacks, &g.supports})
				for (const auto& e : *edges) targeted[indexOf(g, e.target)] = true;
			Beliefs b;
			try {
				b = beliefs(g);
			}
			catch (const InvalidProgram&) {
				continue;
			}
			for (std::size_t i = 0; i < g.arguments.size(); ++i)
				if (!targeted[i]) CHECK(b.values[i] == doctest::Approx(g.arguments[i].prior).epsilon(kTol));
		}
	}
}

TEST_SUITE("argumentation properties") {
	// Removing an edge and comparing the target's marginal.
	void checkRemoval(const ArgGraph& g, bool attack, std::size_t edge, int& checked) {
		ArgGraph smaller = g;
		auto& list = attack ? smaller.attacks : smaller.supports;
		const std::string target = list[edge].target;
		list.erase(list.begin() + static_cast<std::ptrdiff_t>(edge));
		Beliefs before, after;
		try {
			before = beliefs(g);
			after  = beliefs(smaller);
		}
		catch (const InvalidProgram&) {
			return;
		}
		++checked;
		const std::size_t t = indexOf(g, target);
		CAPTURE(toString(translate(g).program));
		CAPTURE(target);
		if (attack) CHECK(after.values[t] >= before.values[t] - kTol);
		else CHECK(after.values[t] <= before.values[t] + kTol);
	}

	TEST_CASE("removing edges on tree-shaped graphs") {
		std::mt19937_64 rng(101);
		int checked = 0;
		for (int k = 0; k < 40; ++k) {
			ArgGraph g = gen::tree(rng, 4 + gen::pick(rng, 6), 0.4);
			for (std::size_t e = 0; e < g.attacks.size(); ++e) checkRemoval(g, true, e, checked);
			for (std::size_t e = 0; e < g.supports.size(); ++e) checkRemoval(g, false, e, checked);
		}
		CHECK(checked > 100);
	}

	TEST_CASE("removing edges on general graphs") {
		std::mt19937_64 rng(103);
		int checked = 0;
		for (int k = 0; k < 40; ++k) {
			ArgGraph g = gen::graph(rng, 4 + gen::pick(rng, 3), 3 + gen::pick(rng, 5), 0.2);
			for (std::size_t e = 0; e < g.attacks.size(); ++e) checkRemoval(g, true, e, checked);
			for (std::size_t e = 0; e < g.supports.size(); ++e) checkRemoval(g, false, e, checked);
		}
		CHECK(checked > 50);
	}
}

//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "errors.hpp"
#include "support/generators.hpp"
#include "support/util.hpp"

#include <doctest.h>

#include <algorithm>

using namespace stablelog;
using testutil::groundText;
using testutil::readData;

TEST_SUITE("grounder") {
	TEST_CASE("smokers benchmarks fact counts") {
		const std::pair<const char*, std::size_t> expected[] = {
			{"smokers/t1.smpl", 10}, {"smokers/t2.smpl", 14}, {"smokers/t3.smpl", 18},
			{"smokers/t4.smpl", 19}, {"smokers/t5.smpl", 20}, {"smokers/t6.smpl", 21},
		};
		for (const auto& [file, facts] : expected) {
			CAPTURE(file);
			GroundProgram g = groundText(readData(file));
			CHECK(g.factCount() == facts);
			CHECK(hasNegativeCycle(g));
		}
	}

	TEST_CASE("propositional program keeps its rules") {
		const char* text = "0.5::a. 0.5::b. c :- a. d :- b. c :- \\+d. d :- \\+c.";
		GroundProgram g = groundText(text);
		CHECK(g.factCount() == 2);
		CHECK(g.atomCount() == 4);
		REQUIRE(g.rules().size() == 4);
		std::vector<std::string> rules;
		for (const auto& r : g.rules()) {
			std::string s = toString(g.atom(r.head)) + ":";
			for (auto b : r.pos) s += "+" + toString(g.atom(b));
			for (auto b : r.neg) s += "-" + toString(g.atom(b));
			rules.push_back(s);
		}
		std::sort(rules.begin(), rules.end());
		CHECK(rules == std::vector<std::string>{"c:+a", "c:-d", "d:+b", "d:-c"});
	}

	TEST_CASE("facts come first, in source order") {
		GroundProgram g = groundText("q :- p. 0.2::z. 0.3::y. p :- z.");
		REQUIRE(g.factCount() == 2);
		CHECK(toString(g.atom(0)) == "z");
		CHECK(toString(g.atom(1)) == "y");
		for (AtomId a = 0; a < g.atomCount(); ++a) CHECK(g.isFact(a) == (a < 2));
	}

	TEST_CASE("atom ids are stable across runs") {
		std::string text = readData("smokers/t6.smpl");
		CHECK(groundText(text).toString() == groundText(text).toString());
	}

	TEST_CASE("relevance pruning follows queries and evidence") {
		const char* base = "0.5::a. 0.5::b. 0.5::x. c :- a. d :- b. y :- x. ";
		GroundProgram all = groundText(base);
		CHECK(all.factCount() == 3);
		GroundProgram q = groundText(std::string(base) + "query(c).");
		CHECK(q.factCount() == 1);
		CHECK(q.atomCount() == 2);
		GroundProgram qe = groundText(std::string(base) + "query(c). evidence(y, true).");
		CHECK(qe.factCount() == 2);
		CHECK(qe.find(parseAtom("y")).has_value());
		CHECK_FALSE(qe.find(parseAtom("d")).has_value());

		GroundOptions opts;
		opts.extraSeeds.push_back(parseAtom("d"));
		GroundProgram seeded = groundText(std::string(base) + "query(c).", opts);
		CHECK(seeded.factCount() == 2);
	}

	TEST_CASE("non-ground queries select all derivable matches") {
		GroundProgram g = groundText("e(1,2). e(2,3). p(X,Y) :- e(X,Y). p(X,Z) :- e(X,Y), p(Y,Z). query(p(1,X)).");
		REQUIRE(g.queries().size() == 2);
		std::vector<std::string> names;
		for (auto q : g.queries()) names.push_back(toString(g.atom(q)));
		std::sort(names.begin(), names.end());
		CHECK(names == std::vector<std::string>{"p(1,2)", "p(1,3)"});
	}

	TEST_CASE("annotated rules ground lazily") {
		GroundProgram g = groundText("person(1). person(2). 0.3::stress(X) :- person(X). query(stress(X)).");
		CHECK(g.factCount() == 2);
		CHECK(g.queries().size() == 2);
	}

	TEST_CASE("queried atoms that are never derivable still get ids") {
		GroundProgram g = groundText("0.5::a. query(b).");
		REQUIRE(g.queries().size() == 1);
		CHECK(toString(g.atom(g.queries()[0])) == "b");
	}

	TEST_CASE("atom limit") {
		GroundOptions opts;
		opts.atomLimit = 20;
		std::string text;
		for (int i = 0; i < 10; ++i) text += "n(" + std::to_string(i) + "). ";
		text += "pair(X, Y) :- n(X), n(Y).";
		CHECK_THROWS_AS(groundText(text, opts), LimitExceeded);
		opts.atomLimit = 1000;
		CHECK(groundText(text, opts).atomCount() == 110);
	}

	TEST_CASE("negative cycles") {
		CHECK(hasNegativeCycle(groundText("0.5::a. 0.5::b. c :- a. d :- b. c :- \\+d. d :- \\+c.")));
		CHECK_FALSE(hasNegativeCycle(groundText("a :- b. b :- a.")));
		CHECK(hasNegativeCycle(groundText(readData("argumentation.smpl"))));
		CHECK_FALSE(hasNegativeCycle(groundText("0.3::a. b :- \\+a. c :- b, \\+d. d :- a.")));
		CHECK(hasNegativeCycle(groundText("a :- \\+a.")));
		CHECK(hasNegativeCycle(groundText("a :- b. b :- \\+c. c :- a.")));
	}

	TEST_CASE("rewritten argumentation program has the attack cycle") {
		GroundProgram g = groundText(readData("argumentation.smpl"));
		DependencyGraph dg(g);
		auto comp = dg.components();
		const AtomId a1 = testutil::id(g, "arg(a1)");
		const AtomId a2 = testutil::id(g, "arg(a2)");
		const AtomId n1 = g.require(Atom("arg_neg", {Term::symbol("a1")}));
		const AtomId n2 = g.require(Atom("arg_neg", {Term::symbol("a2")}));
		CHECK(comp[a1] == comp[a2]);
		CHECK(comp[a1] == comp[n1]);
		CHECK(comp[a1] == comp[n2]);
		bool negativeInto = false;
		for (const auto& e : dg.out[n1]) negativeInto = negativeInto || (e.to == a1 && e.negative);
		CHECK(negativeInto);
	}

	TEST_CASE("dependency edges") {
		GroundProgram g = groundText("a :- b, \\+c. b. c :- b.");
		DependencyGraph dg(g);
		const AtomId a = testutil::id(g, "a"), b = testutil::id(g, "b"), c = testutil::id(g, "c");
		auto has = [&](AtomId from, AtomId to, bool neg) {
			for (const auto& e : dg.out[from])
				if (e.to == to && e.negative == neg) return true;
			return false;
		};
		CHECK(has(b, a, false));
		CHECK(has(c, a, true));
		CHECK(has(b, c, false));
		CHECK_FALSE(has(a, b, false));
	}

	TEST_CASE("generated programs: every rule atom is in the table") {
		std::mt19937_64 rng(17);
		for (int i = 0; i < 100; ++i) {
			GroundProgram g = groundText(gen::programText(rng, {}));
			for (const auto& r : g.rules()) {
				CHECK(r.head < g.atomCount());
				CHECK_FALSE(g.isFact(r.head));
				for (auto b : r.pos) CHECK(b < g.atomCount());
				for (auto b : r.neg) CHECK(b < g.atomCount());
			}
		}
	}
}

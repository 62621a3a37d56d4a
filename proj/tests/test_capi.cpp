//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stablelog/stablelog.h>

#include <cmath>
#include <cstring>
#include <string>

namespace {

const char* kCoins = "0.5::a. 0.5::b. c :- a. d :- b. c :- \\+d. d :- \\+c. query(c). query(d).";

struct Owned {
	sl_program*        program = nullptr;
	sl_ground_program* ground  = nullptr;
	sl_inference*      result  = nullptr;
	~Owned() {
		sl_inference_free(result);
		sl_ground_free(ground);
		sl_program_free(program);
	}
};

std::string take(char* s) {
	std::string out = s ? s : "";
	sl_string_free(s);
	return out;
}

} // namespace

TEST_CASE("version string") { CHECK(std::strlen(sl_version()) > 0); }

TEST_CASE("parse, ground, infer") {
	Owned o;
	REQUIRE(sl_program_parse(kCoins, &o.program) == SL_OK);
	REQUIRE(sl_ground(o.program, nullptr, &o.ground) == SL_OK);
	CHECK(sl_ground_fact_count(o.ground) == 2);
	CHECK(sl_ground_atom_count(o.ground) == 4);
	CHECK(sl_ground_has_negative_cycle(o.ground) == 1);
	for (sl_engine e : {SL_ENGINE_ORACLE, SL_ENGINE_CIRCUIT, SL_ENGINE_AUTO}) {
		sl_infer_options opts;
		sl_infer_options_init(&opts);
		opts.engine = e;
		sl_inference* r = nullptr;
		REQUIRE(sl_infer(o.ground, &opts, &r) == SL_OK);
		REQUIRE(sl_inference_count(r) == 2);
		CHECK(std::string(sl_inference_atom(r, 0)) == "c");
		CHECK(std::abs(sl_inference_probability(r, 0) - 0.625) <= 1e-9);
		CHECK(std::abs(sl_inference_probability(r, 1) - 0.625) <= 1e-9);
		// Negative cycle and few facts: auto picks the enumeration engine.
		CHECK(sl_inference_engine(r) == (e == SL_ENGINE_CIRCUIT ? SL_ENGINE_CIRCUIT : SL_ENGINE_ORACLE));
		sl_inference_free(r);
	}
}

TEST_CASE("auto engine on stratified programs") {
	Owned o;
	REQUIRE(sl_program_parse("0.3::a. b :- \\+a. query(b).", &o.program) == SL_OK);
	REQUIRE(sl_ground(o.program, nullptr, &o.ground) == SL_OK);
	CHECK(sl_ground_has_negative_cycle(o.ground) == 0);
	REQUIRE(sl_infer(o.ground, nullptr, &o.result) == SL_OK);
	CHECK(sl_inference_engine(o.result) == SL_ENGINE_CIRCUIT);
	CHECK(std::abs(sl_inference_probability(o.result, 0) - 0.7) <= 1e-9);
}

TEST_CASE("evidence") {
	Owned o;
	REQUIRE(sl_program_parse(kCoins, &o.program) == SL_OK);
	REQUIRE(sl_program_add_evidence(o.program, "a", 0) == SL_OK);
	REQUIRE(sl_program_add_evidence(o.program, "b", 0) == SL_OK);
	REQUIRE(sl_ground(o.program, nullptr, &o.ground) == SL_OK);
	REQUIRE(sl_infer(o.ground, nullptr, &o.result) == SL_OK);
	CHECK(std::abs(sl_inference_probability(o.result, 0) - 0.5) <= 1e-9);
	CHECK(std::string(sl_inference_evidence(o.result)).find("\\+a") != std::string::npos);
}

TEST_CASE("error reporting") {
	sl_program* p = nullptr;
	CHECK(sl_program_parse("a :- .", &p) == SL_ERR_PARSE);
	CHECK(p == nullptr);
	CHECK(std::strlen(sl_last_error()) > 0);
	int line = 0, col = 0;
	sl_last_error_position(&line, &col);
	CHECK(line == 1);

	Owned o;
	REQUIRE(sl_program_parse("0.5::a. b :- \\+b. query(b).", &o.program) == SL_OK);
	REQUIRE(sl_ground(o.program, nullptr, &o.ground) == SL_OK);
	CHECK(sl_infer(o.ground, nullptr, &o.result) == SL_ERR_INVALID_PROGRAM);
	CHECK(std::strlen(sl_last_witness()) > 0);

	Owned z;
	REQUIRE(sl_program_parse("0.5::a. b :- a. query(b). evidence(b). evidence(a, false).", &z.program) == SL_OK);
	REQUIRE(sl_ground(z.program, nullptr, &z.ground) == SL_OK);
	CHECK(sl_infer(z.ground, nullptr, &z.result) == SL_ERR_ZERO_EVIDENCE);

	CHECK(sl_program_parse(nullptr, &p) != SL_OK);
}

TEST_CASE("argument graphs") {
	Owned o;
	REQUIRE(sl_program_from_graph("arg a 0.4\narg b 0.5\natt b a 0.5\n", &o.program) == SL_OK);
	char* text = nullptr;
	REQUIRE(sl_program_print(o.program, &text) == SL_OK);
	CHECK(take(text).find("0.5::neg arg(a) :- arg(b).") != std::string::npos);
	REQUIRE(sl_ground(o.program, nullptr, &o.ground) == SL_OK);
	REQUIRE(sl_infer(o.ground, nullptr, &o.result) == SL_OK);
	CHECK(std::abs(sl_inference_probability(o.result, 0) - 0.4 * (1 - 0.5 * 0.5)) <= 1e-9);
	sl_program* bad = nullptr;
	CHECK(sl_program_from_graph("att a b 0.5", &bad) == SL_ERR_PARSE);
}

TEST_CASE("sampling and learning") {
	Owned truth;
	REQUIRE(sl_program_parse("0.7::f. g :- f. query(g).", &truth.program) == SL_OK);
	REQUIRE(sl_ground(truth.program, nullptr, &truth.ground) == SL_OK);
	char* data = nullptr;
	REQUIRE(sl_sample(truth.ground, 500, 3, nullptr, 0, &data) == SL_OK);
	std::string dataset = take(data);
	char* again = nullptr;
	REQUIRE(sl_sample(truth.ground, 500, 3, nullptr, 0, &again) == SL_OK);
	CHECK(take(again) == dataset);
	CHECK(dataset.find('f') == std::string::npos);

	sl_program* model = nullptr;
	REQUIRE(sl_program_parse("t(_)::f. g :- f.", &model) == SL_OK);
	sl_learn_result* r = nullptr;
	REQUIRE(sl_learn(model, dataset.c_str(), nullptr, &r) == SL_OK);
	CHECK(sl_learn_trace_length(r) == sl_learn_iterations(r) + 1);
	for (std::size_t i = 1; i < sl_learn_trace_length(r); ++i) CHECK(sl_learn_trace(r, i) >= sl_learn_trace(r, i - 1) - 1e-9);
	double mae = 1.0;
	REQUIRE(sl_learn_mae(r, truth.program, &mae) == SL_OK);
	CHECK(mae <= 0.05);
	CHECK(std::string(sl_learn_program(r)).find("::f.") != std::string::npos);
	sl_learn_free(r);

	sl_learn_options opts;
	sl_learn_options_init(&opts);
	opts.fully_observed = 1;
	CHECK(sl_learn(model, dataset.c_str(), &opts, &r) == SL_ERR_COVERAGE);
	sl_program_free(model);
}

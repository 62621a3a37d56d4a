//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
// Command-line front end: infer | learn | sample | argue.

#include "stablelog/stablelog.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode {
	kOk           = 0,
	kParseError   = 1,
	kInvalid      = 2,
	kZeroEvidence = 3,
	kOtherError   = 4,
};

struct Failure {
	int         code;
	std::string message;
};

int exitCodeFor(sl_status s) {
	switch (s) {
		case SL_OK: return kOk;
		case SL_ERR_PARSE: return kParseError;
		case SL_ERR_INVALID_PROGRAM: return kInvalid;
		case SL_ERR_ZERO_EVIDENCE: return kZeroEvidence;
		default: return kOtherError;
	}
}

void check(sl_status s) {
	if (s == SL_OK) return;
	std::string msg = sl_last_error();
	if (s == SL_ERR_INVALID_PROGRAM) msg += "\nwitness total choice: " + std::string(sl_last_witness());
	throw Failure{exitCodeFor(s), msg};
}

std::string readFile(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw Failure{kOtherError, "cannot read " + path};
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void writeFile(const std::string& path, const std::string& text) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw Failure{kOtherError, "cannot write " + path};
	out << text;
}

std::string takeString(char* s) {
	std::string out = s ? s : "";
	sl_string_free(s);
	return out;
}

struct ProgramDeleter {
	void operator()(sl_program* p) const { sl_program_free(p); }
};
struct GroundDeleter {
	void operator()(sl_ground_program* g) const { sl_ground_free(g); }
};
struct InferenceDeleter {
	void operator()(sl_inference* r) const { sl_inference_free(r); }
};
struct LearnDeleter {
	void operator()(sl_learn_result* r) const { sl_learn_free(r); }
};
using ProgramPtr   = std::unique_ptr<sl_program, ProgramDeleter>;
using GroundPtr    = std::unique_ptr<sl_ground_program, GroundDeleter>;
using InferencePtr = std::unique_ptr<sl_inference, InferenceDeleter>;
using LearnPtr     = std::unique_ptr<sl_learn_result, LearnDeleter>;

ProgramPtr parseProgram(const std::string& path) {
	sl_program* p = nullptr;
	sl_status s = sl_program_parse(readFile(path).c_str(), &p);
	if (s == SL_ERR_PARSE) throw Failure{kParseError, path + ":" + sl_last_error()};
	check(s);
	return ProgramPtr(p);
}

GroundPtr groundProgram(const sl_program* p) {
	sl_ground_program* g = nullptr;
	check(sl_ground(p, nullptr, &g));
	return GroundPtr(g);
}

std::string fixed(double v, int decimals) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
	return buf;
}

std::string exact(double v) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

struct InferConfig {
	std::string              engine = "auto";
	std::size_t              cap    = 24;
	std::vector<std::string> evidence;
	std::string              format = "plain";
	bool                     allowInconsistent = false;
	bool                     noTimings         = false;
	std::string              dumpCircuit;
};

void addInferOptions(CLI::App* cmd, InferConfig& c) {
	cmd->add_option("--engine", c.engine, "oracle, circuit or auto")
		->check(CLI::IsMember({"oracle", "circuit", "auto"}))
		->capture_default_str();
	cmd->add_option("--cap", c.cap, "largest fact count the oracle accepts")->capture_default_str();
	cmd->add_option("--evidence", c.evidence, "observation atom=true|false (repeatable)");
	cmd->add_option("--format", c.format, "plain or structured")
		->check(CLI::IsMember({"plain", "structured"}))
		->capture_default_str();
	cmd->add_flag("--allow-inconsistent", c.allowInconsistent,
	              "drop worlds without stable models and renormalize instead of failing");
	cmd->add_flag("--no-timings", c.noTimings, "omit phase timings from structured output");
	cmd->add_option("--dump-circuit", c.dumpCircuit, "write the compiled circuit to this file");
}

void applyEvidence(sl_program* p, const std::vector<std::string>& items) {
	for (const auto& item : items) {
		auto eq = item.rfind('=');
		std::string atom = eq == std::string::npos ? item : item.substr(0, eq);
		std::string val  = eq == std::string::npos ? "true" : item.substr(eq + 1);
		if (val != "true" && val != "false")
			throw Failure{kOtherError, "--evidence expects atom=true or atom=false, got '" + item + "'"};
		check(sl_program_add_evidence(p, atom.c_str(), val == "true"));
	}
}

int runInfer(sl_program* p, const InferConfig& c) {
	applyEvidence(p, c.evidence);
	GroundPtr g = groundProgram(p);

	if (!c.dumpCircuit.empty()) {
		char* text = nullptr;
		check(sl_circuit_dump(g.get(), c.allowInconsistent, &text));
		writeFile(c.dumpCircuit, takeString(text));
	}

	sl_infer_options opts;
	sl_infer_options_init(&opts);
	opts.engine             = c.engine == "oracle" ? SL_ENGINE_ORACLE : c.engine == "circuit" ? SL_ENGINE_CIRCUIT : SL_ENGINE_AUTO;
	opts.fact_cap           = c.cap;
	opts.allow_inconsistent = c.allowInconsistent;
	sl_inference* raw = nullptr;
	check(sl_infer(g.get(), &opts, &raw));
	InferencePtr r(raw);

	const std::string evidence = sl_inference_evidence(r.get());
	const std::size_t n        = sl_inference_count(r.get());
	if (c.format == "plain") {
		for (std::size_t i = 0; i < n; ++i) {
			std::cout << "P(" << sl_inference_atom(r.get(), i);
			if (!evidence.empty()) std::cout << " | " << evidence;
			std::cout << ") = " << fixed(sl_inference_probability(r.get(), i), 6) << '\n';
		}
		return kOk;
	}

	const bool circuit = sl_inference_engine(r.get()) == SL_ENGINE_CIRCUIT;
	std::cout << "engine=" << (circuit ? "circuit" : "oracle") << '\n';
	std::cout << "facts=" << sl_ground_fact_count(g.get()) << '\n';
	std::cout << "atoms=" << sl_ground_atom_count(g.get()) << '\n';
	std::cout << "negative_cycle=" << (sl_ground_has_negative_cycle(g.get()) ? "true" : "false") << '\n';
	std::cout << "evidence=" << evidence << '\n';
	for (std::size_t i = 0; i < n; ++i)
		std::cout << "result\tatom=" << sl_inference_atom(r.get(), i)
		          << "\tprobability=" << exact(sl_inference_probability(r.get(), i)) << '\n';
	if (!c.noTimings) {
		double tc = 0, te = 0, tv = 0;
		sl_inference_timings(r.get(), &tc, &te, &tv);
		std::cout << "timing\tcompile=" << exact(tc) << "\tenumerate=" << exact(te) << "\tevaluate=" << exact(tv) << '\n';
	}
	return kOk;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Probabilistic logic programs under the stable model semantics"};
	app.require_subcommand(1);

	InferConfig inferCfg;
	std::string inferPath;
	auto* infer = app.add_subcommand("infer", "marginal or conditional probabilities of the declared queries");
	infer->add_option("program", inferPath, "program file")->required();
	addInferOptions(infer, inferCfg);

	InferConfig argueCfg;
	std::string arguePath, emitPath;
	auto* argue = app.add_subcommand("argue", "translate an argument graph and infer argument beliefs");
	argue->add_option("graph", arguePath, ".arg file")->required();
	argue->add_option("--emit-program", emitPath, "write the translated program to this file");
	addInferOptions(argue, argueCfg);

	std::string samplePath, sampleOut;
	std::size_t sampleCount = 100;
	uint64_t    seed        = 0;
	std::vector<std::string> observe;
	auto* sampleCmd = app.add_subcommand("sample", "draw interpretations from a program");
	sampleCmd->add_option("program", samplePath, "program file")->required();
	sampleCmd->add_option("-n,--count", sampleCount, "number of interpretations")->capture_default_str();
	sampleCmd->add_option("--seed", seed, "random seed")->capture_default_str();
	sampleCmd->add_option("--observe", observe, "observable predicate (repeatable; default: query atoms)");
	sampleCmd->add_option("-o,--output", sampleOut, "dataset file (default: stdout)");

	std::string learnPath, dataPath, learnOut, referencePath, learnFormat = "plain";
	std::size_t maxIter = 100;
	double      tol     = 1e-4;
	bool        fullyObserved = false, learnPermissive = false;
	auto* learn = app.add_subcommand("learn", "fit learnable labels t(...) to a dataset");
	learn->add_option("program", learnPath, "program with learnable labels")->required();
	learn->add_option("dataset", dataPath, "one interpretation per line")->required();
	learn->add_option("--max-iter", maxIter, "EM iteration bound")->capture_default_str();
	learn->add_option("--tol", tol, "stop when no label moves more than this")->capture_default_str();
	learn->add_option("-o,--output", learnOut, "fitted program file (default: stdout)");
	learn->add_option("--reference", referencePath, "program with the true labels; prints the mean absolute error");
	learn->add_option("--format", learnFormat, "plain or structured")
		->check(CLI::IsMember({"plain", "structured"}))
		->capture_default_str();
	learn->add_flag("--fully-observed", fullyObserved, "relative frequencies instead of EM");
	learn->add_flag("--allow-inconsistent", learnPermissive, "drop worlds without stable models");

	CLI11_PARSE(app, argc, argv);

	try {
		if (*infer) {
			ProgramPtr p = parseProgram(inferPath);
			return runInfer(p.get(), inferCfg);
		}
		if (*argue) {
			sl_program* raw = nullptr;
			sl_status s = sl_program_from_graph(readFile(arguePath).c_str(), &raw);
			if (s == SL_ERR_PARSE) throw Failure{kParseError, arguePath + ":" + sl_last_error()};
			check(s);
			ProgramPtr p(raw);
			if (!emitPath.empty()) {
				char* text = nullptr;
				check(sl_program_print(p.get(), &text));
				writeFile(emitPath, takeString(text));
			}
			return runInfer(p.get(), argueCfg);
		}
		if (*sampleCmd) {
			ProgramPtr p = parseProgram(samplePath);
			GroundPtr  g = groundProgram(p.get());
			std::vector<const char*> preds;
			for (const auto& o : observe) preds.push_back(o.c_str());
			char* text = nullptr;
			check(sl_sample(g.get(), sampleCount, seed, preds.data(), preds.size(), &text));
			std::string data = takeString(text);
			if (sampleOut.empty()) std::cout << data;
			else writeFile(sampleOut, data);
			return kOk;
		}
		if (*learn) {
			ProgramPtr p = parseProgram(learnPath);
			sl_learn_options opts;
			sl_learn_options_init(&opts);
			opts.max_iter           = maxIter;
			opts.tol                = tol;
			opts.fully_observed     = fullyObserved;
			opts.allow_inconsistent = learnPermissive;
			sl_learn_result* raw = nullptr;
			check(sl_learn(p.get(), readFile(dataPath).c_str(), &opts, &raw));
			LearnPtr r(raw);

			const bool structured = learnFormat == "structured";
			for (std::size_t i = 0; i < sl_learn_trace_length(r.get()); ++i) {
				if (structured)
					std::cout << "trace\titeration=" << i << "\tloglik=" << exact(sl_learn_trace(r.get(), i)) << '\n';
				else
					std::cout << "iteration " << i << " log-likelihood " << fixed(sl_learn_trace(r.get(), i), 6) << '\n';
			}
			if (!referencePath.empty()) {
				ProgramPtr ref = parseProgram(referencePath);
				double mae = 0.0;
				check(sl_learn_mae(r.get(), ref.get(), &mae));
				if (structured) std::cout << "mae=" << exact(mae) << '\n';
				else std::cout << "MAE = " << fixed(mae, 6) << '\n';
			}
			std::string program = sl_learn_program(r.get());
			if (learnOut.empty()) std::cout << program;
			else writeFile(learnOut, program);
			return kOk;
		}
	}
	catch (const Failure& f) {
		std::cerr << "error: " << f.message << '\n';
		return f.code;
	}
	return kOk;
}

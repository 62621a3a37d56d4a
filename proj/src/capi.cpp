//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "stablelog/stablelog.h"

#include "argue.hpp"
#include "circuit.hpp"
#include "errors.hpp"
#include "learn.hpp"
#include "parser.hpp"
#include "transform.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <set>

using namespace stablelog;

struct sl_program {
	Program program;
};

struct sl_ground_program {
	GroundProgram ground;
};

struct sl_inference {
	std::vector<std::string> atoms;
	std::vector<double>      probabilities;
	std::string              evidence;
	sl_engine                engine = SL_ENGINE_ORACLE;
	PhaseTimings             timings;
};

struct sl_learn_result {
	GroundProgram       ground;
	std::vector<double> probabilities;
	std::vector<double> trace;
	std::size_t         iterations = 0;
	std::string         program;
};

namespace {

thread_local std::string tlsError;
thread_local std::string tlsWitness;
thread_local int         tlsLine   = 0;
thread_local int         tlsColumn = 0;

void clearError() {
	tlsError.clear();
	tlsWitness.clear();
	tlsLine = tlsColumn = 0;
}

// Runs `f`, translating exceptions into status codes.
template <class F>
sl_status guarded(F&& f) {
	clearError();
	try {
		f();
		return SL_OK;
	}
	catch (const ParseError& e) {
		tlsError  = e.what();
		tlsLine   = e.line();
		tlsColumn = e.column();
		return SL_ERR_PARSE;
	}
	catch (const InvalidProgram& e) {
		tlsError   = e.what();
		tlsWitness = e.witnessText();
		return SL_ERR_INVALID_PROGRAM;
	}
	catch (const ZeroProbabilityEvidence& e) {
		tlsError = e.what();
		return SL_ERR_ZERO_EVIDENCE;
	}
	catch (const UnknownAtom& e) {
		tlsError = e.what();
		return SL_ERR_UNKNOWN_ATOM;
	}
	catch (const CoverageError& e) {
		tlsError = e.what();
		return SL_ERR_COVERAGE;
	}
	catch (const LimitExceeded& e) {
		tlsError = e.what();
		return SL_ERR_LIMIT;
	}
	catch (const std::bad_alloc&) {
		tlsError = "out of memory";
		return SL_ERR_LIMIT;
	}
	catch (const std::invalid_argument& e) {
		tlsError = e.what();
		return SL_ERR_ARGUMENT;
	}
	catch (const std::exception& e) {
		tlsError = e.what();
		return SL_ERR_INTERNAL;
	}
	catch (...) {
		tlsError = "unknown error";
		return SL_ERR_INTERNAL;
	}
}

void require(bool ok, const char* what) {
	if (!ok) throw std::invalid_argument(what);
}

char* duplicate(const std::string& s) {
	char* out = static_cast<char*>(std::malloc(s.size() + 1));
	if (!out) throw std::bad_alloc();
	std::memcpy(out, s.c_str(), s.size() + 1);
	return out;
}

std::string describeEvidence(const GroundProgram& g) {
	std::string out;
	for (const auto& [a, v] : g.evidence()) {
		if (!out.empty()) out += ", ";
		if (!v) out += "\\+";
		out += toString(g.atom(a));
	}
	return out;
}

} // namespace

extern "C" {

const char* sl_last_error(void) { return tlsError.c_str(); }
const char* sl_last_witness(void) { return tlsWitness.c_str(); }

void sl_last_error_position(int* line, int* column) {
	if (line) *line = tlsLine;
	if (column) *column = tlsColumn;
}

const char* sl_version(void) { return "1.0.0"; }

void sl_string_free(char* s) { std::free(s); }

// ---- programs ---------------------------------------------------------------

sl_status sl_program_parse(const char* text, sl_program** out) {
	return guarded([&] {
		require(text && out, "null argument");
		*out = new sl_program{parseProgram(text)};
	});
}

sl_status sl_program_from_graph(const char* text, sl_program** out) {
	return guarded([&] {
		require(text && out, "null argument");
		*out = new sl_program{translate(parseGraph(text)).program};
	});
}

void sl_program_free(sl_program* p) { delete p; }

sl_status sl_program_print(const sl_program* p, char** out) {
	return guarded([&] {
		require(p && out, "null argument");
		*out = duplicate(toString(p->program));
	});
}

sl_status sl_program_add_evidence(sl_program* p, const char* atom, int value) {
	return guarded([&] {
		require(p && atom, "null argument");
		Atom a = parseAtom(atom);
		if (!a.isGround()) throw ParseError("evidence atom must be ground", 1, 1);
		p->program.evidence.push_back({std::move(a), value != 0});
	});
}

sl_status sl_program_add_query(sl_program* p, const char* atom) {
	return guarded([&] {
		require(p && atom, "null argument");
		p->program.queries.push_back(parseAtom(atom));
	});
}

// ---- grounding --------------------------------------------------------------

sl_status sl_ground(const sl_program* p, const sl_ground_options* opts, sl_ground_program** out) {
	return guarded([&] {
		require(p && out, "null argument");
		GroundOptions go;
		if (opts) {
			if (opts->atom_limit) go.atomLimit = opts->atom_limit;
			go.keepAll = opts->keep_all != 0;
			for (std::size_t i = 0; i < opts->extra_seed_count; ++i) go.extraSeeds.push_back(parseAtom(opts->extra_seeds[i]));
		}
		*out = new sl_ground_program{ground(normalize(p->program), go)};
	});
}

void sl_ground_free(sl_ground_program* g) { delete g; }
size_t sl_ground_fact_count(const sl_ground_program* g) { return g ? g->ground.factCount() : 0; }
size_t sl_ground_atom_count(const sl_ground_program* g) { return g ? g->ground.atomCount() : 0; }
int sl_ground_has_negative_cycle(const sl_ground_program* g) { return g && hasNegativeCycle(g->ground) ? 1 : 0; }

sl_status sl_ground_print(const sl_ground_program* g, char** out) {
	return guarded([&] {
		require(g && out, "null argument");
		*out = duplicate(g->ground.toString());
	});
}

// ---- inference --------------------------------------------------------------

void sl_infer_options_init(sl_infer_options* opts) {
	if (!opts) return;
	opts->engine             = SL_ENGINE_AUTO;
	opts->fact_cap           = 24;
	opts->allow_inconsistent = 0;
}

sl_status sl_infer(const sl_ground_program* gp, const sl_infer_options* opts, sl_inference** out) {
	return guarded([&] {
		require(gp && out, "null argument");
		sl_infer_options o;
		sl_infer_options_init(&o);
		if (opts) o = *opts;
		if (!o.fact_cap) o.fact_cap = 24;
		const GroundProgram& g = gp->ground;

		sl_engine engine = o.engine;
		if (engine == SL_ENGINE_AUTO)
			engine = !hasNegativeCycle(g) || g.factCount() > o.fact_cap ? SL_ENGINE_CIRCUIT : SL_ENGINE_ORACLE;

		auto r = std::make_unique<sl_inference>();
		r->engine   = engine;
		r->evidence = describeEvidence(g);
		QueryResult res;
		if (engine == SL_ENGINE_ORACLE) {
			SemanticsOptions so;
			so.factCap           = o.fact_cap;
			so.allowInconsistent = o.allow_inconsistent != 0;
			res = infer(g, g.queries(), g.evidence(), so);
		}
		else {
			CircuitOptions co;
			co.compile.allowInconsistent = o.allow_inconsistent != 0;
			res = inferWithCircuit(g, g.queries(), g.evidence(), co, &r->timings);
		}
		for (const auto& [a, p] : res.probabilities) {
			r->atoms.push_back(toString(g.atom(a)));
			r->probabilities.push_back(p);
		}
		*out = r.release();
	});
}

void sl_inference_free(sl_inference* r) { delete r; }
size_t sl_inference_count(const sl_inference* r) { return r ? r->atoms.size() : 0; }
const char* sl_inference_atom(const sl_inference* r, size_t i) {
	return r && i < r->atoms.size() ? r->atoms[i].c_str() : "";
}
double sl_inference_probability(const sl_inference* r, size_t i) {
	return r && i < r->probabilities.size() ? r->probabilities[i] : 0.0;
}
sl_engine sl_inference_engine(const sl_inference* r) { return r ? r->engine : SL_ENGINE_AUTO; }
const char* sl_inference_evidence(const sl_inference* r) { return r ? r->evidence.c_str() : ""; }

void sl_inference_timings(const sl_inference* r, double* compile, double* enumerate, double* evaluate) {
	PhaseTimings t = r ? r->timings : PhaseTimings{};
	if (compile) *compile = t.compileSeconds;
	if (enumerate) *enumerate = t.enumerateSeconds;
	if (evaluate) *evaluate = t.evaluateSeconds;
}

sl_status sl_circuit_dump(const sl_ground_program* g, int allow_inconsistent, char** out) {
	return guarded([&] {
		require(g && out, "null argument");
		CompileOptions co;
		co.allowInconsistent = allow_inconsistent != 0;
		*out = duplicate(smooth(compile(g->ground, co)).dump());
	});
}

// ---- sampling and learning ----------------------------------------------------

sl_status sl_sample(const sl_ground_program* gp, size_t n, uint64_t seed, const char* const* observe,
                    size_t observe_count, char** out) {
	return guarded([&] {
		require(gp && out, "null argument");
		const GroundProgram& g = gp->ground;
		std::set<std::string> preds;
		for (std::size_t i = 0; i < observe_count; ++i) preds.insert(observe[i]);
		std::set<AtomId> queried(g.queries().begin(), g.queries().end());
		std::function<bool(const Atom&)> keep;
		if (!preds.empty()) keep = [&](const Atom& a) { return preds.count(a.predicate) > 0; };
		else if (!queried.empty()) keep = [&](const Atom& a) { return queried.count(g.require(a)) > 0; };
		else keep = [](const Atom& a) { return !isReservedPredicate(a.predicate); };
		*out = duplicate(formatDataset(sample(g, n, seed, keep)));
	});
}

void sl_learn_options_init(sl_learn_options* opts) {
	if (!opts) return;
	opts->max_iter           = 100;
	opts->tol                = 1e-4;
	opts->allow_inconsistent = 0;
	opts->fully_observed     = 0;
}

sl_status sl_learn(const sl_program* p, const char* dataset, const sl_learn_options* opts, sl_learn_result** out) {
	return guarded([&] {
		require(p && dataset && out, "null argument");
		sl_learn_options o;
		sl_learn_options_init(&o);
		if (opts) o = *opts;

		auto data = parseDataset(dataset);
		if (data.empty()) throw CoverageError("empty dataset");
		GroundOptions go;
		std::set<Atom> seen;
		for (const auto& i : data)
			for (const auto& [a, v] : i)
				if (seen.insert(a).second) go.extraSeeds.push_back(a);

		auto r    = std::make_unique<sl_learn_result>();
		r->ground = ground(normalize(p->program), go);
		if (o.fully_observed) {
			r->probabilities = learnFullyObserved(r->ground, data);
		}
		else {
			EmOptions eo;
			eo.maxIterations     = o.max_iter;
			eo.tolerance         = o.tol;
			eo.allowInconsistent = o.allow_inconsistent != 0;
			EmResult em          = learnEm(r->ground, data, eo);
			r->probabilities     = std::move(em.probabilities);
			r->trace             = std::move(em.logLikelihood);
			r->iterations        = em.iterations;
		}
		r->program = toString(applyLearnedLabels(p->program, r->ground, r->probabilities));
		*out       = r.release();
	});
}

void sl_learn_free(sl_learn_result* r) { delete r; }
const char* sl_learn_program(const sl_learn_result* r) { return r ? r->program.c_str() : ""; }
size_t sl_learn_trace_length(const sl_learn_result* r) { return r ? r->trace.size() : 0; }
double sl_learn_trace(const sl_learn_result* r, size_t i) { return r && i < r->trace.size() ? r->trace[i] : 0.0; }
size_t sl_learn_iterations(const sl_learn_result* r) { return r ? r->iterations : 0; }

sl_status sl_learn_mae(const sl_learn_result* r, const sl_program* reference, double* out) {
	return guarded([&] {
		require(r && reference && out, "null argument");
		const GroundProgram& g = r->ground;
		GroundOptions go;
		for (AtomId a = 0; a < g.atomCount(); ++a) go.extraSeeds.push_back(g.atom(a));
		GroundProgram ref = ground(normalize(reference->program), go);
		std::vector<double> truth(g.factCount(), 0.0);
		for (AtomId f = 0; f < g.factCount(); ++f) {
			if (!g.fact(f).label.learnable) continue;
			AtomId id = ref.require(g.atom(f));
			if (!ref.isFact(id)) throw UnknownAtom(toString(g.atom(f)) + " is not probabilistic in the reference");
			truth[f] = ref.probability(id);
		}
		*out = meanAbsoluteError(g, r->probabilities, truth);
	});
}

} // extern "C"

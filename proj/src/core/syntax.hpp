//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#ifndef STABLELOG_SYNTAX_HPP
#define STABLELOG_SYNTAX_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stablelog {

/// A constant (symbol or integer) or a variable.
struct Term {
	enum class Kind : uint8_t { Symbol, Integer, Variable };

	Kind        kind = Kind::Symbol;
	std::string name;      // symbol text or variable name
	int64_t     value = 0; // integer constants only

	static Term symbol(std::string s) { return {Kind::Symbol, std::move(s), 0}; }
	static Term integer(int64_t v) { return {Kind::Integer, {}, v}; }
	static Term variable(std::string s) { return {Kind::Variable, std::move(s), 0}; }

	bool isVariable() const { return kind == Kind::Variable; }
	bool isGround() const { return kind != Kind::Variable; }

	friend bool operator==(const Term&, const Term&) = default;
	friend auto operator<=>(const Term&, const Term&) = default;
};

struct Atom {
	std::string       predicate;
	std::vector<Term> args;

	Atom() = default;
	Atom(std::string p, std::vector<Term> a = {}) : predicate(std::move(p)), args(std::move(a)) {}

	bool isGround() const;
	std::size_t arity() const { return args.size(); }

	friend bool operator==(const Atom&, const Atom&) = default;
	friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct Literal {
	Atom atom;
	bool naf = false; // \+atom

	friend bool operator==(const Literal&, const Literal&) = default;
};

struct ProbLabel {
	double value     = 1.0;
	bool   learnable = false;
	// Learnable labels written as t(_) have no explicit initial value; the
	// value field then holds the default start point.
	bool   explicitInitial = true;

	friend bool operator==(const ProbLabel&, const ProbLabel&) = default;
};

inline constexpr double kDefaultInitialParameter = 0.5;

struct Rule {
	Atom                     head;
	bool                     headNegated = false; // classical negation, `neg h`
	std::vector<Literal>     body;
	std::optional<ProbLabel> label;
	// Index of the input statement this rule was produced from. Carried
	// through rewrites so learned values can be written back. Not part of
	// equality.
	int source = -1;

	bool isFact() const { return body.empty(); }

	friend bool operator==(const Rule& a, const Rule& b) {
		return a.head == b.head && a.headNegated == b.headNegated && a.body == b.body && a.label == b.label;
	}
};

struct Evidence {
	Atom atom;
	bool value = true;

	friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct Program {
	std::vector<Rule>     rules;
	std::vector<Atom>     queries;
	std::vector<Evidence> evidence;

	bool empty() const { return rules.empty() && queries.empty() && evidence.empty(); }
	friend bool operator==(const Program&, const Program&) = default;
};

// Reserved names for generated atoms.
inline constexpr std::string_view kAuxPrefix = "aux_";
inline constexpr std::string_view kPosSuffix = "_pos";
inline constexpr std::string_view kNegSuffix = "_neg";

bool isReservedPredicate(std::string_view name);

std::string toString(const Term& t);
std::string toString(const Atom& a);
std::string toString(const Literal& l);
std::string toString(const ProbLabel& l);
std::string toString(const Rule& r);
/// Pretty-prints in the surface syntax accepted by parseProgram.
std::string toString(const Program& p);

/// Shortest decimal form that reads back to the same double.
std::string formatProbability(double v);

/// Variables in order of first occurrence (head, then body).
std::vector<std::string> variablesOf(const Rule& r);

struct AtomHash {
	std::size_t operator()(const Atom& a) const noexcept;
};

} // namespace stablelog

#endif

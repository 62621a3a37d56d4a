//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "syntax.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

namespace stablelog {

bool Atom::isGround() const {
	return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.isGround(); });
}

bool isReservedPredicate(std::string_view name) {
	auto endsWith = [&](std::string_view s) {
		return name.size() >= s.size() && name.substr(name.size() - s.size()) == s;
	};
	return name.starts_with(kAuxPrefix) || endsWith(kPosSuffix) || endsWith(kNegSuffix);
}

std::string formatProbability(double v) {
	std::array<char, 64> buf{};
	auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
	return std::string(buf.data(), end);
}

std::string toString(const Term& t) {
	switch (t.kind) {
		case Term::Kind::Integer: return std::to_string(t.value);
		default:                  return t.name;
	}
}

std::string toString(const Atom& a) {
	std::string out = a.predicate;
	if (!a.args.empty()) {
		out += '(';
		for (std::size_t i = 0; i < a.args.size(); ++i) {
			if (i) out += ',';
			out += toString(a.args[i]);
		}
		out += ')';
	}
	return out;
}

std::string toString(const Literal& l) {
	return l.naf ? "\\+" + toString(l.atom) : toString(l.atom);
}

std::string toString(const ProbLabel& l) {
	if (!l.learnable) return formatProbability(l.value);
	return l.explicitInitial ? "t(" + formatProbability(l.value) + ")" : std::string("t(_)");
}

std::string toString(const Rule& r) {
	std::string out;
	if (r.label) out += toString(*r.label) + "::";
	if (r.headNegated) out += "neg ";
	out += toString(r.head);
	if (!r.body.empty()) {
		out += " :- ";
		for (std::size_t i = 0; i < r.body.size(); ++i) {
			if (i) out += ", ";
			out += toString(r.body[i]);
		}
	}
	out += '.';
	return out;
}

std::string toString(const Program& p) {
	std::ostringstream os;
	for (const auto& r : p.rules) os << toString(r) << '\n';
	for (const auto& q : p.queries) os << "query(" << toString(q) << ").\n";
	for (const auto& e : p.evidence)
		os << "evidence(" << toString(e.atom) << ", " << (e.value ? "true" : "false") << ").\n";
	return os.str();
}

std::vector<std::string> variablesOf(const Rule& r) {
	std::vector<std::string> vars;
	auto visit = [&](const Atom& a) {
		for (const auto& t : a.args)
			if (t.isVariable() && std::find(vars.begin(), vars.end(), t.name) == vars.end())
				vars.push_back(t.name);
	};
	visit(r.head);
	for (const auto& l : r.body) visit(l.atom);
	return vars;
}

std::size_t AtomHash::operator()(const Atom& a) const noexcept {
	std::size_t h = std::hash<std::string>{}(a.predicate);
	for (const auto& t : a.args) {
		std::size_t th = t.kind == Term::Kind::Integer ? std::hash<int64_t>{}(t.value)
		                                               : std::hash<std::string>{}(t.name);
		h ^= th + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
		h ^= static_cast<std::size_t>(t.kind);
	}
	return h;
}

} // namespace stablelog

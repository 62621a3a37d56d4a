//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "argue.hpp"

#include "errors.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace stablelog {
namespace {

bool validName(std::string_view s) {
	if (s.empty() || !std::islower(static_cast<unsigned char>(s.front()))) return false;
	for (char c : s)
		if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
	return true;
}

std::vector<std::string> splitList(const std::string& s) {
	std::vector<std::string> out;
	std::size_t start = 0;
	for (std::size_t i = 0; i <= s.size(); ++i) {
		if (i < s.size() && s[i] != ',') continue;
		out.push_back(s.substr(start, i - start));
		start = i + 1;
	}
	return out;
}

class GraphReader {
public:
	ArgGraph read(std::string_view text) {
		std::istringstream in{std::string(text)};
		std::string line;
		while (std::getline(in, line)) {
			++line_;
			if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
			std::istringstream ls(line);
			std::vector<std::string> tok;
			for (std::string t; ls >> t;) tok.push_back(t);
			if (tok.empty()) continue;
			const std::string& kw = tok[0];
			if (kw == "arg") argument(tok);
			else if (kw == "att" || kw == "sup") edge(tok, kw == "att");
			else if (kw == "prop") proponent(tok);
			else fail("unknown statement '" + kw + "'");
		}
		return std::move(g_);
	}

private:
	[[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, 1); }

	void arity(const std::vector<std::string>& tok, std::size_t n) const {
		if (tok.size() != n) fail("'" + tok[0] + "' expects " + std::to_string(n - 1) + " fields");
	}

	double probability(const std::string& s) const {
		double v = 0.0;
		auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
		if (ec != std::errc{} || ptr != s.data() + s.size()) fail("bad probability '" + s + "'");
		if (!(v >= 0.0 && v <= 1.0)) fail("probability " + s + " outside [0, 1]");
		return v;
	}

	std::vector<std::string> known(const std::string& list) const {
		auto names = splitList(list);
		for (const auto& n : names)
			if (!declared_.count(n)) fail("unknown argument '" + n + "'");
		return names;
	}

	void argument(const std::vector<std::string>& tok) {
		arity(tok, 3);
		if (!validName(tok[1])) fail("bad argument name '" + tok[1] + "'");
		if (!declared_.insert(tok[1]).second) fail("duplicate argument '" + tok[1] + "'");
		g_.arguments.push_back({tok[1], probability(tok[2])});
	}

	void edge(const std::vector<std::string>& tok, bool attack) {
		arity(tok, 4);
		ArgGraph::Edge e{known(tok[1]), known(tok[2]).front(), probability(tok[3])};
		if (tok[2].find(',') != std::string::npos) fail("edge target must be a single argument");
		(attack ? g_.attacks : g_.supports).push_back(std::move(e));
	}

	void proponent(const std::vector<std::string>& tok) {
		arity(tok, 4);
		if (!validName(tok[1])) fail("bad proponent name '" + tok[1] + "'");
		if (!proponents_.insert(tok[1]).second) fail("duplicate proponent '" + tok[1] + "'");
		g_.proponents.push_back({tok[1], probability(tok[2]), known(tok[3])});
	}

	ArgGraph              g_;
	std::set<std::string> declared_;
	std::set<std::string> proponents_;
	int                   line_ = 0;
};

Atom unary(const char* pred, const std::string& name) { return Atom(pred, {Term::symbol(name)}); }

} // namespace

ArgGraph parseGraph(std::string_view text) { return GraphReader().read(text); }

Translation translate(const ArgGraph& g) {
	Translation t;
	auto& rules = t.program.rules;
	auto add = [&](Rule r) {
		r.source = static_cast<int>(rules.size());
		rules.push_back(std::move(r));
	};
	auto body = [](const std::vector<std::string>& sources) {
		std::vector<Literal> out;
		for (const auto& s : sources) out.push_back({unary("arg", s), false});
		return out;
	};

	for (const auto& a : g.arguments) {
		t.atoms.emplace(a.name, unary("arg", a.name));
		add({unary("base_arg", a.name), false, {}, ProbLabel{a.prior}});
		add({unary("arg", a.name), false, {{unary("base_arg", a.name), false}}, std::nullopt});
	}
	for (const auto& e : g.attacks) add({unary("arg", e.target), true, body(e.sources), ProbLabel{e.probability}});
	for (const auto& e : g.supports) add({unary("arg", e.target), false, body(e.sources), ProbLabel{e.probability}});
	if (!g.proponents.empty()) {
		for (const auto& p : g.proponents) {
			add({unary("prop", p.name), false, {}, ProbLabel{p.trust}});
			for (const auto& a : p.arguments)
				add({Atom("proposes", {Term::symbol(p.name), Term::symbol(a)}), false, {}, std::nullopt});
		}
		add({Atom("base_arg", {Term::variable("A")}),
		     false,
		     {{Atom("proposes", {Term::variable("P"), Term::variable("A")}), false},
		      {Atom("prop", {Term::variable("P")}), false}},
		     std::nullopt});
	}
	for (const auto& a : g.arguments) t.program.queries.push_back(unary("arg", a.name));
	return t;
}

} // namespace stablelog

//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#include "parser.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace stablelog {
namespace {

enum class Tok { Ident, Variable, Number, LParen, RParen, Comma, Dot, Label, If, Naf, Minus, End };

struct Token {
	Tok              kind;
	std::string_view text;
	int              line;
	int              column;
};

class Lexer {
public:
	explicit Lexer(std::string_view src) : src_(src) {}

	std::vector<Token> run() {
		std::vector<Token> out;
		for (;;) {
			skipBlank();
			if (pos_ >= src_.size()) {
				out.push_back({Tok::End, {}, line_, col_});
				return out;
			}
			out.push_back(next());
		}
	}

private:
	void skipBlank() {
		while (pos_ < src_.size()) {
			char c = src_[pos_];
			if (c == '%') {
				while (pos_ < src_.size() && src_[pos_] != '\n') advance();
			}
			else if (std::isspace(static_cast<unsigned char>(c))) {
				advance();
			}
			else {
				break;
			}
		}
	}

	void advance() {
		if (src_[pos_] == '\n') {
			++line_;
			col_ = 1;
		}
		else {
			++col_;
		}
		++pos_;
	}

	bool at(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

	Token next() {
		const std::size_t start = pos_;
		const int line = line_, col = col_;
		auto make = [&](Tok k) { return Token{k, src_.substr(start, pos_ - start), line, col}; };
		auto isWord = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
		char c = src_[pos_];

		if (std::isdigit(static_cast<unsigned char>(c))) {
			while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
			if (pos_ + 1 < src_.size() && src_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
				advance();
				while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
			}
			if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
				std::size_t save = pos_;
				int saveCol = col_;
				advance();
				if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) advance();
				if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
					while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
				}
				else {
					pos_ = save;
					col_ = saveCol;
				}
			}
			return make(Tok::Number);
		}
		if (std::islower(static_cast<unsigned char>(c))) {
			while (pos_ < src_.size() && isWord(src_[pos_])) advance();
			return make(Tok::Ident);
		}
		if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
			while (pos_ < src_.size() && isWord(src_[pos_])) advance();
			return make(Tok::Variable);
		}
		if (at("::")) { advance(); advance(); return make(Tok::Label); }
		if (at(":-")) { advance(); advance(); return make(Tok::If); }
		if (at("\\+")) { advance(); advance(); return make(Tok::Naf); }
		advance();
		switch (c) {
			case '(': return make(Tok::LParen);
			case ')': return make(Tok::RParen);
			case ',': return make(Tok::Comma);
			case '.': return make(Tok::Dot);
			case '-': return make(Tok::Minus);
			default: break;
		}
		throw ParseError(std::string("unexpected character '") + c + "'", line, col);
	}

	std::string_view src_;
	std::size_t      pos_  = 0;
	int              line_ = 1;
	int              col_  = 1;
};

class Parser {
public:
	explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

	Program program() {
		Program p;
		while (peek().kind != Tok::End) statement(p);
		return p;
	}

	Atom singleAtom() {
		Atom a = atom();
		expect(Tok::End, "end of input");
		return a;
	}

private:
	const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
	const Token& take() {
		const Token& t = toks_[pos_];
		if (t.kind != Tok::End) ++pos_;
		return t;
	}
	[[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.column); }
	const Token& expect(Tok k, const char* what) {
		if (peek().kind != k) fail(peek(), std::string("expected ") + what);
		return take();
	}

	static double number(const Token& t) {
		double v = 0;
		auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
		if (ec != std::errc() || p != t.text.data() + t.text.size()) throw ParseError("malformed number", t.line, t.column);
		return v;
	}

	double probability(const Token& t) {
		double v = number(t);
		if (!(v >= 0.0 && v <= 1.0)) fail(t, "probability " + std::string(t.text) + " outside [0,1]");
		return v;
	}

	Term term() {
		const Token& t = peek();
		switch (t.kind) {
			case Tok::Variable: take(); return Term::variable(std::string(t.text));
			case Tok::Ident:    take(); return Term::symbol(std::string(t.text));
			case Tok::Minus:
			case Tok::Number: {
				bool neg = t.kind == Tok::Minus;
				if (neg) take();
				const Token& n = expect(Tok::Number, "integer");
				int64_t v = 0;
				auto [p, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), v);
				if (ec != std::errc() || p != n.text.data() + n.text.size()) fail(n, "only integer constants are supported");
				return Term::integer(neg ? -v : v);
			}
			default: fail(t, "expected term");
		}
	}

	Atom atom() {
		const Token& name = expect(Tok::Ident, "predicate name");
		Atom a(std::string(name.text));
		if (peek().kind == Tok::LParen) {
			take();
			a.args.push_back(term());
			while (peek().kind == Tok::Comma) {
				take();
				a.args.push_back(term());
			}
			expect(Tok::RParen, "')'");
		}
		return a;
	}

	void checkName(const Token& at, const Atom& a) const {
		if (isReservedPredicate(a.predicate))
			fail(at, "predicate name '" + a.predicate + "' uses a reserved prefix or suffix");
	}

	// Tries `t(<num>|_)::` at the current position.
	std::optional<ProbLabel> learnableLabel() {
		if (!(peek().kind == Tok::Ident && peek().text == "t" && peek(1).kind == Tok::LParen)) return std::nullopt;
		const Token& inner = peek(2);
		if (!(peek(3).kind == Tok::RParen && peek(4).kind == Tok::Label)) return std::nullopt;
		ProbLabel l;
		l.learnable = true;
		if (inner.kind == Tok::Number) {
			l.value = probability(inner);
		}
		else if (inner.kind == Tok::Variable && inner.text == "_") {
			l.value           = kDefaultInitialParameter;
			l.explicitInitial = false;
		}
		else {
			return std::nullopt;
		}
		pos_ += 5;
		return l;
	}

	void statement(Program& p) {
		const Token& start = peek();
		if (start.kind == Tok::Ident && peek(1).kind == Tok::LParen && (start.text == "query" || start.text == "evidence")) {
			bool isQuery = start.text == "query";
			take();
			take();
			const Token& at = peek();
			Atom a = atom();
			checkName(at, a);
			if (isQuery) {
				expect(Tok::RParen, "')'");
				expect(Tok::Dot, "'.'");
				p.queries.push_back(std::move(a));
				return;
			}
			bool value = true;
			if (peek().kind == Tok::Comma) {
				take();
				const Token& v = expect(Tok::Ident, "true or false");
				if (v.text == "true") value = true;
				else if (v.text == "false") value = false;
				else fail(v, "expected true or false");
			}
			expect(Tok::RParen, "')'");
			expect(Tok::Dot, "'.'");
			if (!a.isGround()) fail(at, "evidence atoms must be ground");
			p.evidence.push_back({std::move(a), value});
			return;
		}

		Rule r;
		r.source = static_cast<int>(p.rules.size());
		if (auto l = learnableLabel()) {
			r.label = *l;
		}
		else if (start.kind == Tok::Number) {
			const Token& n = take();
			r.label = ProbLabel{probability(n), false, true};
			expect(Tok::Label, "'::'");
		}
		if (peek().kind == Tok::If) fail(peek(), "constraints (rules without head) are not supported");
		if (peek().kind == Tok::Ident && peek().text == "neg" && peek(1).kind == Tok::Ident) {
			take();
			r.headNegated = true;
		}
		const Token& headTok = peek();
		r.head = atom();
		checkName(headTok, r.head);
		if (peek().kind == Tok::If) {
			take();
			do {
				Literal l;
				if (peek().kind == Tok::Naf) {
					take();
					l.naf = true;
				}
				if (peek().kind == Tok::Ident && peek().text == "neg" && peek(1).kind == Tok::Ident)
					fail(peek(), "classical negation is only allowed in rule heads; use \\+ in bodies");
				const Token& at = peek();
				l.atom = atom();
				checkName(at, l.atom);
				r.body.push_back(std::move(l));
			} while (peek().kind == Tok::Comma && (take(), true));
		}
		expect(Tok::Dot, "'.'");
		checkRangeRestricted(start, r);
		p.rules.push_back(std::move(r));
	}

	void checkRangeRestricted(const Token& at, const Rule& r) const {
		std::set<std::string> bound;
		for (const auto& l : r.body)
			if (!l.naf)
				for (const auto& t : l.atom.args)
					if (t.isVariable()) bound.insert(t.name);
		auto check = [&](const Atom& a) {
			for (const auto& t : a.args)
				if (t.isVariable() && !bound.count(t.name))
					fail(at, "rule is not range restricted: variable " + t.name + " does not occur in a positive body literal");
		};
		check(r.head);
		for (const auto& l : r.body)
			if (l.naf) check(l.atom);
	}

	std::vector<Token> toks_;
	std::size_t        pos_ = 0;
};

} // namespace

Program parseProgram(std::string_view text) { return Parser(text).program(); }

Atom parseAtom(std::string_view text) { return Parser(text).singleAtom(); }

} // namespace stablelog

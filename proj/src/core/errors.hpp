//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#ifndef STABLELOG_ERRORS_HPP
#define STABLELOG_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace stablelog {

/// Base of every error raised by the library. The C API maps each subclass
/// onto a status code.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
	ParseError(const std::string& msg, int line, int column)
		: Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg)
		, line_(line)
		, column_(column) {}
	int line() const { return line_; }
	int column() const { return column_; }
private:
	int line_;
	int column_;
};

/// Some total choice has no stable model. `witness` holds one offending
/// choice as the list of included fact names plus the full assignment.
class InvalidProgram : public Error {
public:
	InvalidProgram(const std::string& msg, std::vector<bool> witness, std::string witnessText)
		: Error(msg), witness_(std::move(witness)), witnessText_(std::move(witnessText)) {}
	const std::vector<bool>& witness() const { return witness_; }
	const std::string& witnessText() const { return witnessText_; }
private:
	std::vector<bool> witness_;
	std::string witnessText_;
};

class ZeroProbabilityEvidence : public Error {
public:
	using Error::Error;
};

class UnknownAtom : public Error {
public:
	using Error::Error;
};

class CoverageError : public Error {
public:
	using Error::Error;
};

/// A configured resource bound (atom count, fact cap, model count) was hit.
class LimitExceeded : public Error {
public:
	using Error::Error;
};

} // namespace stablelog

#endif

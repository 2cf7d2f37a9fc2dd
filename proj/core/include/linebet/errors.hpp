#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linebet {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text. Carries a 1-based line number when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a data rule. Carries the offending game id
/// when one is known.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg, std::string game_id = "")
      : Error(game_id.empty() ? msg : "game " + game_id + ": " + msg),
        game_id_(std::move(game_id)) {}
  const std::string& game_id() const { return game_id_; }

 private:
  std::string game_id_;
};

/// Input yielded zero games.
class EmptyDataset : public Error {
 public:
  explicit EmptyDataset(const std::string& msg) : Error(msg) {}
};

/// American odds with |value| < 100.
class InvalidOdds : public Error {
 public:
  explicit InvalidOdds(const std::string& msg) : Error(msg) {}
};

/// No casino carries a moneyline for the requested side.
class NoQuote : public Error {
 public:
  explicit NoQuote(const std::string& msg) : Error(msg) {}
};

/// A game carries no point spread quote.
class MissingSpread : public Error {
 public:
  explicit MissingSpread(const std::string& msg) : Error(msg) {}
};

/// An interval or density routine received no samples.
class EmptySamples : public Error {
 public:
  explicit EmptySamples(const std::string& msg) : Error(msg) {}
};

/// Samples admit no usable bin width (fewer than two points, or zero spread,
/// with no explicit width override).
class DegenerateSamples : public Error {
 public:
  explicit DegenerateSamples(const std::string& msg) : Error(msg) {}
};

/// A joint per-league report was requested with no league intervals.
class MissingLeague : public Error {
 public:
  explicit MissingLeague(const std::string& msg) : Error(msg) {}
};

/// A synthetic-market spec is internally inconsistent.
class InvalidSpec : public Error {
 public:
  explicit InvalidSpec(const std::string& msg) : Error(msg) {}
};

/// File could not be read or written.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace linebet

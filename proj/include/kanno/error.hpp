#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace kanno {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value representation that does not denote an element of the monoid.
class ElementError : public Error {
 public:
  using Error::Error;
};

class AttributeError : public Error {
 public:
  using Error::Error;
};

class MonoidMismatch : public Error {
 public:
  using Error::Error;
};

/// The requested operation needs a closed-form transport solver.
class UnsupportedMonoid : public Error {
 public:
  using Error::Error;
};

/// A witness function returned something that is not a witness.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Raised where a total answer is required but a bounded search ran out.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Three-valued answer of a bounded decision procedure.
enum class Verdict { yes, no, undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

enum class SearchStatus { found, absent, undecided };

/// Outcome of a bounded search. `undecided` is never conflated with `absent`.
template <class T>
struct SearchResult {
  SearchStatus status = SearchStatus::absent;
  std::optional<T> value;
  std::size_t nodes = 0;

  bool found() const { return status == SearchStatus::found; }
  bool absent() const { return status == SearchStatus::absent; }
  bool undecided() const { return status == SearchStatus::undecided; }

  static SearchResult make_found(T v, std::size_t nodes = 0) {
    return SearchResult{SearchStatus::found, std::move(v), nodes};
  }
  static SearchResult make_absent(std::size_t nodes = 0) {
    return SearchResult{SearchStatus::absent, std::nullopt, nodes};
  }
  static SearchResult make_undecided(std::size_t nodes = 0) {
    return SearchResult{SearchStatus::undecided, std::nullopt, nodes};
  }
};

inline constexpr std::size_t kDefaultBudget = 2'000'000;

}  // namespace kanno

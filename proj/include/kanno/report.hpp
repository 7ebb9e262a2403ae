#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kanno {

/// What a suite is expected to observe for its inputs.
enum class Expectation { no_failure, failure, none };

const char* to_string(Expectation e);

enum class Outcome { ok, mismatch, undecided };

struct Failure {
  std::string what;
  /// Enough text to replay the instance (schema, monoid, relations, ...).
  std::string instance;

  friend bool operator==(const Failure&, const Failure&) = default;
};

struct VerificationReport {
  std::string suite;
  std::string subject;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t checks = 0;
  std::size_t undecided = 0;
  Expectation expectation = Expectation::none;
  std::vector<Failure> failures;
  std::vector<std::pair<std::string, std::size_t>> counts;
  std::vector<std::string> notes;
  std::vector<VerificationReport> parts;

  bool failure_found() const { return !failures.empty(); }
  /// Own expectation combined with every part; mismatch beats undecided.
  Outcome outcome() const;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

std::string to_text(const VerificationReport& r);
std::string to_json(const VerificationReport& r);

}  // namespace kanno

#include "kanno/report.hpp"

#include <sstream>

#include <json.hpp>

namespace kanno {

const char* to_string(Expectation e) {
  switch (e) {
    case Expectation::no_failure: return "no failure";
    case Expectation::failure: return "failure found";
    case Expectation::none: return "none";
  }
  return "?";
}

namespace {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::ok: return "ok";
    case Outcome::mismatch: return "mismatch";
    case Outcome::undecided: return "undecided";
  }
  return "?";
}

Outcome own_outcome(const VerificationReport& r) {
  switch (r.expectation) {
    case Expectation::no_failure:
      if (r.failure_found()) return Outcome::mismatch;
      return r.undecided > 0 ? Outcome::undecided : Outcome::ok;
    case Expectation::failure:
      if (r.failure_found()) return Outcome::ok;
      return r.undecided > 0 ? Outcome::undecided : Outcome::mismatch;
    case Expectation::none:
      return Outcome::ok;
  }
  return Outcome::ok;
}

void write_text(std::ostringstream& out, const VerificationReport& r, const std::string& indent) {
  out << indent << "suite: " << r.suite << "\n";
  if (!r.subject.empty()) out << indent << "subject: " << r.subject << "\n";
  out << indent << "seed: " << r.seed << "\n";
  out << indent << "trials: " << r.trials << "\n";
  out << indent << "checks: " << r.checks << "\n";
  out << indent << "undecided: " << r.undecided << "\n";
  for (const auto& [k, v] : r.counts) out << indent << k << ": " << v << "\n";
  out << indent << "failures: " << r.failures.size() << "\n";
  out << indent << "observed: " << (r.failure_found() ? "failure found" : "no failure") << "\n";
  out << indent << "expected: " << to_string(r.expectation) << "\n";
  out << indent << "outcome: " << to_string(r.outcome()) << "\n";
  for (const auto& n : r.notes) out << indent << "note: " << n << "\n";
  for (std::size_t i = 0; i < r.failures.size(); ++i) {
    out << indent << "failure " << i + 1 << ": " << r.failures[i].what << "\n";
    std::istringstream lines(r.failures[i].instance);
    for (std::string line; std::getline(lines, line);) out << indent << "  | " << line << "\n";
  }
  for (const auto& p : r.parts) {
    out << indent << "part:\n";
    write_text(out, p, indent + "  ");
  }
}

nlohmann::ordered_json json_of(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["subject"] = r.subject;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["checks"] = r.checks;
  j["undecided"] = r.undecided;
  auto counts = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.counts) counts[k] = v;
  j["counts"] = counts;
  j["observed"] = r.failure_found() ? "failure found" : "no failure";
  j["expected"] = to_string(r.expectation);
  j["outcome"] = to_string(r.outcome());
  j["notes"] = r.notes;
  auto failures = nlohmann::ordered_json::array();
  for (const auto& f : r.failures) failures.push_back({{"what", f.what}, {"instance", f.instance}});
  j["failures"] = failures;
  auto parts = nlohmann::ordered_json::array();
  for (const auto& p : r.parts) parts.push_back(json_of(p));
  j["parts"] = parts;
  return j;
}

}  // namespace

Outcome VerificationReport::outcome() const {
  Outcome worst = own_outcome(*this);
  for (const auto& p : parts) {
    const auto o = p.outcome();
    if (o == Outcome::mismatch) return Outcome::mismatch;
    if (o == Outcome::undecided) worst = worst == Outcome::mismatch ? worst : Outcome::undecided;
  }
  return worst;
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream out;
  write_text(out, r, "");
  return out.str();
}

std::string to_json(const VerificationReport& r) { return json_of(r).dump(2) + "\n"; }

}  // namespace kanno

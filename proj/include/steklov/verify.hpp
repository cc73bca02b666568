#pragma once

#include "steklov/bounds.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace steklov {

struct CheckRecord {
  std::string id;
  std::string surface;
  double h = 0.0;
  nlohmann::json values = nlohmann::json::object();
  Verdict verdict = Verdict::Pass;
  double runtime = 0.0; // seconds
  std::string message;
};

struct VerifySummary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t not_applicable = 0;
  std::size_t total() const { return pass + fail + not_applicable; }
};

struct VerificationReport {
  std::string version;
  std::string suite;
  double h_factor = 0.0;
  double runtime = 0.0;
  std::vector<CheckRecord> records;

  VerifySummary summary() const;
  bool passed() const { return summary().fail == 0; }
};

struct VerifyOptions {
  // Mesh size relative to min(a, strip depth) of each surface.
  double h_factor = 0.02;
  bool timings = true;
  std::ostream* log = nullptr; // one line per finished check
};

// Suites in execution order; "all" runs every one of them.
const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);

// Throws InvalidArgument for an unknown suite.
VerificationReport run_verification(std::string_view suite, const VerifyOptions& options = {});

nlohmann::json to_json(const CheckRecord& r, bool timings = true);
nlohmann::json to_json(const VerificationReport& r, bool timings = true);

} // namespace steklov

#pragma once

// The acceptance suite behind `verify`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace subcrit {

struct VerifyOptions {
  bool quick = false;
  std::uint64_t seed = 20240901;
  int workers = 1;
  /// Multiplies the analytic kappa seen by criteria 1 and 2 (fault injection).
  double kappa_multiplier = 1.0;
  /// Criteria to run (1..10); empty runs all.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<std::string> details;  // deterministic given the options
  double seconds = 0.0;              // never part of the report text
};

struct VerifyReport {
  VerifyOptions options;
  std::string constants_table;
  std::vector<CriterionResult> results;

  bool all_pass() const;
  /// Byte-stable text: no timings, no worker count.
  std::string text() const;
};

/// One line per criterion: "criterion N PASS|FAIL title".
std::string criterion_line(const CriterionResult& r);

using VerifyProgress = std::function<void(const CriterionResult&)>;
VerifyReport run_verify(const VerifyOptions& options, const VerifyProgress& progress = {});

/// Recomputed constants beside the published table, one line per cell, with
/// trust flags. `json` selects a JSON document instead of text.
std::string constants_table(bool json, double kappa_multiplier = 1.0);

}  // namespace subcrit

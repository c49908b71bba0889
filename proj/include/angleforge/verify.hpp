#pragma once

#include "angleforge/report_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace angleforge {

struct VerifyOptions {
  int grid = 0;             // 0: per-lemma default
  int resolution = 0;       // oracle resolution; 0: per-lemma default
  std::uint64_t seed = 0;
  double tol = 0.0;         // 0: per-lemma default
};

// Known lemma ids for cmd_verify.
const std::vector<std::string>& verification_registry();

// Runs the oracle-vs-closed-form comparison for one lemma id.
// Throws std::out_of_range for unknown ids.
VerifyReport run_verification(const std::string& lemma_id, const VerifyOptions& opt);

}  // namespace angleforge

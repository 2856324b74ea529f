#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hopfcoh {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct SuiteItem {
  std::string name;
  bool passed = false;
  std::string detail;  // failure message, empty on success
};

struct SuiteResult {
  std::string name;
  std::vector<SuiteItem> items;
  bool passed() const;
};

// axioms, cohomology-oracles, torsion, frobenius.
const std::vector<std::string>& suite_names();
// Throws Usage on an unknown name. Item order is fixed, so output is reproducible.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = kDefaultSeed);

}  // namespace hopfcoh

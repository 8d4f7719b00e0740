#pragma once

#include <string>
#include <vector>

#include "nilspec/constancy.hpp"
#include "nilspec/examples.hpp"
#include "nilspec/extension.hpp"

namespace nilspec {

// Bundled example with its extension and extended generator.
struct ExampleBundle {
  BundledExample data;
  ExtensionResult extension;
  Derivation hat_generator;
  std::vector<std::string> dual_names;
  [[nodiscard]] const LieAlgebra& algebra() const { return extension.extended; }
};

ExampleBundle load_example(ExampleId id);

// Each returns a list of human-readable mismatches (empty = exact match).
// tamper flips the sign of one expected connection entry.
std::vector<std::string> check_connection_table(const ExampleBundle& ex, bool tamper = false);
std::vector<std::string> check_laplacian(const ExampleBundle& ex);
std::vector<std::string> check_etau(const ExampleBundle& ex);
std::vector<std::string> check_flow(const ExampleBundle& ex);
std::vector<std::string> check_extension(const ExampleBundle& ex);
std::vector<std::string> check_structure(const ExampleBundle& ex);

struct SweepSummary {
  int tuples = 0;
  int constant = 0;
  int disagreements_with_criterion = 0;  // symbolic verdict vs a1 a2 == a3 a4
  int numeric_disagreements = 0;         // symbolic verdict vs sampled drift
  std::vector<std::string> examples;     // first few disagreements
};

// |a_i| <= bound; numeric cross-check at the given s values with drift
// threshold 1e-9.
SweepSummary constancy_sweep_summary(const ExampleBundle& ex, int bound, const std::vector<double>& samples);

struct StageResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReproduceOptions {
  bool tamper_sign = false;
  int sweep_bound = 2;
  Rational radius{2};
  double s1 = 0.0, s2 = 0.5;
};

std::vector<StageResult> reproduce(ExampleId id, const ReproduceOptions& opt = {});

}  // namespace nilspec

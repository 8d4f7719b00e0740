#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nilspec/examples.hpp"

namespace nilspec::cli {

struct RunConfig {
  std::string subcommand;
  std::optional<std::string> input;
  std::optional<ExampleId> example;
  Rational radius{2};
  std::vector<double> s_values;
  int samples = 0;
  std::string format = "text";
  unsigned precision = 64;
  std::optional<std::string> output;
  std::optional<std::vector<int>> a;
  bool tamper_sign = false;
  bool plot_script = false;
};

// Exit codes: 0 success, 1 mathematical failure, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilspec::cli

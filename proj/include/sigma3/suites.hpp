#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace sigma3 {

/// Where an expected value comes from: a published statement, an independent
/// computation (oracle or closed formula), a definition, or a runtime budget.
enum class Source { literature, derived, trivial, budget };
std::string to_string(Source s);

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  Source source = Source::derived;
  bool passed = false;
};

/// cap: a resource bound stopped the run before the checks could finish.
enum class SuiteStatus { pass, fail, skip, cap };
std::string to_string(SuiteStatus s);

struct SuiteResult {
  std::string name;
  SuiteStatus status = SuiteStatus::pass;
  std::vector<Check> checks;
  double seconds = 0;
  std::string note;

  int failures() const;
};

struct SuiteOptions {
  unsigned seed = 1;
  int max_order_exp = 20;
  /// Wall-clock budget in seconds for open-ended searches (0: none).
  double time_budget = 0;
};

/// Names accepted by run_suite, in a fixed order.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(std::string_view name, const SuiteOptions& opt = {});

nlohmann::ordered_json to_json(const SuiteResult& r);
/// One line per check, failures marked with the expected and actual values.
std::string to_text(const SuiteResult& r);

/// Worker count: SIGMA3_THREADS if set and positive, else the hardware
/// concurrency.
int worker_count();

/// Calls f(0..n-1) on up to worker_count() threads. The first exception
/// thrown by any call is rethrown after all workers finish.
void parallel_for(int n, const std::function<void(int)>& f);

}  // namespace sigma3

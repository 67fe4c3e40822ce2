// One line per acceptance criterion; details follow for anything that did not
// pass. Exit status 1 if any criterion fails (SKIP is allowed only for the
// stretch criterion).

#include <cstdlib>
#include <iostream>
#include <string>

#include "sigma3/suites.hpp"

using namespace sigma3;

int main() {
  struct Criterion {
    int number;
    const char* suite;
    const char* what;
    bool stretch;
  };
  const Criterion criteria[] = {
      {1, "bifurcation-orders", "bifurcation(e) orders and G/G' for e = 2, 3, 4", false},
      {2, "root-path", "root path of bifurcation(4) with step sizes (2,2,3,3)", false},
      {3, "order-81-census", "three groups of order 81 with G/G' (9,3)", false},
      {4, "chain-candidates", "two (144;4) candidates above metabelian-chain(e), e = 5..8", false},
      {5, "bcf-chain", "candidates metabelian; sl against G'' over generated vertices", false},
      {6, "general-aqi", "second-order invariants of the candidates against the B.18 scheme", false},
      {7, "properties", "property probes and brute-force oracles", false},
      {8, "elevated-census-stretch", "vertex like X with N = C = 27 at s = 4 (stretch)", true},
  };

  double budget = 900;
  if (const char* env = std::getenv("SIGMA3_STRETCH_BUDGET")) budget = std::atof(env);

  int failed = 0;
  std::string details;
  for (const Criterion& c : criteria) {
    SuiteOptions opt;
    if (c.stretch) {
      opt.max_order_exp = 21;  // the children of X have order 3^21
      opt.time_budget = budget;
    }
    SuiteResult r = run_suite(c.suite, opt);
    std::string status = to_string(r.status);
    if (c.stretch && r.status == SuiteStatus::cap) status = "SKIP";
    bool bad = status == "FAIL" || (status != "PASS" && !c.stretch);
    if (bad) ++failed;
    std::cout << "criterion " << c.number << " " << status << "  [" << c.suite << "] " << c.what << " ("
              << r.checks.size() - r.failures() << "/" << r.checks.size() << " checks, " << r.seconds << " s)"
              << std::endl;
    if (status != "PASS") details += to_text(r);
  }
  if (!details.empty()) std::cout << "\n" << details;
  return failed ? 1 : 0;
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigma3/artin.hpp"
#include "sigma3/genealogy.hpp"
#include "sigma3/structure.hpp"

namespace sigma3 {

inline constexpr const char* kVersion = "0.1.0";

struct StepCount {
  int step = 0;
  int total = 0;
  int capable = 0;
};

/// Everything we compute about one group.
struct Report {
  std::string subject;
  int lo = 0;
  int p_class = 0;
  int cl = 0;
  int sl = 0;
  int d = 0;
  int r = 0;   // relation rank = p-multiplicator rank
  int nu = 0;  // nuclear rank
  AbelianType commutator_quotient;
  std::vector<AbelianType> lower_central_factors;
  bool bcf = false;
  std::optional<ArtinPattern> artin;  // when G/G' is of type (3^e, 3), e >= 2
  std::string artin_note;             // why artin is missing
  bool sigma = false;
  bool schur = false;
  std::vector<StepCount> descendants;
  unsigned seed = 0;
  double seconds = 0;
};

struct ReportOptions {
  int depth = 1;
  std::vector<int> steps;  // step sizes for N/C; all of 1..nu when empty and with_descendants
  bool with_descendants = false;
  int max_order_exp = 20;
  unsigned seed = 0;
};

/// Works for any consistent presentation; automorphisms and covers use a
/// labelled copy when the input is not labelled.
Report make_report(const PcPresentation& pc, const std::string& subject, const ReportOptions& opt);

nlohmann::ordered_json to_json(const Report& r);
std::string to_text(const Report& r);

}  // namespace sigma3

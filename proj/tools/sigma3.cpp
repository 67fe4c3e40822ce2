#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sigma3/artin.hpp"
#include "sigma3/consistency.hpp"
#include "sigma3/families.hpp"
#include "sigma3/genealogy.hpp"
#include "sigma3/quotients.hpp"
#include "sigma3/report.hpp"
#include "sigma3/suites.hpp"

using namespace sigma3;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kCap = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Subject {
  std::string pcp_file;
  std::string family;
  int e = 0;
  std::string path;
};

struct Common {
  bool json = false;
  std::string out;
  unsigned seed = 0;
  int max_order_exp = 20;
  int max_class = 24;
};

void add_subject(CLI::App* app, Subject& s) {
  app->add_option("--pcp", s.pcp_file, "pc presentation file (.pcp); '-' reads stdin");
  app->add_option("--family", s.family, "bifurcation | metabelian-chain");
  app->add_option("--e", s.e, "family parameter e");
  app->add_option("--path", s.path, "tree path such as \"<2187,3>-#3;2\"");
}

std::string read_text(const std::string& file) {
  if (file == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int log_p(std::int64_t n, int p) {
  int k = 0;
  while (n > 1 && n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) throw UsageError("order " + std::to_string(n) + " is not a power of " + std::to_string(p));
  return k;
}

// (presentation, subject label)
std::pair<PcPresentation, std::string> load(const Subject& s, const Common& c) {
  int given = !s.pcp_file.empty() + !s.family.empty() + !s.path.empty();
  if (given != 1) throw UsageError("give exactly one of --pcp, --family, --path");
  if (!s.pcp_file.empty()) {
    PcPresentation pc = parse_pcp(read_text(s.pcp_file));
    if (!check_consistency(pc).empty()) throw UsageError(s.pcp_file + " is not consistent");
    return {pc, s.pcp_file};
  }
  if (!s.family.empty()) {
    Family f = parse_family(s.family);
    if (s.e < family_min_e(f)) throw UsageError("--e must be at least " + std::to_string(family_min_e(f)));
    PcPresentation pc = instantiate_family({f, s.e});
    if (pc.size() > c.max_order_exp) throw ResourceCapExceeded("family order exceeds --max-order-exp");
    return {pc, family_name(f) + "(" + std::to_string(s.e) + ")"};
  }
  TreePath tp = parse_tree_path(s.path);
  int lo = log_p(tp.order, 3);
  for (auto [step, idx] : tp.steps) lo += step;
  if (lo > c.max_order_exp)
    throw ResourceCapExceeded("vertex of order 3^" + std::to_string(lo) + " exceeds --max-order-exp");
  ResolvedPath rp = resolve_tree_path(tp);
  std::string label = format_tree_path(tp);
  if (rp.own_steps > 0)
    label += " (last " + std::to_string(rp.own_steps) + " step(s) in our child numbering)";
  return {rp.pc, label};
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot write " + c.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string child_line(const Descendant& d, int k) {
  Collector c(d.pc);
  std::ostringstream o;
  o << "#" << k << "  order 3^" << d.pc.size() << "  G/G' " << abelianization_type(c, whole_group(c)).to_string()
    << "  orbit " << d.orbit_size;
  if (d.nuclear_rank >= 0) o << "  nu " << d.nuclear_rank;
  try {
    KernelType kt = transfer_kernel_type(c);
    o << "  kappa " << kt.to_string() << " ~ " << canonical(kt).to_string();
  } catch (const std::invalid_argument&) {
  }
  return o.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-group computations around class field towers of 3-groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));
  Common common;
  app.add_flag("--json", common.json, "machine-readable output");
  app.add_option("--out", common.out, "write output to a file");
  app.add_option("--seed", common.seed, "seed for randomized property probes");
  app.add_option("--max-order-exp", common.max_order_exp, "refuse groups above order 3^k")->capture_default_str();
  app.add_option("--max-class", common.max_class, "class bound for p-quotients")->capture_default_str();

  Subject subj;

  auto* pq = app.add_subcommand("pq", "largest 3-quotient of a finite presentation");
  std::string fp_file;
  int class_bound = 0;
  pq->add_option("--fp", fp_file, "finite presentation file; '-' reads stdin")->required();
  pq->add_option("--class", class_bound, "stop at this exponent-3 class (0: until stable)");

  auto* cover = app.add_subcommand("cover", "p-cover, multiplicator rank and nuclear rank");
  add_subject(cover, subj);

  auto* desc = app.add_subcommand("descendants", "immediate descendants of one step size");
  add_subject(desc, subj);
  int step = 1;
  desc->add_option("--step", step, "step size s")->required();

  auto* rep = app.add_subcommand("report", "invariants of a group");
  add_subject(rep, subj);
  int depth = 1;
  std::vector<int> steps;
  bool all_steps = false;
  rep->add_option("--depth", depth, "1: first-order invariants, 2: also second order")->check(CLI::Range(1, 2));
  rep->add_option("--step", steps, "count descendants of these step sizes");
  rep->add_flag("--descendants", all_steps, "count descendants of every step size");

  auto* fam = app.add_subcommand("family", "expand a parametrized family");
  add_subject(fam, subj);
  bool as_fp = false;
  fam->add_flag("--fp", as_fp, "print the relations as a finite presentation");

  auto* ver = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites;
  double budget = 0;
  ver->add_option("suite", suites, "suite names, or 'all'")->required();
  ver->add_option("--budget", budget, "seconds allowed for open-ended searches (0: none)");

  auto* fmt = app.add_subcommand("fmt", "normalize a .pcp file, a finite presentation or a tree path");
  std::string fmt_pcp, fmt_fp, fmt_path;
  fmt->add_option("--pcp", fmt_pcp, "pc presentation file");
  fmt->add_option("--fp", fmt_fp, "finite presentation file");
  fmt->add_option("--path", fmt_path, "tree path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*pq) {
      PQuotientResult r = p_quotient(parse_fp(read_text(fp_file)), 3, class_bound, common.max_class);
      if (r.capped) throw ResourceCapExceeded("p-quotient did not stabilize within class " + std::to_string(common.max_class));
      if (common.json) {
        nlohmann::ordered_json j{{"order_exp", r.pc.size()}, {"p_class", r.p_class}, {"stabilized", r.stabilized},
                                 {"pcp", format_pcp(r.pc)}};
        emit(common, j.dump(2));
      } else {
        emit(common, format_pcp(r.pc));
      }
      return kOk;
    }
    if (*cover) {
      auto [pc, label] = load(subj, common);
      if (!pc.is_labelled()) pc = standardize(pc).pc;
      CoverData cd = p_cover(pc);
      if (common.json) {
        nlohmann::ordered_json j{{"subject", label},
                                 {"d", cd.generator_rank},
                                 {"r", cd.multiplicator_rank},
                                 {"nu", cd.nuclear_rank},
                                 {"cover_order_exp", cd.cover.size()},
                                 {"cover", format_pcp(cd.cover)}};
        emit(common, j.dump(2));
      } else {
        std::ostringstream o;
        o << label << "\n  d " << cd.generator_rank << "  r " << cd.multiplicator_rank << "  nu " << cd.nuclear_rank
          << "\n"
          << format_pcp(cd.cover);
        emit(common, o.str());
      }
      return kOk;
    }
    if (*desc) {
      auto [pc, label] = load(subj, common);
      if (pc.size() + step > common.max_order_exp)
        throw ResourceCapExceeded("descendants of order 3^" + std::to_string(pc.size() + step) +
                                  " exceed --max-order-exp");
      if (!pc.is_labelled()) pc = standardize(pc).pc;
      DescendantOptions o;
      o.with_automorphisms = false;
      DescendantReport r = immediate_descendants(pc, automorphism_group(pc), step, o);
      if (common.json) {
        nlohmann::ordered_json ch = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < r.children.size(); ++k) {
          Collector c(r.children[k].pc);
          ch.push_back({{"index", k + 1},
                        {"order_exp", r.children[k].pc.size()},
                        {"commutator_quotient", abelianization_type(c, whole_group(c)).to_string()},
                        {"nu", r.children[k].nuclear_rank},
                        {"orbit", r.children[k].orbit_size},
                        {"pcp", format_pcp(r.children[k].pc)}});
        }
        nlohmann::ordered_json j{{"subject", label}, {"s", step},       {"N", r.total()},
                                 {"C", r.capable()}, {"allowable", r.allowable_count}, {"children", ch}};
        emit(common, j.dump(2));
      } else {
        std::ostringstream o;
        o << label << "  s=" << step << "  N=" << r.total() << "  C=" << r.capable() << "  allowable "
          << r.allowable_count << "\n";
        for (std::size_t k = 0; k < r.children.size(); ++k) o << "  " << child_line(r.children[k], k + 1) << "\n";
        emit(common, o.str());
      }
      return kOk;
    }
    if (*rep) {
      auto [pc, label] = load(subj, common);
      ReportOptions o;
      o.depth = depth;
      o.steps = steps;
      o.with_descendants = all_steps || !steps.empty();
      o.max_order_exp = common.max_order_exp;
      o.seed = common.seed;
      Report r = make_report(pc, label, o);
      emit(common, common.json ? to_json(r).dump(2) : to_text(r));
      return kOk;
    }
    if (*fam) {
      if (subj.family.empty()) throw UsageError("family needs --family and --e");
      auto [pc, label] = load(subj, common);
      Family f = parse_family(subj.family);
      emit(common, as_fp ? format_fp(family_fp({f, subj.e})) : format_pcp(pc));
      return kOk;
    }
    if (*ver) {
      if (suites.size() == 1 && suites[0] == "all") suites = suite_names();
      SuiteOptions o;
      o.seed = common.seed ? common.seed : 1;
      o.max_order_exp = common.max_order_exp;
      o.time_budget = budget;
      int code = kOk;
      nlohmann::ordered_json all = nlohmann::ordered_json::array();
      std::string text;
      for (const auto& name : suites) {
        SuiteResult r = run_suite(name, o);
        if (r.status == SuiteStatus::fail) code = kVerifyFailed;
        if (r.status == SuiteStatus::cap && code == kOk) code = kCap;
        all.push_back(to_json(r));
        text += to_text(r);
      }
      emit(common, common.json ? all.dump(2) : text);
      return code;
    }
    if (*fmt) {
      int given = !fmt_pcp.empty() + !fmt_fp.empty() + !fmt_path.empty();
      if (given != 1) throw UsageError("fmt needs exactly one of --pcp, --fp, --path");
      if (!fmt_pcp.empty()) emit(common, format_pcp(parse_pcp(read_text(fmt_pcp))));
      if (!fmt_fp.empty()) emit(common, format_fp(parse_fp(read_text(fmt_fp))));
      if (!fmt_path.empty()) emit(common, format_tree_path(parse_tree_path(fmt_path)));
      return kOk;
    }
  } catch (const ResourceCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kCap;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

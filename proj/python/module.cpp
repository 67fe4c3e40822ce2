#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sigma3/families.hpp"
#include "sigma3/genealogy.hpp"
#include "sigma3/report.hpp"
#include "sigma3/suites.hpp"

namespace py = pybind11;
using namespace sigma3;

namespace {

PcPresentation subject(const std::string& pcp, const std::string& family, int e, const std::string& path) {
  int given = !pcp.empty() + !family.empty() + !path.empty();
  if (given != 1) throw std::invalid_argument("give exactly one of pcp, family, path");
  if (!pcp.empty()) return parse_pcp(pcp);
  if (!family.empty()) return instantiate_family({parse_family(family), e});
  return resolve_tree_path(parse_tree_path(path)).pc;
}

}  // namespace

PYBIND11_MODULE(_sigma3, m) {
  m.attr("__version__") = kVersion;

  py::register_exception<ResourceCapExceeded>(m, "ResourceCapExceeded");

  m.def(
      "family_pcp",
      [](const std::string& name, int e) { return format_pcp(instantiate_family({parse_family(name), e})); },
      py::arg("name"), py::arg("e"));

  m.def("pq", [](const std::string& fp, int max_class) {
    return format_pcp(p_quotient(parse_fp(fp), 3, max_class).pc);
  }, py::arg("fp"), py::arg("max_class") = 0);

  m.def("normalize_path", [](const std::string& s) { return format_tree_path(parse_tree_path(s)); });

  m.def(
      "report_json",
      [](const std::string& pcp, const std::string& family, int e, const std::string& path, int depth,
         std::vector<int> steps, bool descendants, int max_order_exp) {
        PcPresentation pc = subject(pcp, family, e, path);
        std::string name = !family.empty() ? family + "(" + std::to_string(e) + ")" : !path.empty() ? path : "pcp";
        ReportOptions opt;
        opt.depth = depth;
        opt.steps = std::move(steps);
        opt.with_descendants = descendants || !opt.steps.empty();
        opt.max_order_exp = max_order_exp;
        Report r;
        {
          py::gil_scoped_release release;
          r = make_report(pc, name, opt);
        }
        return to_json(r).dump();
      },
      py::arg("pcp") = "", py::arg("family") = "", py::arg("e") = 0, py::arg("path") = "", py::arg("depth") = 1,
      py::arg("steps") = std::vector<int>{}, py::arg("descendants") = false, py::arg("max_order_exp") = 20);

  m.def("suite_names", &suite_names);

  m.def(
      "run_suite_json",
      [](const std::string& name, int max_order_exp, double budget) {
        SuiteOptions opt;
        opt.max_order_exp = max_order_exp;
        opt.time_budget = budget;
        SuiteResult r;
        {
          py::gil_scoped_release release;
          r = run_suite(name, opt);
        }
        return to_json(r).dump();
      },
      py::arg("name"), py::arg("max_order_exp") = 20, py::arg("budget") = 0.0);
}

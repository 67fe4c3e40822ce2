#include "sigma3/report.hpp"

#include <chrono>
#include <sstream>

#include "sigma3/quotients.hpp"

namespace sigma3 {

Report make_report(const PcPresentation& pc, const std::string& subject, const ReportOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.subject = subject;
  r.seed = opt.seed;
  Collector c(pc);
  StructureSummary s = summarize(c);
  r.lo = s.lo;
  r.p_class = s.p_class;
  r.cl = s.nilpotency_class;
  r.sl = s.derived_length;
  r.lower_central_factors = s.lower_central_factors;
  r.bcf = s.bcf;
  r.commutator_quotient = abelianization_type(c, whole_group(c));

  PcPresentation lab = pc.is_labelled() ? pc : standardize(pc).pc;
  CoverData cd = p_cover(lab);
  r.d = cd.generator_rank;
  r.r = cd.multiplicator_rank;
  r.nu = cd.nuclear_rank;

  try {
    r.artin = artin_pattern(c, opt.depth);
  } catch (const std::invalid_argument& e) {
    r.artin_note = e.what();
  }

  AutGroup aut = automorphism_group(lab);
  r.sigma = sigma_test(lab, aut).sigma;
  r.schur = r.sigma && r.d == 2 && r.r == 2;

  if (opt.with_descendants) {
    std::vector<int> steps = opt.steps;
    if (steps.empty())
      for (int k = 1; k <= r.nu; ++k) steps.push_back(k);
    for (int st : steps) {
      if (r.lo + st > opt.max_order_exp)
        throw ResourceCapExceeded("descendants of order 3^" + std::to_string(r.lo + st) + " exceed --max-order-exp " +
                                  std::to_string(opt.max_order_exp));
      if (st < 1 || st > r.nu) {
        r.descendants.push_back({st, 0, 0});
        continue;
      }
      DescendantOptions d;
      d.with_automorphisms = false;
      DescendantReport dr = immediate_descendants(lab, aut, st, d);
      r.descendants.push_back({st, dr.total(), dr.capable()});
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

namespace {

nlohmann::ordered_json types_json(const std::vector<AbelianType>& ts) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& t : ts) a.push_back(t.to_string());
  return a;
}

}  // namespace

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["subject"] = r.subject;
  j["lo"] = r.lo;
  j["p_class"] = r.p_class;
  j["cl"] = r.cl;
  j["sl"] = r.sl;
  j["d"] = r.d;
  j["r"] = r.r;
  j["nu"] = r.nu;
  j["commutator_quotient"] = r.commutator_quotient.to_string();
  j["lower_central_factors"] = types_json(r.lower_central_factors);
  j["bcf"] = r.bcf;
  if (r.artin) {
    const ArtinPattern& a = *r.artin;
    j["kappa"] = {{"raw", a.kappa.to_string()},
                  {"canonical", a.kappa_canonical.to_string()},
                  {"name", a.kappa_name.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(a.kappa_name)}};
    j["rho"] = a.rho;
    j["alpha1"] = format_quartet(a.alpha1);
    if (!a.alpha2.empty()) {
      nlohmann::ordered_json a2;
      a2["commutator_quotient"] = a.commutator_quotient.to_string();
      nlohmann::ordered_json layers = nlohmann::ordered_json::array();
      for (const auto& l : a.alpha2) layers.push_back({{"h", l.h.to_string()}, {"maximal", types_json(l.types)}});
      a2["layers"] = layers;
      a2["text"] = format_alpha2(a);
      j["alpha2"] = a2;
    }
  } else {
    j["kappa"] = nullptr;
    j["artin_note"] = r.artin_note;
  }
  j["sigma"] = r.sigma;
  j["schur"] = r.schur;
  nlohmann::ordered_json ds = nlohmann::ordered_json::array();
  for (const auto& d : r.descendants) ds.push_back({{"s", d.step}, {"N", d.total}, {"C", d.capable}});
  j["descendants"] = ds;
  j["provenance"] = {{"tool", "sigma3"}, {"version", kVersion}, {"seed", r.seed}, {"seconds", r.seconds}};
  return j;
}

std::string to_text(const Report& r) {
  std::ostringstream o;
  o << r.subject << "\n";
  o << "  lo " << r.lo << "  p-class " << r.p_class << "  cl " << r.cl << "  sl " << r.sl << "\n";
  o << "  d " << r.d << "  r " << r.r << "  nu " << r.nu << "\n";
  o << "  G/G' " << r.commutator_quotient.to_string() << "  lower central factors";
  for (const auto& t : r.lower_central_factors) o << " " << t.to_string();
  o << (r.bcf ? "  (BCF)" : "  (CF)") << "\n";
  if (r.artin) {
    const ArtinPattern& a = *r.artin;
    o << "  kappa " << a.kappa.to_string() << "  canonical " << a.kappa_canonical.to_string();
    if (!a.kappa_name.empty()) o << "  " << a.kappa_name;
    o << "\n  rho (" << a.rho[0] << "," << a.rho[1] << "," << a.rho[2] << ";" << a.rho[3] << ")";
    o << "  alpha1 " << format_quartet(a.alpha1) << "\n";
    if (!a.alpha2.empty()) o << "  alpha2 " << format_alpha2(a) << "\n";
  } else {
    o << "  no punctured invariants: " << r.artin_note << "\n";
  }
  o << "  sigma " << (r.sigma ? "yes" : "no") << "  schur " << (r.schur ? "yes" : "no") << "\n";
  for (const auto& d : r.descendants) o << "  s=" << d.step << ": N=" << d.total << " C=" << d.capable << "\n";
  return o.str();
}

}  // namespace sigma3

// Report emission: a fixed-width human table and a versioned JSON document.
// Output is deterministic for a given report.

#ifndef SMOOTHQUOT_REPORT_HPP_
#define SMOOTHQUOT_REPORT_HPP_

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "branch.hpp"
#include "classify.hpp"

namespace smoothquot {

using nlohmann::json;

inline const char* kReportSchema = "smoothquot-report/1";

inline json witness_to_json(const std::optional<StabilizerReport>& w) {
  if (!w) return nullptr;
  json j;
  j["point"] = w->point.str();
  j["stabilizer"] = w->stab_names;
  j["stabilizer_order"] = w->stab_order();
  j["reflection_subgroup_order"] = w->reflection_subgroup_order();
  return j;
}

inline json case_to_json(const CaseResult& r) {
  json j;
  j["case"] = {{"m", r.m},
               {"p", r.p},
               {"model", model_name(r.model)},
               {"delta", r.delta.descriptor()},
               {"delta_order", r.delta.order()},
               {"delta_label", r.expectation.label}};
  j["verdict"] = r.verdict.smooth ? "smooth" : "not smooth";
  j["witness"] = witness_to_json(r.verdict.witness);
  j["expectation"] = expectation_name(r.expectation.exp);
  j["expectation_source"] = r.expectation.source;
  j["match"] = r.match;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json classify_to_json(const ClassifyReport& rep) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = "classify";
  j["torsion_bound"] = rep.torsion_bound;
  j["all_match"] = rep.all_match;
  j["invariants_ok"] = rep.invariants_ok;
  j["excluded"] = json::array();
  for (const auto& e : rep.excluded)
    j["excluded"].push_back({{"m", e.m}, {"p", e.p}, {"reason", e.reason}});
  j["notes"] = rep.notes;
  j["cases"] = json::array();
  for (const auto& r : rep.results) j["cases"].push_back(case_to_json(r));
  return j;
}

inline std::string case_line(const CaseResult& r) {
  std::ostringstream os;
  os << "G(" << r.m << "," << r.p << ") " << std::left << std::setw(14)
     << model_name(r.model) << " |Delta|=" << std::setw(2) << r.delta.order()
     << " " << std::setw(44) << r.expectation.label
     << (r.verdict.smooth ? "smooth    " : "not smooth")
     << "  expect: " << std::setw(44) << expectation_name(r.expectation.exp)
     << (r.match ? "  [ok]" : "  [MISMATCH]");
  if (!r.note.empty()) os << "  (" << r.note << ")";
  return os.str();
}

inline std::string classify_to_text(const ClassifyReport& rep) {
  std::ostringstream os;
  os << "classification sweep (torsion bound " << rep.torsion_bound << ")\n";
  for (const auto& e : rep.excluded)
    os << "G(" << e.m << "," << e.p << ") excluded: " << e.reason << "\n";
  for (const auto& r : rep.results) {
    os << case_line(r) << "\n";
    if (r.verdict.witness) {
      const auto& w = *r.verdict.witness;
      os << "    witness " << w.point.str() << ": stabilizer order "
         << w.stab_order() << ", reflection subgroup order "
         << w.reflection_subgroup_order() << "\n";
      for (const auto& n : w.stab_names) os << "      " << n << "\n";
    }
    if (!r.spot_check_ok)
      os << "    SPOT CHECK FAILED: a sampled non-candidate point fails the "
            "stabilizer criterion\n";
  }
  for (const auto& n : rep.notes) os << "note: " << n << "\n";
  os << (rep.all_match ? "all expectations reproduced\n"
                       : "MISMATCH against expectations\n");
  return os.str();
}

// --------------------------------------------------------------------------

inline json identities_to_json(const std::vector<IdentityCheck>& checks) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = "identities";
  j["checks"] = json::array();
  bool all = true;
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}});
    all = all && c.pass;
  }
  j["all_pass"] = all;
  return j;
}

inline std::string identities_to_text(const std::vector<IdentityCheck>& checks) {
  std::ostringstream os;
  bool all = true;
  for (const auto& c : checks) {
    os << (c.pass ? "[pass] " : "[FAIL] ") << c.name << "\n";
    all = all && c.pass;
  }
  os << (all ? "all identities hold\n" : "identity failure\n");
  return os.str();
}

inline json example_c_to_json(const ExampleCReport& r) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = "example-c";
  j["order_16"] = r.order_16;
  j["conjugate_of_g42"] = r.conjugate_of_g42;
  j["generators_match"] = r.generators_match;
  j["reflection_count_matches"] = r.reflection_count_matches;
  j["smooth"] = r.smooth;
  j["all_pass"] = r.all();
  return j;
}

inline std::string example_c_to_text(const ExampleCReport& r) {
  std::ostringstream os;
  auto line = [&](const char* name, bool ok) {
    os << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
  };
  line("group closure has order 16", r.order_16);
  line("group equals the conjugate of G(4,2) by [[1,-1],[0,i-1]]", r.conjugate_of_g42);
  line("stated generators are the conjugated standard generators", r.generators_match);
  line("pseudoreflection count matches G(4,2)", r.reflection_count_matches);
  line("quotient by the order-16 group is smooth", r.smooth);
  return os.str();
}

inline std::string component_str(const BranchComponent& c) {
  std::ostringstream os;
  os << c.translate.str() << " + span{";
  for (int i = 0; i < c.span.span.rank(); ++i) {
    os << (i ? "," : "") << "(";
    for (int k = 0; k < 4; ++k)
      os << (k ? "," : "") << c.span.span.basis(i, k);
    os << ")";
  }
  os << "}";
  return os.str();
}

inline json branch_to_json(const BranchReport& r) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = "branch";
  j["sets"] = json::array();
  for (const auto& s : r.sets) {
    json js;
    js["label"] = s.label;
    js["curves"] = json::array();
    for (const auto& c : s.curves) js["curves"].push_back(component_str(c));
    js["residue_points"] = json::array();
    for (const auto& ptv : s.residue_points) js["residue_points"].push_back(ptv.str());
    j["sets"].push_back(js);
  }
  j["curves_as_expected"] = r.curves_as_expected;
  j["pairwise_zero_dimensional"] = r.pairwise_zero_dimensional;
  j["triple_intersection_empty"] = r.triple_intersection_empty;
  j["four_components_transitive"] = r.four_components_transitive;
  j["all_pass"] = r.all();
  return j;
}

inline std::string branch_to_text(const BranchReport& r) {
  std::ostringstream os;
  for (const auto& s : r.sets) {
    os << "divisor for " << s.label << ":\n";
    for (const auto& c : s.curves) os << "  curve " << component_str(c) << "\n";
    os << "  finite residue: " << s.residue_points.size() << " point(s)";
    for (const auto& ptv : s.residue_points) os << " " << ptv.str();
    os << "\n";
  }
  auto line = [&](const char* name, bool ok) {
    os << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
  };
  line("curve components as expected", r.curves_as_expected);
  line("pairwise intersections are zero-dimensional", r.pairwise_zero_dimensional);
  line("triple intersection of curve parts is empty", r.triple_intersection_empty);
  line("G(4,1) permutes the four translation-divisor curves transitively",
       r.four_components_transitive);
  return os.str();
}

inline json deltas_to_json(int m, int p, const std::vector<DeltaGroup>& ds) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = "deltas";
  j["m"] = m;
  j["p"] = p;
  j["deltas"] = json::array();
  for (size_t i = 0; i < ds.size(); ++i)
    j["deltas"].push_back({{"index", i},
                           {"order", ds[i].order()},
                           {"generators", ds[i].descriptor()}});
  return j;
}

inline std::string deltas_to_text(int m, int p, const std::vector<DeltaGroup>& ds) {
  std::ostringstream os;
  os << "admissible kernels for G(" << m << "," << p << "):\n";
  for (size_t i = 0; i < ds.size(); ++i)
    os << "  [" << i << "] order " << ds[i].order() << "  " << ds[i].descriptor()
       << "\n";
  return os.str();
}

}  // namespace smoothquot

#endif

// smoothquot command line: classification sweep, single cases, kernel
// enumeration, conjugation identities, the exceptional example, branch data,
// and user-defined actions from a config file.
//
// Exit codes: 0 all checks matched, 1 mismatch against an expectation,
// 2 internal invariant violation, 64 usage error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smoothquot/report.hpp"

namespace sq = smoothquot;

namespace {

// --- small parsers ---------------------------------------------------------

long long parse_int(const std::string& s, size_t& pos) {
  size_t start = pos;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
  while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start || (pos == start + 1 && !isdigit(static_cast<unsigned char>(s[start]))))
    throw CLI::ValidationError("expected integer in '" + s + "'");
  return std::stoll(s.substr(start, pos - start));
}

bool is_zeta_symbol(char c) { return c == 'i' || c == 'w' || c == 'z'; }

// Entries look like: 2, -1, i, -i, 1+i, i-1, 2w, z-1, 1-2z ...
sq::Cyc parse_cyc(std::string s, int m) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw CLI::ValidationError("empty matrix entry");
  long long a = 0, b = 0;
  size_t pos = 0;
  for (int term = 0; term < 2 && pos < s.size(); ++term) {
    long long sign = 1;
    if (s[pos] == '+') ++pos;
    else if (s[pos] == '-') { sign = -1; ++pos; }
    long long coeff = 1;
    bool have_digits = pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]));
    if (have_digits) {
      size_t p2 = pos;
      coeff = parse_int(s, p2);
      pos = p2;
    }
    if (pos < s.size() && is_zeta_symbol(s[pos])) {
      b += sign * coeff;
      ++pos;
    } else if (have_digits) {
      a += sign * coeff;
    } else {
      throw CLI::ValidationError("cannot parse matrix entry '" + s + "'");
    }
  }
  if (pos != s.size())
    throw CLI::ValidationError("trailing characters in matrix entry '" + s + "'");
  return sq::Cyc(m, a, b);
}

// [[e,e],[e,e]]
sq::Mat2c parse_mat2(const std::string& raw, int m) {
  std::string s = raw;
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  std::vector<std::string> entries;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[') { ++depth; continue; }
    if (c == ']') { --depth; if (!cur.empty()) { entries.push_back(cur); cur.clear(); } continue; }
    if (c == ',' && depth == 1) continue;
    if (c == ',' && depth == 2) { entries.push_back(cur); cur.clear(); continue; }
    cur += c;
  }
  if (depth != 0 || entries.size() != 4)
    throw CLI::ValidationError("matrix must look like [[a,b],[c,d]]: " + raw);
  return sq::Mat2c(parse_cyc(entries[0], m), parse_cyc(entries[1], m),
                   parse_cyc(entries[2], m), parse_cyc(entries[3], m));
}

// (n/d,n/d,n/d,n/d)
sq::TorsionVector parse_torsion(const std::string& raw) {
  std::string s = raw;
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw CLI::ValidationError("torsion point must look like (a/b,...): " + raw);
  s = s.substr(1, s.size() - 2);
  std::vector<long long> nums, dens;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    size_t pos = 0;
    long long n = parse_int(item, pos);
    long long d = 1;
    if (pos < item.size() && item[pos] == '/') {
      ++pos;
      d = parse_int(item, pos);
    }
    if (pos != item.size() || d <= 0)
      throw CLI::ValidationError("bad coordinate '" + item + "'");
    nums.push_back(n);
    dens.push_back(d);
  }
  if (nums.size() != 4)
    throw CLI::ValidationError("torsion point needs 4 coordinates: " + raw);
  long long den = 1;
  for (long long d : dens) den = sq::lcm_ll(den, d);
  std::vector<long long> scaled(4);
  for (int i = 0; i < 4; ++i) scaled[i] = nums[i] * (den / dens[i]);
  return sq::TorsionVector(den, scaled);
}

// Close a list of kernel generators into a full G-stable subgroup.
sq::DeltaGroup close_delta(const sq::MatrixGroup& g,
                           const std::vector<sq::TorsionVector>& gens) {
  sq::DeltaGroup d;
  if (gens.empty()) return sq::trivial_delta();
  long long N = 1;
  for (const auto& t : gens) N = sq::lcm_ll(N, t.den);
  std::vector<sq::IntMat> mats;
  for (int gi : g.generators) mats.push_back(g.elems[gi].mat4);
  sq::detail::DeltaEnumerator en(N, mats, false);
  std::vector<std::uint32_t> seeds;
  for (const auto& t : gens) {
    sq::TorsionVector r = t.rescaled(N);
    seeds.push_back(en.encode({r.num[0], r.num[1], r.num[2], r.num[3]}));
  }
  auto cl = en.closure(seeds);
  for (std::uint32_t c : *cl) {
    auto v = en.decode(c);
    d.elements.push_back(sq::TorsionVector(N, {v[0], v[1], v[2], v[3]}));
  }
  std::sort(d.elements.begin(), d.elements.end());
  d.generators = gens;
  return d;
}

struct OutputOptions {
  bool json = false;
};

void emit(const OutputOptions& opt, const sq::json& j, const std::string& text) {
  if (opt.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int run_case(int m, int p, const std::string& delta_spec, const OutputOptions& out,
             long long torsion_bound) {
  if (m == 2 && p == 2) {
    sq::json j{{"schema", sq::kReportSchema},
               {"command", "case"},
               {"excluded", true},
               {"reason", "G(2,2) is reducible and excluded"}};
    emit(out, j, "G(2,2) excluded: the representation is reducible\n");
    return 0;
  }
  bool sumzero = (m == p && (m == 3 || m == 6));
  std::vector<sq::DeltaGroup> enumerated = sq::case_deltas(m, p, torsion_bound);

  sq::DeltaGroup delta;
  if (delta_spec.empty() || delta_spec == "trivial" || delta_spec == "0") {
    delta = sq::trivial_delta();
  } else if (delta_spec.find('(') == std::string::npos) {
    size_t idx = std::stoul(delta_spec);
    if (idx >= enumerated.size())
      throw CLI::ValidationError("delta index out of range; see `deltas`");
    delta = enumerated[idx];
  } else {
    std::vector<sq::TorsionVector> gens;
    std::string item;
    std::istringstream is(delta_spec);
    while (std::getline(is, item, ';')) gens.push_back(parse_torsion(item));
    sq::MatrixGroup g = sumzero ? sq::build_sumzero_group(m == 6) : sq::build_gmp(m, p);
    delta = close_delta(g, gens);
  }

  sq::CaseResult r;
  r.m = m;
  r.p = p;
  r.model = sumzero ? sq::Model::SumZeroE3 : sq::Model::E2Standard;
  r.delta = delta;
  bool enumerated_delta = false;
  for (size_t i = 0; i < enumerated.size(); ++i)
    if (enumerated[i].elements == delta.elements) {
      enumerated_delta = true;
      r.delta_index = static_cast<int>(i);
    }
  if (m == 4 && p == 4) {
    // the sweep treats G(4,4) through its isomorphism with G(2,1); a single
    // case is decided independently, without a pinned expectation
    r.expectation = {sq::Expectation::NoExpectation,
                     "|Delta| = " + std::to_string(delta.order()),
                     "G(4,4) rows of the sweep replay G(2,1); this case is "
                     "decided on its own lattice"};
  } else if (enumerated_delta) {
    r.expectation = sq::expectation_for(m, p, r.model, delta);
  } else {
    r.expectation = {sq::Expectation::NoExpectation, "custom kernel",
                     "kernel not in the enumerated admissible list"};
  }
  sq::AffineGroup ag = sumzero ? sq::make_sumzero_case(m == 6, delta)
                               : sq::make_standard_case(m, p, delta);
  r.verdict = sq::check_smooth(ag);
  r.match = r.expectation.exp == sq::Expectation::NoExpectation
                ? true
                : r.verdict.smooth == sq::expects_smooth(r.expectation.exp);

  sq::json j = sq::case_to_json(r);
  j["schema"] = sq::kReportSchema;
  j["command"] = "case";
  std::string text = sq::case_line(r) + "\n";
  if (r.verdict.witness) {
    const auto& w = *r.verdict.witness;
    text += "  witness " + w.point.str() + ": |Stab| = " +
            std::to_string(w.stab_order()) + ", reflection subgroup order " +
            std::to_string(w.reflection_subgroup_order()) + "\n";
    for (const auto& n : w.stab_names) text += "    " + n + "\n";
  }
  emit(out, j, text);
  return r.match ? 0 : 1;
}

int run_custom(const std::string& path, const OutputOptions& out) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open config file: " + path);
  int ring = 0;
  sq::Model model = sq::Model::E2Standard;
  bool have_model = false;
  std::vector<std::string> gen_strs, delta_strs;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "ring") ring = std::stoi(val);
    else if (key == "model") {
      if (val == "e2") model = sq::Model::E2Standard;
      else if (val == "sumzero") model = sq::Model::SumZeroE3;
      else throw CLI::ValidationError("model must be e2 or sumzero");
      have_model = true;
    } else if (key == "generator") gen_strs.push_back(val);
    else if (key == "delta") delta_strs.push_back(val);
    else throw CLI::ValidationError("unknown config key: " + key);
  }
  if (ring == 0 || !have_model || gen_strs.empty())
    throw CLI::ValidationError("config needs ring, model and at least one generator");

  sq::Surface surf = sq::make_surface(ring, model);
  std::vector<sq::Mat2c> gens;
  for (const auto& s : gen_strs) gens.push_back(parse_mat2(s, ring));
  sq::MatrixGroup g = sq::close_group(surf, gens);
  std::vector<sq::TorsionVector> dgens;
  for (const auto& s : delta_strs) dgens.push_back(parse_torsion(s));
  sq::DeltaGroup delta = close_delta(g, dgens);
  sq::AffineGroup ag{surf, g, delta};
  sq::SmoothnessVerdict v = sq::check_smooth(ag);

  sq::json j{{"schema", sq::kReportSchema},
             {"command", "custom"},
             {"group_order", g.size()},
             {"delta_order", delta.order()},
             {"verdict", v.smooth ? "smooth" : "not smooth"},
             {"witness", sq::witness_to_json(v.witness)}};
  std::ostringstream text;
  text << "custom action: group order " << g.size() << ", kernel order "
       << delta.order() << ": " << (v.smooth ? "smooth" : "not smooth") << "\n";
  if (v.witness) {
    text << "  witness " << v.witness->point.str() << ": |Stab| = "
         << v.witness->stab_order() << ", reflection subgroup order "
         << v.witness->reflection_subgroup_order() << "\n";
    for (const auto& n : v.witness->stab_names) text << "    " << n << "\n";
  }
  emit(out, j, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact smoothness checker for finite group quotients of abelian surfaces"};
  app.require_subcommand(1);
  // let the global flags (--json, --max-torsion, --seed) appear after the
  // subcommand name as well
  app.fallthrough();

  OutputOptions out;
  long long torsion_bound = 6;
  std::uint64_t seed = 1;
  app.add_flag("--json", out.json, "emit a JSON report");
  app.add_option("--max-torsion", torsion_bound, "torsion bound for kernel enumeration")
      ->check(CLI::Range(1, 12));
  app.add_option("--seed", seed, "seed for the sampling cross-check");

  auto* ccl = app.add_subcommand("classify", "run the full case sweep");
  bool explore_cm = false;
  bool no_spot = false;
  ccl->add_flag("--explore-cm", explore_cm,
                "also rerun the p=m cases labeled with a CM curve");
  ccl->add_flag("--no-spot-check", no_spot, "skip the sampling cross-check");

  auto* cca = app.add_subcommand("case", "decide one case");
  int m = 0, p = 0;
  std::string delta_spec;
  cca->add_option("--m", m, "order m")->required();
  cca->add_option("--p", p, "divisor p")->required();
  cca->add_option("--delta", delta_spec,
                  "kernel: 'trivial', an index from `deltas`, or generators "
                  "'(1/2,1/2,1/2,1/2);(...)'");

  auto* cde = app.add_subcommand("deltas", "list admissible kernels of a case");
  cde->add_option("--m", m, "order m")->required();
  cde->add_option("--p", p, "divisor p")->required();

  app.add_subcommand("identities", "verify the conjugation identities");
  app.add_subcommand("example-c", "verify the exceptional order-16 example");
  app.add_subcommand("branch", "compute the branch divisor components");

  auto* ccu = app.add_subcommand("custom", "decide a user-defined action");
  std::string config_path;
  ccu->add_option("config", config_path, "key=value config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 64;
  }

  try {
    if (app.got_subcommand("classify")) {
      sq::ClassifyOptions opt;
      opt.torsion_bound = torsion_bound;
      opt.seed = seed;
      opt.spot_check = !no_spot;
      opt.explore_cm_pm = explore_cm;
      sq::ClassifyReport rep = sq::run_classification(opt);
      emit(out, sq::classify_to_json(rep), sq::classify_to_text(rep));
      if (!rep.invariants_ok) return 2;
      return rep.all_match ? 0 : 1;
    }
    if (app.got_subcommand("case")) return run_case(m, p, delta_spec, out, torsion_bound);
    if (app.got_subcommand("deltas")) {
      if (m == 2 && p == 2) {
        std::cout << "G(2,2) excluded: the representation is reducible\n";
        return 0;
      }
      auto ds = sq::case_deltas(m, p, torsion_bound);
      emit(out, sq::deltas_to_json(m, p, ds), sq::deltas_to_text(m, p, ds));
      return 0;
    }
    if (app.got_subcommand("identities")) {
      auto checks = sq::verify_matrix_identities();
      emit(out, sq::identities_to_json(checks), sq::identities_to_text(checks));
      for (const auto& c : checks)
        if (!c.pass) return 1;
      return 0;
    }
    if (app.got_subcommand("example-c")) {
      sq::ExampleCReport r = sq::verify_example_c();
      emit(out, sq::example_c_to_json(r), sq::example_c_to_text(r));
      return r.all() ? 0 : 1;
    }
    if (app.got_subcommand("branch")) {
      sq::BranchReport r = sq::branch_locus_report();
      emit(out, sq::branch_to_json(r), sq::branch_to_text(r));
      return r.all() ? 0 : 1;
    }
    if (app.got_subcommand("custom")) return run_custom(config_path, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 64;
}

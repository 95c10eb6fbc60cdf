/*
 * Copyright 2026 The legkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <legkit/catalog.hpp>
#include <legkit/json_io.hpp>
#include <legkit/reduction.hpp>

namespace {

using namespace legkit;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  std::string catalog_name;
  std::string spec_file;
  std::uint64_t seed = 0;
  Index samples = 10;
  std::string json_out;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

/// Emit the buffered report once: stdout plus the optional --json file.
void emit(const Json& report, const std::string& json_out) {
  const std::string text = report.dump(2);
  std::cout << text << "\n";
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    out << text << "\n";
  }
}

ParamVariety load_variety(const CommonOpts& opts) {
  if (!opts.catalog_name.empty()) return build_catalog(opts.catalog_name);
  if (!opts.spec_file.empty()) return variety_from_json(read_json_file(opts.spec_file));
  throw ParseError("pass --catalog NAME or --spec FILE");
}

void add_source_opts(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--catalog", opts.catalog_name, "built-in variety name");
  cmd->add_option("--spec", opts.spec_file, "variety JSON file");
  cmd->add_option("--seed", opts.seed, "deterministic sampling seed");
  cmd->add_option("--json", opts.json_out, "also write the report to this file");
}

int run_check(const CommonOpts& opts) {
  ParamVariety x = load_variety(opts);
  VarietyReport report = legendrian_check(x, opts.samples, opts.seed);
  Json j = to_json(report);
  j["command"] = "check";
  emit(j, opts.json_out);
  return report.pass() ? kExitPass : kExitCheckFailed;
}

int run_ideal(const CommonOpts& opts, Index oversample) {
  ParamVariety x = load_variety(opts);
  const Index dim = x.ambient().dim();
  const Index minimum = dim * (dim + 1);  // 2 * number of quadric monomials
  if (oversample <= 0) oversample = minimum;
  auto quadrics = interpolate_quadrics(x, oversample, opts.seed);
  std::vector<RatMatrix> images;
  images.reserve(quadrics.size());
  for (const auto& q : quadrics) images.push_back(rho(q));
  const BracketClosure closure = is_bracket_closed(images);
  Json j;
  j["command"] = "ideal";
  j["label"] = x.label();
  j["i2_dim"] = quadrics.size();
  j["rho_bracket_closed"] = closure.closed;
  Json basis = Json::array();
  for (const auto& q : quadrics) basis.push_back(to_json(q.M));
  j["quadric_matrices"] = std::move(basis);
  emit(j, opts.json_out);
  return closure.closed ? kExitPass : kExitCheckFailed;
}

int run_stabilizer(const CommonOpts& opts) {
  ParamVariety x = load_variety(opts);
  StabilizerAlgebra stab = stabilizer_algebra(x, opts.samples, opts.seed);
  const BracketClosure closure = is_bracket_closed(stab.basis);
  const bool has_id = stab.contains(rat_identity(x.ambient().dim()));
  // record the sp/wsp split behaviour of every basis element
  bool split_inside = true;
  for (const auto& g : stab.basis) {
    auto split = sp_wsp_split(g, x.ambient());
    split_inside = split_inside && stab.contains(split.g_plus) && stab.contains(split.g_minus);
  }
  Json j;
  j["command"] = "stabilizer";
  j["label"] = x.label();
  j["stab_dim"] = stab.dim();
  j["bracket_closed"] = closure.closed;
  j["contains_identity"] = has_id;
  j["split_parts_inside"] = split_inside;
  emit(j, opts.json_out);
  return (closure.closed && has_id) ? kExitPass : kExitCheckFailed;
}

int run_toric_classify(int dim, long max_weight, const std::string& json_out) {
  auto tuples = classify_smooth_candidates(dim, max_weight);
  Json j;
  j["command"] = "toric classify";
  j["dim"] = dim;
  j["max_weight"] = max_weight;
  j["tuples"] = tuples;
  Json verdicts = Json::array();
  for (const auto& t : tuples) verdicts.push_back(vertex_smoothness_test(WeightSystem(t)).pass());
  j["verdicts"] = std::move(verdicts);
  emit(j, json_out);
  return kExitPass;
}

std::vector<long> parse_weights(const std::string& text) {
  std::vector<long> a;
  std::string token;
  for (char c : text + ",") {
    if (c == ',') {
      if (!token.empty()) a.push_back(std::stol(token));
      token.clear();
    } else {
      token += c;
    }
  }
  return a;
}

int run_toric_build(const std::string& weights, bool check, const CommonOpts& opts) {
  ParamVariety x = build_toric_legendrian(parse_weights(weights));
  Json j = to_json(x);
  j["command"] = "toric build";
  bool pass = true;
  if (check) {
    VarietyReport report = legendrian_check(x, opts.samples, opts.seed);
    j["report"] = to_json(report);
    pass = report.pass();
  }
  emit(j, opts.json_out);
  return pass ? kExitPass : kExitCheckFailed;
}

int run_matpair_check(int m, const std::string& what, const std::string& flavor_name,
                      const CommonOpts& opts) {
  PairFlavor flavor = PairFlavor::Full;
  if (flavor_name == "sym" || flavor_name == "symmetric") flavor = PairFlavor::Symmetric;
  else if (flavor_name == "skew") flavor = PairFlavor::Skew;
  else if (!flavor_name.empty() && flavor_name != "full")
    throw ParseError("unknown flavor " + flavor_name);

  Json j;
  j["command"] = "matpair check";
  j["m"] = m;
  j["what"] = what;
  bool pass = true;

  if (what == "xinv") {
    ParamVariety x = build_xinv_variety(m, flavor);
    VarietyReport report = legendrian_check(x, opts.samples, opts.seed);
    pass = report.pass();
    Index battery_fail = 0;
    if (flavor == PairFlavor::Full) {
      for (Index i = 0; i < opts.samples; ++i) {
        RatMatrix g = random_unimodular(m, opts.seed, static_cast<std::uint64_t>(i));
        if (!equation_battery(xinv_point(g)).all()) ++battery_fail;
      }
    }
    pass = pass && battery_fail == 0;
    j["report"] = to_json(report);
    j["battery_failures"] = battery_fail;
  } else if (what.rfind("xdeg:", 0) == 0) {
    const int k = std::stoi(what.substr(5));
    ParamVariety x = build_xdeg_variety(m, k);
    VarietyReport report = legendrian_check(x, opts.samples, opts.seed);
    MatrixPairSpec spec(m, PairFlavor::Full);
    Index member_fail = 0;
    for (Index i = 0; i < opts.samples; ++i)
      if (!xdeg_membership(spec.unflatten(sample_point(x, opts.seed, static_cast<std::uint64_t>(i))), k))
        ++member_fail;
    pass = report.pass() && member_fail == 0;
    j["report"] = to_json(report);
    j["membership_failures"] = member_fail;
  } else if (what == "y") {
    Index fail = 0;
    for (Index i = 0; i < opts.samples; ++i) {
      RatMatrix g = random_unimodular(m, opts.seed, static_cast<std::uint64_t>(i));
      const Rational mu = small_rational(opts.seed, static_cast<std::uint64_t>(i), 11);
      if (!y_membership(apply_psi(mu, xinv_point(g))).member) ++fail;
    }
    pass = fail == 0;
    j["membership_failures"] = fail;
  } else {
    throw ParseError("--what must be xinv, xdeg:K or y");
  }
  j["pass"] = pass;
  emit(j, opts.json_out);
  return pass ? kExitPass : kExitCheckFailed;
}

int run_matpair_s6(Index trials, std::uint64_t seed, bool symbolic,
                   const std::string& json_out) {
  S6Report report = s6_identity_check(trials, seed, symbolic);
  Json j;
  j["command"] = "matpair s6";
  j["trials"] = report.trials;
  j["violations"] = report.violations;
  j["symbolic"] = symbolic;
  j["pass"] = report.pass;
  emit(j, json_out);
  return report.pass ? kExitPass : kExitCheckFailed;
}

int run_matpair_probe(int m, int k, const std::string& json_out) {
  SingularityProbe probe = singularity_probe(m, k);
  Json j;
  j["command"] = "matpair probe";
  j["m"] = m;
  j["k"] = k;
  j["direction"] = to_json(probe.direction);
  j["in_orbit"] = probe.in_orbit;
  j["curve_certified"] = probe.curve_certified;
  j["pass"] = probe.in_orbit && probe.curve_certified;
  emit(j, json_out);
  return (probe.in_orbit && probe.curve_certified) ? kExitPass : kExitCheckFailed;
}

int run_reduce(const CommonOpts& opts, const std::string& eta_file, double tol) {
  ParamVariety x = load_variety(opts);
  RatVector eta = vector_from_json(read_json_file(eta_file));
  HyperplaneSpec hs(x.ambient(), eta);
  FloatTolerance tolerance;
  tolerance.residual_bound = tol;
  HyperplaneReduceReport report = hyperplane_reduce(x, hs, opts.samples, opts.seed, tolerance);
  Json j;
  j["command"] = "reduce";
  j["label"] = x.label();
  j["samples"] = report.samples;
  j["solved"] = report.solved;
  j["skipped"] = report.skipped;
  j["expected_dim"] = report.expected_dim;
  Json trials = Json::array();
  for (const auto& t : report.trials) {
    if (!t.solved) continue;
    Json tj;
    tj["reduced_dim"] = t.reduced_dim;
    tj["omega_residual"] = t.omega_residual;
    tj["root_residual"] = t.root_residual;
    trials.push_back(std::move(tj));
  }
  j["trials"] = std::move(trials);
  j["pass"] = report.pass;
  if (!report.failure.empty()) j["failure"] = report.failure;
  emit(j, opts.json_out);
  return report.pass ? kExitPass : kExitCheckFailed;
}

int run_extend(const std::string& f_file, const std::string& z_file,
               const CommonOpts& opts) {
  const Json fj = read_json_file(f_file);
  const int nvars = fj.at("nvars").get<int>();
  LaurentPoly f = laurent_from_json(fj.at("poly"), nvars);
  const Json zj = read_json_file(z_file);
  const int params = zj.at("params").get<int>();
  LaurentMap zhat;
  for (const auto& comp : zj.at("map")) zhat.push_back(laurent_from_json(comp, params));
  ParamVariety x = conormal_extend(f, zhat, zj.value("label", std::string("conormal")));
  VarietyReport report = legendrian_check(x, opts.samples, opts.seed);
  Json j = to_json(x);
  j["command"] = "extend";
  j["report"] = to_json(report);
  emit(j, opts.json_out);
  return report.pass() ? kExitPass : kExitCheckFailed;
}

int run_join(const std::string& a_file, const std::string& b_file, bool check,
             const CommonOpts& opts) {
  ParamVariety a = variety_from_json(read_json_file(a_file));
  ParamVariety b = variety_from_json(read_json_file(b_file));
  ParamVariety joined = join_legendrian(a, b);
  Json j = to_json(joined);
  j["command"] = "join";
  bool pass = true;
  if (check) {
    VarietyReport report = legendrian_check(joined, opts.samples, opts.seed);
    j["report"] = to_json(report);
    pass = report.pass();
  }
  emit(j, opts.json_out);
  return pass ? kExitPass : kExitCheckFailed;
}

int run_catalog_list(const std::string& json_out) {
  Json j;
  j["command"] = "catalog list";
  Json entries = Json::array();
  for (const auto& entry : catalog()) {
    Json e;
    e["name"] = entry.name;
    e["description"] = entry.description;
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  emit(j, json_out);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certification toolkit for Legendrian subvarieties"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* check = app.add_subcommand("check", "Lagrangian certification of a variety");
  add_source_opts(check, opts);
  check->add_option("--samples", opts.samples, "number of sample points");

  Index oversample = 0;
  auto* ideal = app.add_subcommand("ideal", "quadrics vanishing on a variety");
  add_source_opts(ideal, opts);
  ideal->add_option("--oversample", oversample, "evaluation rows (default 2x monomials)");

  auto* stab = app.add_subcommand("stabilizer", "sampled stabilizer algebra");
  add_source_opts(stab, opts);
  stab->add_option("--samples", opts.samples, "number of sample points");

  auto* toric = app.add_subcommand("toric", "toric families");
  toric->require_subcommand(1);
  int dim = 2;
  long max_weight = 12;
  std::string toric_json;
  auto* classify = toric->add_subcommand("classify", "enumerate smooth candidates");
  classify->add_option("--dim", dim, "variety dimension (2..5)")->required();
  classify->add_option("--max-weight", max_weight, "bound on the leading weight")->required();
  classify->add_option("--json", toric_json, "write report to file");
  std::string weights;
  bool do_check = false;
  auto* tbuild = toric->add_subcommand("build", "build one toric variety");
  tbuild->add_option("--weights", weights, "comma-separated tuple, e.g. 2,1,1")->required();
  tbuild->add_flag("--check", do_check, "run the Lagrangian certification");
  tbuild->add_option("--samples", opts.samples, "samples for --check");
  tbuild->add_option("--seed", opts.seed, "sampling seed");
  tbuild->add_option("--json", opts.json_out, "write report to file");

  auto* matpair = app.add_subcommand("matpair", "matrix-pair families");
  matpair->require_subcommand(1);
  int m = 3, kk = 0;
  std::string what = "xinv", flavor = "full", mp_json;
  Index trials = 25;
  bool symbolic = false;
  std::uint64_t mp_seed = 0;
  auto* mcheck = matpair->add_subcommand("check", "certify a matrix-pair family");
  mcheck->add_option("--m", m, "matrix size")->required();
  mcheck->add_option("--what", what, "xinv, xdeg:K or y");
  mcheck->add_option("--flavor", flavor, "full, sym or skew");
  mcheck->add_option("--samples", opts.samples, "number of samples");
  mcheck->add_option("--seed", opts.seed, "sampling seed");
  mcheck->add_option("--json", opts.json_out, "write report to file");
  auto* ms6 = matpair->add_subcommand("s6", "spinor-chart quadric identity");
  ms6->add_option("--trials", trials, "number of random trials");
  ms6->add_option("--seed", mp_seed, "sampling seed");
  ms6->add_flag("--symbolic", symbolic, "full symbolic expansion instead of trials");
  ms6->add_option("--json", mp_json, "write report to file");
  auto* mprobe = matpair->add_subcommand("probe", "degenerate tangent direction probe");
  mprobe->add_option("--m", m, "matrix size (>= 4)")->required();
  mprobe->add_option("--k", kk, "rank parameter")->required();
  mprobe->add_option("--json", mp_json, "write report to file");

  std::string eta_file;
  double tol = 1e-8;
  auto* reduce = app.add_subcommand("reduce", "hyperplane section and reduction");
  add_source_opts(reduce, opts);
  reduce->add_option("--eta", eta_file, "covector JSON file")->required();
  reduce->add_option("--samples", opts.samples, "number of section trials");
  reduce->add_option("--tol", tol, "residual bound");

  std::string f_file, z_file;
  auto* extend = app.add_subcommand("extend", "conormal extension of a hypersurface");
  extend->add_option("--hypersurface", f_file, "equation JSON file")->required();
  extend->add_option("--param", z_file, "cone parametrization JSON file")->required();
  extend->add_option("--samples", opts.samples, "samples for the certification");
  extend->add_option("--seed", opts.seed, "sampling seed");
  extend->add_option("--json", opts.json_out, "write report to file");

  std::string a_file, b_file;
  bool join_check = true;
  auto* join = app.add_subcommand("join", "join of two parametrized varieties");
  join->add_option("--a", a_file, "first variety JSON")->required();
  join->add_option("--b", b_file, "second variety JSON")->required();
  join->add_flag("--check,!--no-check", join_check, "run the certification");
  join->add_option("--samples", opts.samples, "samples for --check");
  join->add_option("--seed", opts.seed, "sampling seed");
  join->add_option("--json", opts.json_out, "write report to file");

  auto* cat = app.add_subcommand("catalog", "built-in varieties");
  cat->require_subcommand(1);
  std::string cat_json;
  auto* list = cat->add_subcommand("list", "list catalog entries");
  list->add_option("--json", cat_json, "write report to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check) return run_check(opts);
    if (*ideal) return run_ideal(opts, oversample);
    if (*stab) return run_stabilizer(opts);
    if (*classify) return run_toric_classify(dim, max_weight, toric_json);
    if (*tbuild) return run_toric_build(weights, do_check, opts);
    if (*mcheck) return run_matpair_check(m, what, flavor, opts);
    if (*ms6) return run_matpair_s6(trials, mp_seed, symbolic, mp_json);
    if (*mprobe) return run_matpair_probe(m, kk, mp_json);
    if (*reduce) return run_reduce(opts, eta_file, tol);
    if (*extend) return run_extend(f_file, z_file, opts);
    if (*join) return run_join(a_file, b_file, join_check, opts);
    if (*list) return run_catalog_list(cat_json);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

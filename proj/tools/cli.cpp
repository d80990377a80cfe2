#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "icrt/dimension.hpp"
#include "icrt/io.hpp"
#include "icrt/measure.hpp"
#include "icrt/parallel.hpp"
#include "icrt/params.hpp"
#include "icrt/rtree.hpp"
#include "icrt/stats.hpp"
#include "icrt/stickbreak.hpp"
#include "icrt/verify.hpp"
#include "json.hpp"

namespace icrt::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FamilyOptions {
  std::string family = "brownian";
  double alpha = 0.0;
  double theta0 = 0.0;
  std::string weights;
  std::size_t atoms = 100000;
};

struct SimOptions {
  std::size_t cuts = 1000;
  double horizon = 0.0;     // 0: stop by cut count
  std::string algorithm = "new";
  bool allow_unknown_tail = false;
};

struct Options {
  FamilyOptions fam;
  SimOptions sim;
  std::uint64_t seed = 1;
  std::size_t reps = 1;
  unsigned workers = 1;
  std::string out;
  std::string format = "json";
  // params
  int j_max = 40;
  int criterion_n = 16;
  // dims / export
  std::string input;
  double length = 0.0;      // 0: whole tree
  std::string eps_min = "auto", eps_max = "auto";
  std::size_t eps_points = 8;
  std::size_t points = 100;
  bool dot = false;
  // verify
  std::string lemma;
  std::size_t check_reps = 1000;
  double significance = 0.01;
  std::string l_grid, x_grid, y_grid, k_grid, t_grid;
  double urn_a0 = 5.0, urn_m0 = 10.0;
  std::size_t urn_steps = 1000;
  std::string weight_seq = "ones";
  double p = 0.3;
  std::size_t steps = 100000;
  bool corrupt_glue = false, same_sampler = false, quenched = false;
  double pizza_scale = 4.0;
};

json num(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number in --") + what + ": '" + cell + "'");
    }
  }
  return v;
}

ThetaFamily make_family(const FamilyOptions& f) {
  try {
    if (f.family == "brownian") return ThetaFamily::brownian();
    if (f.family == "harmonic") return ThetaFamily::harmonic();
    if (f.family == "powerlaw") return ThetaFamily::power_law(f.alpha);
    if (f.family == "explicit") return ThetaFamily::explicit_weights(f.theta0, parse_list(f.weights, "weights"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown family '" + f.family + "'");
}

std::size_t truncation(const ThetaFamily& fam, std::size_t atoms) {
  if (fam.kind == Family::brownian) return 0;
  if (fam.kind == Family::explicit_weights) return fam.weights.size();
  return atoms;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path out_dir(const Options& o) {
  fs::path dir = o.out.empty() ? fs::path("icrt_out") : fs::path(o.out);
  fs::create_directories(dir);
  return dir;
}

// params --------------------------------------------------------------------

int cmd_params(const Options& o, std::ostream& out) {
  const ThetaFamily fam = make_family(o.fam);
  const ThetaRealization theta = make_theta(fam, std::min<std::size_t>(truncation(fam, o.fam.atoms), 1000));
  const ValidationReport report = validate(theta, fam);
  // a finite explicit list has bounded expected mass: no scale X_m exists
  // beyond sum theta_i and the dimension ratio is degenerate
  CriterionVerdict crit;
  std::string crit_error, dims_error;
  try {
    crit = compactness_criterion(fam, o.criterion_n);
  } catch (const std::runtime_error& e) {
    crit_error = e.what();
  }
  DimensionReport dims;
  try {
    dims = theoretical_dimensions(fam, o.j_max);
  } catch (const std::runtime_error& e) {
    dims_error = e.what();
  }

  std::ostringstream profile;
  profile << "#schema_version=" << kSchemaVersion << "\nl,expected_mass,psi,sandwich_ratio\n";
  for (int j = -4; j <= 40; j += 2) {
    const double l = std::ldexp(1.0, j);
    const double e = expected_mass(fam, l), ps = psi(fam, l);
    profile << format_double(l) << ',' << format_double(e) << ',' << format_double(ps) << ','
            << format_double(l * e / ps) << '\n';
  }
  std::ostringstream scales;
  scales << "#schema_version=" << kSchemaVersion << "\nn,m,log_scale,term\n";
  for (std::size_t n = 0; n < crit.terms.size(); ++n)
    scales << (n + 1) << ',' << format_double(std::ldexp(1.0, static_cast<int>(n) + 1)) << ','
           << format_double(crit.log_scale[n]) << ',' << format_double(crit.terms[n]) << '\n';

  json j;
  j["family"] = fam.name();
  if (fam.kind == Family::power_law) j["alpha"] = fam.alpha;
  j["theta0"] = std::sqrt(fam.drift());
  json v = json::object();
  for (const auto& item : report.items) v[item.name] = to_string(item.status);
  j["validation"] = v;
  json c;
  if (!crit_error.empty()) c["error"] = crit_error;
  c["verdict"] = to_string(crit.verdict);
  c["N"] = crit.N;
  c["partial_sum"] = num(crit.partial_sum);
  c["last_term"] = crit.terms.empty() ? json(nullptr) : num(crit.terms.back());
  c["max_ratio"] = num(crit.max_ratio);
  c["min_ratio"] = num(crit.min_ratio);
  c["integral_mass"] = num(crit.integral_mass);
  c["integral_psi"] = num(crit.integral_psi);
  c["quadrature_consistent"] = crit.quadrature_consistent;
  c["sandwich_ok"] = crit.sandwich_ok;
  j["criterion"] = c;
  if (dims_error.empty())
    j["dimensions"] = json::parse(dimension_report_json(dims));
  else
    j["dimensions"] = {{"error", dims_error}};
  const std::string text = j.dump(1) + "\n";

  if (!o.out.empty()) {
    const fs::path dir = out_dir(o);
    write_file(dir / "params.json", text);
    write_file(dir / "profile.csv", profile.str());
    write_file(dir / "scales.csv", scales.str());
  }
  if (o.format == "csv")
    out << profile.str();
  else
    out << text;
  return ok;
}

// simulate -------------------------------------------------------------------

struct Replicate {
  CutSequence cuts;
  MuRealization mu;
};

ThetaRealization checked_theta(const ThetaFamily& fam, const Options& o) {
  ThetaRealization theta = make_theta(fam, truncation(fam, o.fam.atoms));
  const ValidationReport report = validate(theta, fam);
  for (const auto& item : report.items) {
    // the override covers the checks a finite list cannot settle
    const bool tail_item = item.name == "theta0_or_divergent" || item.name == "linear_tail";
    if (tail_item && o.sim.allow_unknown_tail) continue;
    if (item.status == Status::fail) throw UsageError("parameter check " + item.name + " failed: " + item.detail);
    if (item.status == Status::unknown)
      throw UsageError("parameter check " + item.name +
                       " is undecidable for this input; pass --allow-unknown-tail to simulate anyway");
  }
  return theta;
}

StopRule stop_rule(const SimOptions& s) {
  if (s.horizon > 0.0) return StopRule::horizon(s.horizon);
  if (s.cuts == 0) throw UsageError("--cuts must be positive");
  return StopRule::cuts(s.cuts);
}

Replicate simulate_one(const ThetaRealization& theta, const SimOptions& s, std::uint64_t seed, std::size_t rep) {
  const StopRule stop = stop_rule(s);
  Rng crng = Rng::stream(seed, "cuts", rep);
  if (s.algorithm == "classical") {
    ClassicalSample cs = sample_cuts_classical(theta, stop, crng);
    return {std::move(cs.cuts), std::move(cs.mu)};
  }
  Rng mrng = Rng::stream(seed, "mu", rep);
  MuRealization mu = sample_mu(theta, mrng, s.horizon > 0.0 ? s.horizon : std::numeric_limits<double>::infinity());
  CutSequence cuts = sample_cuts_new(mu, stop, crng);
  return {std::move(cuts), std::move(mu)};
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const ThetaFamily fam = make_family(o.fam);
  if (o.sim.algorithm != "new" && o.sim.algorithm != "classical")
    throw UsageError("--algorithm must be new or classical");
  if (o.reps == 0) throw UsageError("--reps must be positive");
  stop_rule(o.sim);
  const ThetaRealization theta = checked_theta(fam, o);
  const fs::path dir = out_dir(o);

  std::vector<json> rows(o.reps);
  parallel_for(o.reps, o.workers, [&](std::size_t r) {
    Replicate rep = simulate_one(theta, o.sim, o.seed, r);
    std::ostringstream csv;
    write_cuts_csv(csv, rep.cuts);
    const std::string stem = "cuts_" + std::to_string(r);
    write_file(dir / (stem + ".csv"), csv.str());
    write_file(dir / (stem + ".json"), cuts_sidecar_json(rep.cuts, fam, theta, rep.mu));
    const IcrtTree tree = IcrtTree::build(rep.cuts);
    json row;
    row["rep"] = r;
    row["cuts"] = rep.cuts.size();
    row["extent"] = rep.cuts.extent();
    row["total_mass"] = rep.cuts.size() ? rep.cuts.cum_weight.back() : 0.0;
    double height = 0.0;
    for (std::size_t n = 1; n <= tree.segments(); ++n) height = std::max(height, tree.depth(tree.point(tree.cut(n))));
    row["height"] = height;
    row["diameter"] = tree.diameter(tree.extent());
    rows[r] = std::move(row);
  });

  std::vector<double> n_cuts, extent, diam;
  for (const auto& row : rows) {
    n_cuts.push_back(row["cuts"].get<double>());
    extent.push_back(row["extent"].get<double>());
    diam.push_back(row["diameter"].get<double>());
  }
  json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["family"] = fam.name();
  summary["algorithm"] = o.sim.algorithm;
  summary["seed"] = o.seed;
  summary["reps"] = o.reps;
  summary["theta_digest"] = theta_digest(theta);
  summary["residual_square_mass"] = theta.residual_square_mass;
  if (o.sim.horizon > 0.0)
    summary["horizon"] = o.sim.horizon;
  else
    summary["max_cuts"] = o.sim.cuts;
  summary["mean_cuts"] = stats::mean(n_cuts);
  summary["mean_extent"] = stats::mean(extent);
  summary["mean_diameter"] = stats::mean(diam);
  summary["replications"] = rows;
  write_file(dir / "summary.json", summary.dump(1) + "\n");
  out << "wrote " << o.reps << " replication(s) to " << dir.string() << "\n";
  return ok;
}

// dims -----------------------------------------------------------------------

struct LoadedRun {
  ThetaFamily family;
  CutSequence cuts;
  MuRealization mu;
};

LoadedRun load_run(const std::string& input) {
  fs::path csv = input;
  if (fs::is_directory(csv)) csv /= "cuts_0.csv";
  if (!fs::exists(csv)) throw UsageError("missing input artifact " + csv.string());
  fs::path sidecar = csv;
  sidecar.replace_extension(".json");
  if (!fs::exists(sidecar)) throw UsageError("missing sidecar " + sidecar.string());
  std::ifstream in(csv, std::ios::binary);
  const std::string side = read_file(sidecar);
  return {family_from_sidecar(side), read_cuts_csv(in), mu_from_sidecar(side)};
}

double eps_bound(const std::string& s, double fallback) {
  if (s == "auto") return fallback;
  const auto v = parse_list(s, "eps");
  if (v.size() != 1 || !(v[0] > 0.0)) throw UsageError("eps bounds must be 'auto' or a positive length");
  return v[0];
}

int cmd_dims(const Options& o, std::ostream& out) {
  LoadedRun run;
  if (!o.input.empty()) {
    run = load_run(o.input);
  } else {
    run.family = make_family(o.fam);
    const ThetaRealization theta = checked_theta(run.family, o);
    Replicate rep = simulate_one(theta, o.sim, o.seed, 0);
    run.cuts = std::move(rep.cuts);
    run.mu = std::move(rep.mu);
  }
  const IcrtTree tree = IcrtTree::build(run.cuts);
  const double l = o.length > 0.0 ? o.length : tree.extent();
  if (l > tree.extent()) throw UsageError("--length exceeds the simulated tree");
  const double diam = tree.diameter(l);

  json j;
  j["family"] = run.family.name();
  j["segments"] = tree.segments();
  j["length"] = l;
  j["diameter"] = diam;
  j["theoretical"] = json::parse(dimension_report_json(theoretical_dimensions(run.family, o.j_max)));
  std::ostringstream table;
  table << "#schema_version=" << kSchemaVersion << "\neps,cover_count\n";
  if (diam > 0.0) {
    const double lo = eps_bound(o.eps_min, diam / 200), hi = eps_bound(o.eps_max, diam / 8);
    if (!(lo < hi) || o.eps_points < 2) throw UsageError("eps grid needs eps_min < eps_max and at least 2 points");
    std::vector<double> grid(o.eps_points);
    for (std::size_t i = 0; i < grid.size(); ++i)
      grid[i] = hi * std::pow(lo / hi, static_cast<double>(i) / static_cast<double>(grid.size() - 1));
    BoxRegression box;
    try {
      box = minkowski_regression(tree, l, grid);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    j["box"] = json::parse(box_regression_json(box));
    for (std::size_t i = 0; i < box.eps.size(); ++i)
      table << format_double(box.eps[i]) << ',' << box.counts[i] << '\n';
    Rng rng = Rng::stream(o.seed, "local");
    const LocalDimension loc = local_dimension(tree, run.mu, l, o.points, grid, rng);
    json lj;
    lj["points"] = loc.slopes.size();
    lj["skipped"] = loc.skipped;
    lj["median"] = num(loc.median);
    lj["q25"] = num(loc.q25);
    lj["q75"] = num(loc.q75);
    j["local"] = lj;
  } else {
    j["box"] = nullptr;
    j["local"] = nullptr;
  }
  const std::string text = j.dump(1) + "\n";
  if (!o.out.empty()) {
    const fs::path dir = out_dir(o);
    write_file(dir / "dims.json", text);
    write_file(dir / "box_counts.csv", table.str());
  }
  out << (o.format == "csv" ? table.str() : text);
  return ok;
}

// verify ---------------------------------------------------------------------

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) v.push_back(cell);
  return v;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.lemma.empty()) throw UsageError("--lemma is required");
  CheckSpec spec;
  spec.family = make_family(o.fam);
  spec.atoms = o.fam.atoms;
  spec.reps = o.check_reps;
  spec.alpha = o.significance;
  spec.seed = o.seed;
  spec.workers = o.workers;
  if (!o.l_grid.empty()) spec.l_grid = parse_list(o.l_grid, "l-grid");
  if (!o.x_grid.empty()) spec.x_grid = parse_list(o.x_grid, "x-grid");
  if (!o.y_grid.empty()) spec.y_grid = parse_list(o.y_grid, "y-grid");
  if (!o.t_grid.empty()) spec.t_grid = parse_list(o.t_grid, "t-grid");
  if (!o.k_grid.empty()) {
    spec.k_grid.clear();
    for (double k : parse_list(o.k_grid, "k-grid")) spec.k_grid.push_back(static_cast<int>(k));
  }
  spec.urn_a0 = o.urn_a0;
  spec.urn_m0 = o.urn_m0;
  spec.urn_steps = o.urn_steps;
  spec.weights = o.weight_seq;
  spec.p = o.p;
  spec.steps = o.steps;
  spec.corrupt_glue = o.corrupt_glue;
  spec.same_sampler = o.same_sampler;
  spec.pizza_scale = o.pizza_scale;
  spec.quenched = o.quenched;

  std::vector<std::string> ids = o.lemma == "all" ? lemma_ids() : split(o.lemma);
  std::vector<CheckResult> results;
  try {
    for (const auto& id : ids) {
      spec.lemma = id;
      canonical_lemma(id);
    }
    spec.check();
    for (const auto& id : ids) {
      spec.lemma = id;
      results.push_back(run_check(spec));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::string lines;
  bool all_ok = true;
  for (const auto& r : results) {
    lines += r.to_json() + "\n";
    if (r.verdict == CheckVerdict::fail || r.verdict == CheckVerdict::refused) all_ok = false;
  }
  if (!o.out.empty()) write_file(out_dir(o) / "verify.jsonl", lines);
  out << lines;
  return all_ok ? ok : check_failed;
}

// export ---------------------------------------------------------------------

int cmd_export(const Options& o, std::ostream& out) {
  if (o.input.empty()) throw UsageError("--input is required");
  fs::path csv = o.input;
  if (fs::is_directory(csv)) csv /= "cuts_0.csv";
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw UsageError("missing input artifact " + csv.string());
  const IcrtTree tree = IcrtTree::build(read_cuts_csv(in));
  const double l = o.length > 0.0 ? o.length : tree.extent();
  if (l > tree.extent()) throw UsageError("--length exceeds the tree");

  std::string text;
  if (o.dot) {
    text = tree.to_dot(l);
  } else if (o.format == "csv") {
    std::ostringstream s;
    s << "#schema_version=" << kSchemaVersion << "\nsegment,lo,hi,parent,attach,attach_depth\n";
    for (std::size_t n = 1; n <= tree.segments(); ++n)
      s << n << ',' << format_double(tree.cut(n - 1)) << ',' << format_double(tree.cut(n)) << ','
        << tree.parent(n) << ',' << format_double(tree.attach(n)) << ',' << format_double(tree.attach_depth(n))
        << '\n';
    text = s.str();
  } else {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["extent"] = tree.extent();
    json segs = json::array();
    for (std::size_t n = 1; n <= tree.segments(); ++n)
      segs.push_back({{"segment", n},
                      {"lo", tree.cut(n - 1)},
                      {"hi", tree.cut(n)},
                      {"parent", tree.parent(n)},
                      {"attach", tree.attach(n)},
                      {"attach_depth", tree.attach_depth(n)}});
    j["segments"] = segs;
    text = j.dump(1) + "\n";
  }
  if (!o.out.empty()) {
    const fs::path path = o.out;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_file(path, text);
  } else {
    out << text;
  }
  return ok;
}

// wiring ---------------------------------------------------------------------

void add_family(CLI::App* app, Options& o) {
  app->add_option("--family", o.fam.family, "brownian, powerlaw, harmonic or explicit")
      ->check(CLI::IsMember({"brownian", "powerlaw", "harmonic", "explicit"}));
  app->add_option("--alpha", o.fam.alpha, "power-law exponent in (1/2, 1)");
  app->add_option("--theta0", o.fam.theta0, "drift weight of an explicit family");
  app->add_option("--weights", o.fam.weights, "comma-separated atom weights of an explicit family");
  app->add_option("--atoms", o.fam.atoms, "truncation K for symbolic families");
}

void add_sim(CLI::App* app, Options& o) {
  app->add_option("--cuts", o.sim.cuts, "stop after N cuts");
  app->add_option("--horizon", o.sim.horizon, "keep the cuts <= L instead of a cut count");
  app->add_option("--algorithm", o.sim.algorithm, "new or classical")->check(CLI::IsMember({"new", "classical"}));
  app->add_flag("--allow-unknown-tail", o.sim.allow_unknown_tail,
                "simulate explicit inputs whose divergence condition cannot be decided");
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "root seed");
  app->add_option("--out", o.out, "output directory (file for export)");
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

bool is_subcommand(const CLI::App& app, const std::string& s) {
  for (const auto* sub : app.get_subcommands({})) {
    if (sub->get_name() == s) return true;
  }
  return false;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Simulation and analysis of inhomogeneous continuum random trees", "icrt"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config;
  app.add_option("--config", config, "flat key = value manifest; flags override its values");

  auto* params = app.add_subcommand("params", "analytic profile, compactness criterion and dimensions of a family");
  add_family(params, o);
  add_common(params, o);
  params->add_option("--j-max", o.j_max, "dyadic range of the dimension evaluator");
  params->add_option("--criterion-n", o.criterion_n, "number of dyadic terms of the criterion sum");

  auto* simulate = app.add_subcommand("simulate", "sample cut sequences and write them to disk");
  add_family(simulate, o);
  add_sim(simulate, o);
  add_common(simulate, o);
  simulate->add_option("--reps", o.reps, "replications");
  simulate->add_option("--workers", o.workers, "worker threads (0: all cores)");

  auto* dims = app.add_subcommand("dims", "theoretical and estimated dimensions");
  add_family(dims, o);
  add_sim(dims, o);
  add_common(dims, o);
  dims->add_option("--input", o.input, "directory or cuts CSV written by simulate");
  dims->add_option("--length", o.length, "truncation length l (default: whole tree)");
  dims->add_option("--eps-min", o.eps_min, "smallest radius or 'auto' (diameter/200)");
  dims->add_option("--eps-max", o.eps_max, "largest radius or 'auto' (diameter/8)");
  dims->add_option("--eps-points", o.eps_points, "radii in the geometric grid");
  dims->add_option("--points", o.points, "sampled points for local dimensions");
  dims->add_option("--j-max", o.j_max, "dyadic range of the dimension evaluator");

  auto* verify = app.add_subcommand("verify", "statistical checks of the quantitative bounds");
  add_family(verify, o);
  add_common(verify, o);
  verify->add_option("--lemma", o.lemma, "check id, comma-separated list, or 'all'");
  verify->add_option("--reps", o.check_reps, "replications");
  verify->add_option("--workers", o.workers, "worker threads (0: all cores)");
  verify->add_option("--significance", o.significance, "test level");
  verify->add_option("--l-grid", o.l_grid, "comma-separated scale grid");
  verify->add_option("--x-grid", o.x_grid, "comma-separated truncation levels x");
  verify->add_option("--y-grid", o.y_grid, "comma-separated query coordinates y");
  verify->add_option("--k-grid", o.k_grid, "comma-separated dyadic levels k");
  verify->add_option("--t-grid", o.t_grid, "comma-separated urn deviation levels");
  verify->add_option("--urn-a0", o.urn_a0, "initial urn subtree mass");
  verify->add_option("--urn-m0", o.urn_m0, "initial urn total mass");
  verify->add_option("--urn-steps", o.urn_steps, "urn steps");
  verify->add_option("--weight-seq", o.weight_seq, "strong law weights: ones, linear or geometric")
      ->check(CLI::IsMember({"ones", "linear", "geometric"}));
  verify->add_option("--p", o.p, "strong law success probability");
  verify->add_option("--steps", o.steps, "strong law sequence length");
  verify->add_flag("--corrupt-glue", o.corrupt_glue, "negative control: uniform glue points");
  verify->add_flag("--same-sampler", o.same_sampler, "calibration: compare a sampler with itself");
  verify->add_flag("--quenched", o.quenched, "one mu shared by all replications");
  verify->add_option("--pizza-scale", o.pizza_scale, "reference mean of the domination test times mu[0,x]");

  auto* exp = app.add_subcommand("export", "segment table or graph description of a simulated tree");
  exp->add_option("--input", o.input, "directory or cuts CSV written by simulate");
  exp->add_option("--length", o.length, "truncation length l (default: whole tree)");
  exp->add_flag("--dot", o.dot, "emit a graph description");
  exp->add_option("--out", o.out, "output file (default: stdout)");
  exp->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // splice manifest values in front of the user's flags so the latter win
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
      args.erase(args.begin() + i);
    } else {
      ++i;
    }
  }
  if (!config.empty()) {
    auto sub_at = std::find_if(args.begin(), args.end(), [&](const std::string& a) { return is_subcommand(app, a); });
    if (sub_at != args.end()) {
      CLI::App* sub = app.get_subcommand(*sub_at);
      std::vector<std::string> injected;
      try {
        for (const auto& [key, value] : read_config(config)) {
          const std::string flag = flag_for_key(key);
          const CLI::Option* opt = sub->get_option_no_throw(flag);
          if (opt == nullptr) continue;  // belongs to another subcommand
          if (opt->get_expected_min() == 0) {
            if (value == "true" || value == "1") injected.push_back(flag);
          } else {
            injected.push_back(flag);
            injected.push_back(value);
          }
        }
      } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
      }
      args.insert(sub_at + 1, injected.begin(), injected.end());
    }
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return ok;
    }
    err << "error: " << e.what() << "\n" << "run 'icrt --help' for usage\n";
    return usage;
  }

  try {
    if (params->parsed()) return cmd_params(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (dims->parsed()) return cmd_dims(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (exp->parsed()) return cmd_export(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return check_failed;
  }
  return usage;
}

}  // namespace icrt::cli

#include "icrt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "icrt/io.hpp"
#include "icrt/measure.hpp"
#include "icrt/parallel.hpp"
#include "icrt/rtree.hpp"
#include "icrt/stats.hpp"
#include "icrt/stickbreak.hpp"
#include "json.hpp"

namespace icrt {

void CheckSpec::check() const {
  if (reps < 100) throw std::invalid_argument("check spec: reps must be >= 100");
  if (!(alpha > 0.0 && alpha <= 0.1)) throw std::invalid_argument("check spec: alpha must lie in (0, 0.1]");
}

double CheckResult::stat(const std::string& name) const {
  for (const auto& [k, v] : stats)
    if (k == name) return v;
  throw std::out_of_range("no statistic " + name);
}

std::string CheckResult::to_json() const {
  nlohmann::ordered_json j;
  j["lemma"] = lemma;
  j["verdict"] = to_string(verdict);
  j["reps"] = reps;
  j["seed"] = seed;
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (const auto& [k, v] : stats) {
    if (std::isfinite(v))
      s[k] = v;
    else
      s[k] = nullptr;
  }
  j["stats"] = s;
  if (!detail.empty()) j["detail"] = detail;
  return j.dump();
}

const char* to_string(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::pass: return "pass";
    case CheckVerdict::fail: return "fail";
    case CheckVerdict::monitor: return "monitor";
    case CheckVerdict::refused: return "refused";
  }
  return "?";
}

namespace {

CheckResult start(const CheckSpec& spec, const std::string& id) {
  spec.check();
  CheckResult r;
  r.lemma = id;
  r.reps = spec.reps;
  r.seed = spec.seed;
  return r;
}

// Refuses parameter points outside the admissible set.
bool refuse_if_invalid(const CheckSpec& spec, const ThetaRealization& theta, CheckResult& r) {
  const auto report = validate(theta, spec.family);
  if (report.ok()) return false;
  r.verdict = CheckVerdict::refused;
  for (const auto& it : report.items)
    if (it.status != Status::pass) r.detail += it.name + ": " + to_string(it.status) + "; ";
  return true;
}

double sample_horizon(const ThetaFamily& f, double needed) {
  return f.symbolic_atoms() ? 2.0 * needed + 8.0 : std::numeric_limits<double>::infinity();
}

// One-sided survival test of w against Exp(1) at the deciles. Returns the
// largest excess of empirical over reference survival, and whether any
// excess leaves the band at level alpha.
std::pair<double, bool> survival_excess(const std::vector<double>& w, double alpha) {
  const std::size_t n = w.size();
  double worst = -1.0;
  bool reject = false;
  for (int k = 1; k <= 9; ++k) {
    const double ref = 1.0 - k / 10.0;
    const double t = -std::log(ref);
    std::size_t hits = 0;
    for (double v : w)
      if (v >= t) ++hits;
    const double emp = static_cast<double>(hits) / n;
    worst = std::max(worst, emp - ref);
    if (emp > stats::binomial_upper(ref, n, alpha)) reject = true;
  }
  return {worst, reject};
}

}  // namespace

CheckResult check_distance_domination(const CheckSpec& spec) {
  CheckResult r = start(spec, "distance_domination");
  if (spec.x_grid.empty() || spec.y_grid.empty()) throw std::invalid_argument("distance_domination: empty grid");
  if (!(spec.pizza_scale > 0.0)) throw std::invalid_argument("distance_domination: scale must be positive");
  const ThetaRealization theta = make_theta(spec.family, spec.atoms);
  if (refuse_if_invalid(spec, theta, r)) return r;
  const double ymax = *std::max_element(spec.y_grid.begin(), spec.y_grid.end());
  const double H = sample_horizon(spec.family, ymax);
  std::vector<std::pair<double, double>> pairs;
  for (double x : spec.x_grid)
    for (double y : spec.y_grid) pairs.emplace_back(x, y);
  const std::size_t P = pairs.size(), R = spec.reps;

  MuRealization shared;
  if (spec.quenched) {
    Rng rng = Rng::stream(spec.seed, "domination-mu");
    shared = sample_mu(theta, rng, H);
    for (double x : spec.x_grid)
      if (!(shared.mass(x) > 0.0)) throw std::runtime_error("distance_domination: mu[0,x] = 0 in the quenched sample");
  }
  std::vector<double> w(R * P, 0.0);
  parallel_for(R, spec.workers, [&](std::size_t rep) {
    Rng rng = Rng::stream(spec.seed, "domination", rep);
    MuRealization own;
    if (!spec.quenched) own = sample_mu(theta, rng, H);
    const MuRealization& mu = spec.quenched ? shared : own;
    const CutSequence cuts = sample_cuts_new(mu, StopRule::covering(ymax), rng);
    const IcrtTree tree = IcrtTree::build(cuts);
    for (std::size_t k = 0; k < P; ++k) {
      const auto [x, y] = pairs[k];
      if (y <= x) continue;
      const double m = mu.mass(x);
      if (!(m > 0.0)) continue;  // reference has infinite mean
      const TreePoint py = tree.point(y);
      w[rep * P + k] = tree.distance(py, tree.project(py, x)) * m / spec.pizza_scale;
    }
  });
  const double level = spec.alpha / (9.0 * P);
  bool reject = false;
  double worst = -1.0;
  for (std::size_t k = 0; k < P; ++k) {
    std::vector<double> col(R);
    for (std::size_t rep = 0; rep < R; ++rep) col[rep] = w[rep * P + k];
    const auto [excess, rej] = survival_excess(col, level);
    r.stats.emplace_back("excess[x=" + format_double(pairs[k].first) + ",y=" + format_double(pairs[k].second) + "]",
                         excess);
    worst = std::max(worst, excess);
    reject = reject || rej;
  }
  r.stats.emplace_back("max_excess", worst);
  r.stats.emplace_back("scale", spec.pizza_scale);
  r.verdict = reject ? CheckVerdict::fail : CheckVerdict::pass;
  r.detail = spec.quenched ? "quenched" : "annealed";
  return r;
}

CheckResult check_hausdorff_step(const CheckSpec& spec) {
  CheckResult r = start(spec, "hausdorff_step");
  if (spec.k_grid.empty()) throw std::invalid_argument("hausdorff_step: empty k grid");
  const ThetaRealization theta = make_theta(spec.family, spec.atoms);
  if (refuse_if_invalid(spec, theta, r)) return r;
  std::vector<int> ks = spec.k_grid;
  std::sort(ks.begin(), ks.end());
  if (ks.front() < 1) throw std::invalid_argument("hausdorff_step: k must be >= 1");
  std::vector<double> lo, hi, bound;
  for (int k : ks) {
    const double a = inverse_expected_mass(spec.family, std::ldexp(1.0, k - 1));
    const double b = inverse_expected_mass(spec.family, std::ldexp(1.0, k));
    lo.push_back(a);
    hi.push_back(b);
    bound.push_back(21.0 * std::log(b) / std::ldexp(1.0, k));
  }
  const double L = hi.back();
  const double H = sample_horizon(spec.family, L);
  const std::size_t K = ks.size(), R = spec.reps;
  std::vector<char> violated(R * K, 0);
  std::vector<double> dist(R * K, 0.0);
  parallel_for(R, spec.workers, [&](std::size_t rep) {
    Rng rng = Rng::stream(spec.seed, "hausdorff-step", rep);
    const MuRealization mu = sample_mu(theta, rng, H);
    const CutSequence cuts = sample_cuts_new(mu, StopRule::covering(L), rng);
    const IcrtTree tree = IcrtTree::build(cuts);
    for (std::size_t k = 0; k < K; ++k) {
      const double d = tree.hausdorff_truncation(lo[k], hi[k]);
      dist[rep * K + k] = d;
      violated[rep * K + k] = d > bound[k];
    }
  });
  bool monotone = true;
  double prev = 2.0, last = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    std::size_t v = 0;
    std::vector<double> col;
    for (std::size_t rep = 0; rep < R; ++rep) {
      v += violated[rep * K + k];
      col.push_back(dist[rep * K + k]);
    }
    const double frac = static_cast<double>(v) / R;
    const std::string tag = "[k=" + std::to_string(ks[k]) + "]";
    r.stats.emplace_back("violation" + tag, frac);
    r.stats.emplace_back("bound" + tag, bound[k]);
    r.stats.emplace_back("median_distance" + tag, stats::median(col));
    if (frac > prev) monotone = false;
    prev = frac;
    last = frac;
  }
  r.stats.emplace_back("non_increasing", monotone ? 1.0 : 0.0);
  r.verdict = monotone && last < 0.05 ? CheckVerdict::pass : CheckVerdict::fail;
  return r;
}

CheckResult check_polya_concentration(const CheckSpec& spec) {
  CheckResult r = start(spec, "urn_concentration");
  const double a0 = spec.urn_a0, m0 = spec.urn_m0;
  if (!(a0 > 0.0) || !(a0 <= m0)) throw std::invalid_argument("urn: need 0 < A_0 <= M_0");
  const std::size_t R = spec.reps, T = spec.t_grid.size();
  const double r0 = a0 / m0;
  std::vector<double> sup_dev(R), final_ratio(R);
  parallel_for(R, spec.workers, [&](std::size_t rep) {
    Rng rng = Rng::stream(spec.seed, "urn", rep);
    double A = a0, M = m0, dev = 0.0;
    for (std::size_t n = 0; n < spec.urn_steps; ++n) {
      if (rng.uniform() * M < A) A += 1.0;
      M += 1.0;
      dev = std::max(dev, std::abs(A / M - r0));
    }
    sup_dev[rep] = dev;
    final_ratio[rep] = A / M;
  });
  bool ok = true;
  for (std::size_t k = 0; k < T; ++k) {
    const double t = spec.t_grid[k];
    std::size_t hits = 0;
    for (double d : sup_dev)
      if (d > t * r0) ++hits;
    const double emp = static_cast<double>(hits) / R;
    // increments m_n = 1 for n > 0
    const double bound = 2.0 * std::exp(-t * t / (4.0 * (1.0 + t)) * a0);
    const double limit = bound >= 1.0 ? 1.0 : stats::binomial_upper(bound, R, spec.alpha / T);
    const std::string tag = "[t=" + format_double(t) + "]";
    r.stats.emplace_back("tail" + tag, emp);
    r.stats.emplace_back("bound" + tag, bound);
    if (emp > limit) ok = false;
  }
  const double mean = stats::mean(final_ratio);
  const double se = std::sqrt(stats::variance(final_ratio) / R);
  const double z = stats::normal_quantile(1.0 - spec.alpha / 2.0);
  const bool martingale = std::abs(mean - r0) <= z * se + 1e-15;
  r.stats.emplace_back("final_ratio_mean", mean);
  r.stats.emplace_back("initial_ratio", r0);
  r.stats.emplace_back("clt_halfwidth", z * se);
  r.verdict = ok && martingale ? CheckVerdict::pass : CheckVerdict::fail;
  return r;
}

CheckResult check_strong_lln(const CheckSpec& spec) {
  CheckResult r = start(spec, "strong_lln");
  if (!(spec.p > 0.0 && spec.p < 1.0)) throw std::invalid_argument("strong_lln: p must lie in (0,1)");
  const std::size_t N = spec.steps;
  if (N < 4) throw std::invalid_argument("strong_lln: steps must be >= 4");
  // log a_i for i = 1..N
  std::vector<double> log_a(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double k = static_cast<double>(i + 1);
    if (spec.weights == "ones")
      log_a[i] = 0.0;
    else if (spec.weights == "linear")
      log_a[i] = std::log(k);
    else if (spec.weights == "geometric")
      log_a[i] = k * std::log(2.0);
    else
      throw std::invalid_argument("strong_lln: unknown weights " + spec.weights);
  }
  // hypothesis: sum (a_n / A_n)^2 converges, judged by the increment over the second half
  std::vector<double> log_A(N);
  double acc = -std::numeric_limits<double>::infinity(), series = 0.0, half = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double m = std::max(acc, log_a[i]);
    acc = m + std::log(std::exp(acc - m) + std::exp(log_a[i] - m));
    log_A[i] = acc;
    series += std::exp(2.0 * (log_a[i] - acc));
    if (i + 1 == N / 2) half = series;
  }
  r.stats.emplace_back("series_second_half", series - half);
  if (series - half > 0.01) {
    r.verdict = CheckVerdict::refused;
    r.detail = "sum a_n^2 / A_n^2 does not converge numerically; hypothesis fails";
    return r;
  }
  const std::size_t R = spec.reps, mid = N / 2;
  std::vector<double> at_half(R), at_end(R);
  parallel_for(R, spec.workers, [&](std::size_t rep) {
    Rng rng = Rng::stream(spec.seed, "strong-lln", rep);
    // sums scaled by A_N to stay finite
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      if (rng.uniform() < spec.p) s += std::exp(log_a[i] - log_A[N - 1]);
      if (i + 1 == mid) at_half[rep] = s * std::exp(log_A[N - 1] - log_A[mid - 1]) / spec.p;
    }
    at_end[rep] = s / spec.p;
  });
  const double mean = stats::mean(at_end);
  const double sd_end = std::sqrt(stats::variance(at_end)), sd_half = std::sqrt(stats::variance(at_half));
  const double z = stats::normal_quantile(1.0 - spec.alpha / 2.0);
  const bool centred = std::abs(mean - 1.0) <= z * sd_end / std::sqrt(static_cast<double>(R));
  r.stats.emplace_back("ratio_mean", mean);
  r.stats.emplace_back("sd_half", sd_half);
  r.stats.emplace_back("sd_end", sd_end);
  r.verdict = centred && sd_end < sd_half ? CheckVerdict::pass : CheckVerdict::fail;
  return r;
}

CheckResult check_construction_equivalence(const CheckSpec& spec) {
  CheckResult r = start(spec, "construction_equivalence");
  const ThetaRealization theta = make_theta(spec.family, spec.atoms);
  if (refuse_if_invalid(spec, theta, r)) return r;
  const double H = spec.l_grid.empty() ? 2.0 : spec.l_grid.front();
  const std::size_t R = spec.reps;
  // Y_1, Y_2, #cuts <= H, d(0, Y_3)
  std::vector<double> a(4 * R), b(4 * R);
  auto summarize = [&](const CutSequence& c, double* out) {
    out[0] = c.cuts[0];
    out[1] = c.cuts[1];
    out[2] = static_cast<double>(std::upper_bound(c.cuts.begin(), c.cuts.end(), H) - c.cuts.begin());
    const IcrtTree t = IcrtTree::build(std::span<const double>(c.cuts.data(), 3),
                                       std::span<const double>(c.glue.data(), 2));
    out[3] = t.depth(t.point(c.cuts[2]));
  };
  const StopRule stop = StopRule::covering(H, 3);
  parallel_for(R, spec.workers, [&](std::size_t rep) {
    Rng ra = Rng::stream(spec.seed, "equivalence-new", rep);
    const MuRealization mu = sample_mu(theta, ra);
    CutSequence ca = sample_cuts_new(mu, stop, ra);
    if (spec.corrupt_glue)
      for (std::size_t i = 0; i < ca.size(); ++i) ca.glue[i] = ra.uniform() * ca.cuts[i];
    summarize(ca, &a[4 * rep]);
    if (spec.same_sampler) {
      Rng rb = Rng::stream(spec.seed, "equivalence-new-2", rep);
      const MuRealization mu2 = sample_mu(theta, rb);
      summarize(sample_cuts_new(mu2, stop, rb), &b[4 * rep]);
    } else {
      Rng rb = Rng::stream(spec.seed, "equivalence-classical", rep);
      summarize(sample_cuts_classical(theta, stop, rb).cuts, &b[4 * rep]);
    }
  });
  const char* names[4] = {"Y1", "Y2", "cuts_below_horizon", "depth_Y3"};
  bool ok = true;
  for (int s = 0; s < 4; ++s) {
    std::vector<double> xa(R), xb(R);
    for (std::size_t rep = 0; rep < R; ++rep) {
      xa[rep] = a[4 * rep + s];
      xb[rep] = b[4 * rep + s];
    }
    const auto ks = stats::ks_two_sample(std::move(xa), std::move(xb));
    r.stats.emplace_back(std::string("ks_") + names[s], ks.statistic);
    r.stats.emplace_back(std::string("p_") + names[s], ks.p_value);
    if (ks.p_value < spec.alpha / 4.0) ok = false;
  }
  r.stats.emplace_back("horizon", H);
  r.verdict = ok ? CheckVerdict::pass : CheckVerdict::fail;
  if (spec.corrupt_glue) r.detail = "corrupted glue control";
  if (spec.same_sampler) r.detail = "self calibration";
  return r;
}

CheckResult check_cut_count(const CheckSpec& spec) {
  CheckResult r = start(spec, "cut_count");
  const ThetaRealization theta = make_theta(spec.family, spec.atoms);
  if (refuse_if_invalid(spec, theta, r)) return r;
  std::vector<double> ls = spec.l_grid.empty() ? std::vector<double>{10, 20, 40} : spec.l_grid;
  const double lmax = *std::max_element(ls.begin(), ls.end());
  const std::size_t R = spec.reps, G = ls.size();
  std::vector<char> over(R * G, 0);
  parallel_for(R, spec.workers, [&](std::size_t rep) {
    Rng rng = Rng::stream(spec.seed, "cut-count", rep);
    const MuRealization mu = sample_mu(theta, rng, spec.family.symbolic_atoms() ? lmax : INFINITY);
    const CutSequence c = sample_cuts_new(mu, StopRule::horizon(lmax), rng);
    for (std::size_t g = 0; g < G; ++g) {
      const double n = static_cast<double>(std::upper_bound(c.cuts.begin(), c.cuts.end(), ls[g]) - c.cuts.begin());
      over[rep * G + g] = n > 2.0 * ls[g] * mu.mass(ls[g]);
    }
  });
  bool ok = true;
  for (std::size_t g = 0; g < G; ++g) {
    std::size_t v = 0;
    for (std::size_t rep = 0; rep < R; ++rep) v += over[rep * G + g];
    const double frac = static_cast<double>(v) / R;
    r.stats.emplace_back("exceed[l=" + format_double(ls[g]) + "]", frac);
    if (frac >= 0.01) ok = false;
  }
  r.verdict = ok ? CheckVerdict::pass : CheckVerdict::fail;
  return r;
}

namespace {

// Violation fractions of a per-index predicate over dyadic index windows
// starting at 100, pooled over replications.
CheckResult index_monitor(const CheckSpec& spec, const std::string& id, const char* stream,
                          bool (*violates)(const CutSequence&, std::size_t)) {
  CheckResult r = start(spec, id);
  const ThetaRealization theta = make_theta(spec.family, spec.atoms);
  if (refuse_if_invalid(spec, theta, r)) return r;
  const std::size_t N = spec.steps;
  if (N < 400) throw std::invalid_argument(id + ": steps must be >= 400");
  std::vector<std::size_t> edges{100};
  while (edges.back() * 2 < N) edges.push_back(edges.back() * 2);
  edges.push_back(N);
  const std::size_t W = edges.size() - 1, R = spec.reps;
  std::vector<double> counts(R * W, 0.0);
  parallel_for(R, spec.workers, [&](std::size_t rep) {
    Rng rng = Rng::stream(spec.seed, stream, rep);
    const MuRealization mu = sample_mu(theta, rng);
    const CutSequence c = sample_cuts_new(mu, StopRule::cuts(N), rng);
    for (std::size_t w = 0; w < W; ++w)
      for (std::size_t i = edges[w]; i < edges[w + 1]; ++i) counts[rep * W + w] += violates(c, i);
  });
  bool decreasing = true;
  double prev = 2.0;
  for (std::size_t w = 0; w < W; ++w) {
    double v = 0.0;
    for (std::size_t rep = 0; rep < R; ++rep) v += counts[rep * W + w];
    const double frac = v / (static_cast<double>(R) * (edges[w + 1] - edges[w]));
    r.stats.emplace_back("violation[" + std::to_string(edges[w]) + "," + std::to_string(edges[w + 1]) + ")", frac);
    if (frac > prev) decreasing = false;
    prev = frac;
  }
  r.stats.emplace_back("non_increasing", decreasing ? 1.0 : 0.0);
  r.verdict = CheckVerdict::monitor;
  return r;
}

// index i is 1-based: compares segment i+1 against Y_i, M_i
bool stick_violation(const CutSequence& c, std::size_t i) {
  return c.seg_length[i] > 5.0 * std::log(c.cuts[i - 1]) / c.cum_weight[i - 1];
}

bool weight_violation(const CutSequence& c, std::size_t i) {
  const double y = c.cuts[i - 1], lg = std::log(y);
  return c.seg_weight[i] > lg * lg / y;
}

}  // namespace

CheckResult check_stick_length(const CheckSpec& spec) {
  return index_monitor(spec, "stick_length", "stick-length", stick_violation);
}

CheckResult check_segment_weight(const CheckSpec& spec) {
  return index_monitor(spec, "segment_weight", "segment-weight", weight_violation);
}

CheckResult check_mass_lln(const CheckSpec& spec) {
  CheckResult r = start(spec, "mass_lln");
  const ThetaRealization theta = make_theta(spec.family, spec.atoms);
  if (refuse_if_invalid(spec, theta, r)) return r;
  std::vector<double> ls = spec.l_grid.empty() ? std::vector<double>{100, 1000} : spec.l_grid;
  const double lmax = *std::max_element(ls.begin(), ls.end());
  const std::size_t R = spec.reps, G = ls.size();
  std::vector<double> ratio(R * G);
  std::vector<double> expect(G);
  // expectation of the sampled measure: the K retained atoms, not the full family
  for (std::size_t g = 0; g < G; ++g) {
    double e = theta.drift() * ls[g];
    for (double w : theta.weights) e += -w * std::expm1(-w * ls[g]);
    expect[g] = e;
  }
  parallel_for(R, spec.workers, [&](std::size_t rep) {
    Rng rng = Rng::stream(spec.seed, "mass-lln", rep);
    const MuRealization mu = sample_mu(theta, rng, spec.family.symbolic_atoms() ? lmax : INFINITY);
    for (std::size_t g = 0; g < G; ++g) ratio[rep * G + g] = mu.mass(ls[g]) / expect[g];
  });
  bool ok = true;
  for (std::size_t g = 0; g < G; ++g) {
    std::vector<double> col(R);
    for (std::size_t rep = 0; rep < R; ++rep) col[rep] = ratio[rep * G + g];
    const double m = stats::mean(col), band = 5.0 * std::sqrt(stats::variance(col) / R);
    const std::string tag = "[l=" + format_double(ls[g]) + "]";
    r.stats.emplace_back("mean_ratio" + tag, m);
    r.stats.emplace_back("band" + tag, band);
    if (std::abs(m - 1.0) > band) ok = false;
  }
  r.verdict = ok ? CheckVerdict::pass : CheckVerdict::fail;
  return r;
}

CheckResult check_gap_law(const CheckSpec& spec) {
  CheckResult r = start(spec, "gap_law");
  const ThetaRealization theta = make_theta(spec.family, spec.atoms);
  if (refuse_if_invalid(spec, theta, r)) return r;
  const std::vector<std::size_t> idx{1, 10, 100};
  const std::size_t R = spec.reps, G = idx.size();
  std::vector<double> gaps(R * G);
  parallel_for(R, spec.workers, [&](std::size_t rep) {
    Rng rng = Rng::stream(spec.seed, "gap-law", rep);
    const MuRealization mu = sample_mu(theta, rng);
    const CutSequence c = sample_cuts_new(mu, StopRule::cuts(idx.back() + 1), rng);
    for (std::size_t g = 0; g < G; ++g) {
      const std::size_t i = idx[g];  // Y_i = cuts[i-1]
      gaps[rep * G + g] = (c.cuts[i] - c.cuts[i - 1]) * c.cum_weight[i - 1];
    }
  });
  bool reject = false;
  for (std::size_t g = 0; g < G; ++g) {
    std::vector<double> col(R);
    for (std::size_t rep = 0; rep < R; ++rep) col[rep] = gaps[rep * G + g];
    const auto [excess, rej] = survival_excess(col, spec.alpha / (9.0 * G));
    r.stats.emplace_back("excess[i=" + std::to_string(idx[g]) + "]", excess);
    reject = reject || rej;
  }
  r.verdict = reject ? CheckVerdict::fail : CheckVerdict::pass;
  return r;
}

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{
      "distance_domination", "hausdorff_step", "urn_concentration", "strong_lln", "construction_equivalence",
      "cut_count",           "stick_length",   "segment_weight",    "mass_lln",   "gap_law"};
  return ids;
}

std::string canonical_lemma(const std::string& id) {
  static const std::map<std::string, std::string> aliases{
      {"pizza", "distance_domination"}, {"big_lemma", "hausdorff_step"}, {"polya", "urn_concentration"},
      {"strong", "strong_lln"},          {"equiv", "construction_equivalence"}};
  if (auto it = aliases.find(id); it != aliases.end()) return it->second;
  const auto& ids = lemma_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw std::invalid_argument("unknown lemma id: " + id);
  return id;
}

CheckResult run_check(const CheckSpec& spec) {
  const std::string id = canonical_lemma(spec.lemma);
  if (id == "distance_domination") return check_distance_domination(spec);
  if (id == "hausdorff_step") return check_hausdorff_step(spec);
  if (id == "urn_concentration") return check_polya_concentration(spec);
  if (id == "strong_lln") return check_strong_lln(spec);
  if (id == "construction_equivalence") return check_construction_equivalence(spec);
  if (id == "cut_count") return check_cut_count(spec);
  if (id == "stick_length") return check_stick_length(spec);
  if (id == "segment_weight") return check_segment_weight(spec);
  if (id == "mass_lln") return check_mass_lln(spec);
  if (id == "gap_law") return check_gap_law(spec);
  throw std::invalid_argument("unknown lemma id: " + spec.lemma);
}

}  // namespace icrt

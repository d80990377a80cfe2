#include "icrt/stickbreak.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace icrt {

void CutSequence::check() const {
  if (glue.size() != cuts.size()) throw CutInvariantError("glue/cut count mismatch", glue.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (!std::isfinite(cuts[i]) || !(cuts[i] > prev)) throw CutInvariantError("cuts not strictly increasing", i + 1);
    if (!std::isfinite(glue[i]) || !(glue[i] >= 0.0) || !(glue[i] <= cuts[i]))
      throw CutInvariantError("glue point outside [0, Y_i]", i + 1);
    prev = cuts[i];
  }
}

CutSequence make_cut_sequence(std::vector<double> cuts, std::vector<double> glue, const MuRealization* mu) {
  CutSequence s;
  s.cuts = std::move(cuts);
  s.glue = std::move(glue);
  s.check();
  const std::size_t n = s.cuts.size();
  s.seg_length.resize(n);
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s.seg_length[i] = s.cuts[i] - prev;
    prev = s.cuts[i];
  }
  if (mu) {
    s.seg_weight.resize(n);
    s.cum_weight.resize(n);
    double before = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s.cum_weight[i] = mu->mass(s.cuts[i]);
      s.seg_weight[i] = s.cum_weight[i] - before;
      before = s.cum_weight[i];
    }
  }
  return s;
}

namespace {

bool keep_going(const StopRule& stop, std::size_t count, double last) {
  if (count < stop.min_cuts) return true;
  switch (stop.kind) {
    case StopRule::Kind::cuts: return count < stop.max_cuts;
    case StopRule::Kind::horizon: return true;
    case StopRule::Kind::covering: return count == 0 || last < stop.length;
  }
  return false;
}

bool accept(const StopRule& stop, double y) {
  return stop.kind != StopRule::Kind::horizon || y <= stop.length;
}

void validate_stop(const StopRule& stop) {
  if (stop.kind != StopRule::Kind::cuts && !(stop.length >= 0.0 && std::isfinite(stop.length)))
    throw std::invalid_argument("stop rule: length must be finite and >= 0");
}

// Draw from mu restricted to [0, y], normalized.
double draw_glue(const MuRealization& mu, double y, double total, Rng& rng) {
  const double u = rng.uniform() * total;
  const double lin = mu.drift() * y;
  if (u < lin) return u / mu.drift();
  const std::size_t n = mu.atoms_upto(y);
  const auto& pre = mu.prefix();
  const double target = u - lin;
  // first k with prefix[k+1] > target
  std::size_t k = static_cast<std::size_t>(std::upper_bound(pre.begin() + 1, pre.begin() + n + 1, target) -
                                           (pre.begin() + 1));
  if (k >= n) k = n - 1;
  return mu.positions()[k];
}

}  // namespace

CutSequence sample_cuts_new(const MuRealization& mu, const StopRule& stop, Rng& rng) {
  if (mu.empty()) throw std::invalid_argument("sample_cuts_new: mu has no mass");
  validate_stop(stop);
  const auto& pos = mu.positions();
  const auto& pre = mu.prefix();
  const double drift = mu.drift();
  const std::size_t n_atoms = pos.size();

  std::vector<double> ys, zs;
  double y = 0.0;
  std::size_t idx = mu.atoms_upto(0.0);
  double C = pre[idx];
  while (keep_going(stop, ys.size(), ys.empty() ? 0.0 : ys.back())) {
    // Lambda(Y_{i+1}) - Lambda(Y_i) = E with Lambda' = mu[0, .] = drift*s + C between atoms
    double R = rng.exponential();
    while (true) {
      const double next = idx < n_atoms ? pos[idx] : std::numeric_limits<double>::infinity();
      if (std::isfinite(next)) {
        const double piece = (next - y) * (0.5 * drift * (next + y) + C);
        if (piece <= R) {
          R -= piece;
          y = next;
          while (idx < n_atoms && pos[idx] == next) C = pre[++idx];
          continue;
        }
      }
      const double b = drift * y + C;
      const double d = drift > 0.0 ? 2.0 * R / (b + std::sqrt(b * b + 2.0 * drift * R)) : R / b;
      y = std::max(y + d, std::nextafter(y, INFINITY));
      break;
    }
    if (y > mu.horizon()) {
      if (stop.kind == StopRule::Kind::horizon && stop.length <= mu.horizon()) break;
      throw std::out_of_range("sample_cuts_new: cut beyond the sampled horizon of mu");
    }
    if (!accept(stop, y)) break;
    ys.push_back(y);
    zs.push_back(draw_glue(mu, y, mu.mass(y), rng));
  }
  CutSequence s = make_cut_sequence(std::move(ys), std::move(zs), &mu);
  s.provenance = Provenance::mu_driven;
  s.seed = rng.root_seed();
  if (stop.kind != StopRule::Kind::cuts) s.horizon = stop.length;
  return s;
}

ClassicalSample sample_cuts_classical(const ThetaRealization& theta, const StopRule& stop, Rng& rng) {
  validate_stop(stop);
  if (theta.theta0 == 0.0 && theta.weights.empty())
    throw std::invalid_argument("sample_cuts_classical: no mass");
  // first points A_{i,0}; beyond a horizon stop they can never glue
  const double first_horizon =
      stop.kind == StopRule::Kind::horizon ? stop.length : std::numeric_limits<double>::infinity();
  ClassicalSample out;
  out.mu = sample_mu(theta, rng, first_horizon);
  const MuRealization& mu = out.mu;
  const double drift = mu.drift();

  using Item = std::pair<double, std::size_t>;  // (next point, atom index in position order)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<Item> init;
  init.reserve(mu.atoms());
  for (std::size_t k = 0; k < mu.atoms(); ++k)
    init.emplace_back(mu.positions()[k] + rng.exponential(mu.weights()[k]), k);
  heap = decltype(heap)(std::greater<>{}, std::move(init));

  const double inf = std::numeric_limits<double>::infinity();
  double tri_a = 0.0;
  auto next_triangle = [&] {
    if (drift == 0.0) return inf;
    return std::sqrt(tri_a * tri_a + 2.0 * rng.exponential() / drift);
  };
  double tri_next = next_triangle();

  std::vector<double> us, vs;
  while (keep_going(stop, us.size(), us.empty() ? 0.0 : us.back())) {
    const double atom_next = heap.empty() ? inf : heap.top().first;
    double u, v;
    if (tri_next <= atom_next) {
      if (!std::isfinite(tri_next)) throw std::logic_error("sample_cuts_classical: exhausted");
      u = tri_next;
      v = rng.uniform() * u;  // B uniform on [0, A]
      tri_a = tri_next;
      tri_next = next_triangle();
    } else {
      auto [a, k] = heap.top();
      heap.pop();
      u = a;
      v = mu.positions()[k];
      heap.emplace(a + rng.exponential(mu.weights()[k]), k);
    }
    if (!accept(stop, u)) break;
    if (!us.empty() && !(u > us.back())) u = std::nextafter(us.back(), inf);
    us.push_back(u);
    vs.push_back(v);
  }
  if (stop.kind != StopRule::Kind::horizon && !us.empty() && us.back() > mu.horizon())
    throw std::logic_error("sample_cuts_classical: horizon mismatch");
  out.cuts = make_cut_sequence(std::move(us), std::move(vs), &mu);
  out.cuts.provenance = Provenance::classical;
  out.cuts.seed = rng.root_seed();
  if (stop.kind != StopRule::Kind::cuts) out.cuts.horizon = stop.length;
  return out;
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::classical: return "classical";
    case Provenance::mu_driven: return "mu_driven";
    case Provenance::external: return "external";
  }
  return "?";
}

}  // namespace icrt

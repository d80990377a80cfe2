#include "icrt/massmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace icrt {

EmpiricalMeasure::EmpiricalMeasure(MeasureKind kind, const IcrtTree& tree, const MuRealization& mu, double l)
    : kind_(kind), tree_(tree), mu_(mu), l_(l) {
  if (!(l >= 0.0) || l > tree.extent()) throw std::out_of_range("measure: l outside the tree");
  if (l > mu.horizon()) throw std::out_of_range("measure: l beyond the sampled horizon of mu");
  std::size_t cuts = 0;
  for (std::size_t n = 1; n <= tree.segments() && tree.cut(n) <= l; ++n) ++cuts;
  cut_count_ = cuts;
  switch (kind) {
    case MeasureKind::mu_normalized: total_ = mu.mass(l); break;
    case MeasureKind::length_normalized: total_ = l; break;
    case MeasureKind::cut_counting: total_ = static_cast<double>(cuts); break;
  }
}

namespace {

// Atom index range [first, last) inside the piece.
std::pair<std::size_t, std::size_t> atom_range(const MuRealization& mu, const BallPiece& p) {
  const std::size_t first = p.lo_open ? mu.atoms_upto(p.lo) : mu.atoms_below(p.lo);
  return {first, std::max(first, mu.atoms_upto(p.hi))};
}

bool tip_inside(const IcrtTree& t, const BallPiece& p, double l) {
  return p.segment > 0 && p.hi == t.cut(p.segment) && t.cut(p.segment) <= l;
}

}  // namespace

double EmpiricalMeasure::ball_mass(const TreePoint& center, double eps) const {
  if (!(eps > 0.0)) throw std::invalid_argument("ball_mass: eps must be positive");
  if (!(total_ > 0.0)) throw std::logic_error("ball_mass: empty measure");
  double mass = 0.0;
  tree_.for_each_in_ball(center, eps, l_, [&](const BallPiece& p) {
    switch (kind_) {
      case MeasureKind::mu_normalized: {
        auto [a, b] = atom_range(mu_, p);
        mass += mu_.drift() * (p.hi - p.lo) + (mu_.prefix()[b] - mu_.prefix()[a]);
        break;
      }
      case MeasureKind::length_normalized: mass += p.hi - p.lo; break;
      case MeasureKind::cut_counting:
        if (tip_inside(tree_, p, l_)) mass += 1.0;
        break;
    }
  });
  return std::min(1.0, mass / total_);
}

double EmpiricalMeasure::integrate_bump(const TreePoint& anchor) const {
  if (!(total_ > 0.0)) throw std::logic_error("integrate: empty measure");
  double sum = 0.0;
  tree_.for_each_in_ball(anchor, 1.0, l_, [&](const BallPiece& p) {
    const double len = p.hi - p.lo;
    switch (kind_) {
      case MeasureKind::mu_normalized: {
        sum += mu_.drift() * len * (1.0 - 0.5 * (p.d_lo + p.d_hi));
        auto [a, b] = atom_range(mu_, p);
        const double slope = len > 0.0 ? (p.d_hi - p.d_lo) / len : 0.0;
        for (std::size_t k = a; k < b; ++k)
          sum += mu_.weights()[k] * std::max(0.0, 1.0 - (p.d_lo + slope * (mu_.positions()[k] - p.lo)));
        break;
      }
      case MeasureKind::length_normalized: sum += len * (1.0 - 0.5 * (p.d_lo + p.d_hi)); break;
      case MeasureKind::cut_counting:
        if (tip_inside(tree_, p, l_)) sum += std::max(0.0, 1.0 - p.d_hi);
        break;
    }
  });
  return sum / total_;
}

TreePoint EmpiricalMeasure::sample_point(Rng& rng) const {
  if (!(total_ > 0.0)) throw std::logic_error("sample_point: empty measure");
  switch (kind_) {
    case MeasureKind::mu_normalized: {
      const double u = rng.uniform() * total_;
      const double lin = mu_.drift() * l_;
      if (u < lin) return tree_.point(u / mu_.drift());
      const std::size_t n = mu_.atoms_upto(l_);
      const auto& pre = mu_.prefix();
      std::size_t k = static_cast<std::size_t>(
          std::upper_bound(pre.begin() + 1, pre.begin() + static_cast<std::ptrdiff_t>(n) + 1, u - lin) -
          (pre.begin() + 1));
      if (k >= n) k = n - 1;
      return tree_.point(mu_.positions()[k]);
    }
    case MeasureKind::length_normalized: return tree_.point(rng.uniform() * l_);
    case MeasureKind::cut_counting: return tree_.point(tree_.cut(1 + rng.below(cut_count_)));
  }
  return {};
}

double EmpiricalMeasure::max_point_mass() const {
  if (!(total_ > 0.0)) return 0.0;
  switch (kind_) {
    case MeasureKind::mu_normalized: {
      double w = 0.0;
      const std::size_t n = mu_.atoms_upto(l_);
      for (std::size_t k = 0; k < n; ++k) w = std::max(w, mu_.weights()[k]);
      return w / total_;
    }
    case MeasureKind::length_normalized: return 0.0;
    case MeasureKind::cut_counting: return 1.0 / total_;
  }
  return 0.0;
}

std::string TestFunction::name() const {
  switch (kind) {
    case Kind::one: return "one";
    case Kind::bump: return "bump@" + std::to_string(anchor);
    case Kind::saturating: return "saturating@" + std::to_string(anchor);
  }
  return "?";
}

double integrate(const EmpiricalMeasure& m, const TestFunction& f) {
  if (!(m.normalizer() > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  switch (f.kind) {
    case TestFunction::Kind::one: return 1.0;
    case TestFunction::Kind::bump: return m.integrate_bump(m.tree().point(f.anchor));
    case TestFunction::Kind::saturating: return 1.0 - m.integrate_bump(m.tree().point(f.anchor));
  }
  return 0.0;
}

ConvergenceTable convergence_diagnostic(const IcrtTree& tree, const MuRealization& mu,
                                        const std::vector<double>& l_grid,
                                        const std::vector<TestFunction>& f_set) {
  for (std::size_t k = 1; k < l_grid.size(); ++k)
    if (!(l_grid[k] > l_grid[k - 1])) throw std::invalid_argument("convergence_diagnostic: l_grid not increasing");
  ConvergenceTable t;
  t.l_grid = l_grid;
  t.functions = f_set;
  const std::size_t F = f_set.size();
  for (double l : l_grid) {
    EmpiricalMeasure pm(MeasureKind::mu_normalized, tree, mu, l);
    EmpiricalMeasure pl(MeasureKind::length_normalized, tree, mu, l);
    EmpiricalMeasure pc(MeasureKind::cut_counting, tree, mu, l);
    double gap = 0.0;
    for (std::size_t f = 0; f < F; ++f) {
      ConvergenceRow row{l, f, integrate(pm, f_set[f]), integrate(pl, f_set[f]), integrate(pc, f_set[f])};
      if (std::isfinite(row.cut_counting)) gap = std::max(gap, std::abs(row.mu_normalized - row.cut_counting));
      t.rows.push_back(row);
    }
    t.cut_gap.push_back(gap);
    t.max_atom.push_back(pm.max_point_mass());
  }
  for (std::size_t k = 0; k + 1 < l_grid.size(); ++k) {
    double a = 0.0, b = 0.0, c = 0.0;
    for (std::size_t f = 0; f < F; ++f) {
      const auto& r0 = t.rows[k * F + f];
      const auto& r1 = t.rows[(k + 1) * F + f];
      a = std::max(a, std::abs(r1.mu_normalized - r0.mu_normalized));
      b = std::max(b, std::abs(r1.length_normalized - r0.length_normalized));
      if (std::isfinite(r0.cut_counting) && std::isfinite(r1.cut_counting))
        c = std::max(c, std::abs(r1.cut_counting - r0.cut_counting));
    }
    t.step_mu.push_back(a);
    t.step_length.push_back(b);
    t.step_cut.push_back(c);
  }
  return t;
}

UrnTrajectory urn_track(const CutSequence& cuts, const MuRealization& mu, std::size_t a, std::size_t root) {
  const std::size_t N = cuts.size();
  if (a < 1 || a > N) throw std::invalid_argument("urn_track: a must lie in [1, N]");
  if (root > a) throw std::invalid_argument("urn_track: subtree root must be a segment of T_{Y_a}");
  std::vector<char> in(N + 1, 0);
  std::vector<double> m(N + 1, 0.0), M(N + 1, 0.0);
  for (std::size_t n = 1; n <= N; ++n) {
    M[n] = mu.mass(cuts.cuts[n - 1]);
    m[n] = M[n] - M[n - 1];
    if (n == 1) {
      in[1] = root == 1;
      continue;
    }
    const double z = cuts.glue[n - 2];
    std::size_t p = z == 0.0 ? 1
                             : static_cast<std::size_t>(std::lower_bound(cuts.cuts.begin(), cuts.cuts.end(), z) -
                                                        cuts.cuts.begin()) + 1;
    in[n] = n == root || in[p];
  }
  UrnTrajectory u;
  u.first = a;
  double A = 0.0;
  for (std::size_t n = 1; n <= a; ++n)
    if (in[n]) A += m[n];
  u.subtree.push_back(A);
  u.total.push_back(M[a]);
  for (std::size_t n = a + 1; n <= N; ++n) {
    if (in[n]) A += m[n];
    u.subtree.push_back(std::min(A, M[n]));
    u.total.push_back(M[n]);
  }
  return u;
}

const char* to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::mu_normalized: return "mu_normalized";
    case MeasureKind::length_normalized: return "length_normalized";
    case MeasureKind::cut_counting: return "cut_counting";
  }
  return "?";
}

}  // namespace icrt

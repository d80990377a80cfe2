#include "icrt/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace icrt {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_cuts_csv(std::ostream& out, const CutSequence& c) {
  out << "#schema_version=" << kSchemaVersion << '\n';
  out << "i,Y,Z,l,m,M\n";
  const bool weights = c.seg_weight.size() == c.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    out << (i + 1) << ',' << format_double(c.cuts[i]) << ',' << format_double(c.glue[i]) << ','
        << format_double(c.seg_length[i]) << ',' << (weights ? format_double(c.seg_weight[i]) : "") << ','
        << (weights ? format_double(c.cum_weight[i]) : "") << '\n';
  }
}

namespace {

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw std::runtime_error("bad number '" + s + "'");
  return v;
}

}  // namespace

CutSequence read_cuts_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("#schema_version=", 0) != 0)
    throw std::runtime_error("cuts csv: missing schema line");
  if (std::stoi(line.substr(16)) != kSchemaVersion) throw std::runtime_error("cuts csv: unsupported schema");
  if (!std::getline(in, line) || line != "i,Y,Z,l,m,M") throw std::runtime_error("cuts csv: bad header");
  std::vector<double> y, z, m, M;
  bool weights = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() == 5) f.emplace_back();
    if (f.size() != 6) throw std::runtime_error("cuts csv: bad row " + line);
    y.push_back(parse_double(f[1]));
    z.push_back(parse_double(f[2]));
    if (f[4].empty() || f[5].empty()) {
      weights = false;
    } else {
      m.push_back(parse_double(f[4]));
      M.push_back(parse_double(f[5]));
    }
  }
  CutSequence c = make_cut_sequence(std::move(y), std::move(z));
  if (weights) {
    c.seg_weight = std::move(m);
    c.cum_weight = std::move(M);
  }
  return c;
}

std::string theta_digest(const ThetaRealization& theta) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(theta.theta0);
  for (double w : theta.weights) mix(w);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string cuts_sidecar_json(const CutSequence& cuts, const ThetaFamily& family, const ThetaRealization& theta,
                              const MuRealization& mu) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = cuts.seed;
  j["provenance"] = to_string(cuts.provenance);
  j["family"] = family.name();
  if (family.kind == Family::power_law) j["alpha"] = family.alpha;
  if (family.kind == Family::explicit_weights) j["family_weights"] = family.weights;
  j["theta0"] = theta.theta0;
  j["atoms"] = theta.size();
  j["residual_square_mass"] = theta.residual_square_mass;
  j["theta_digest"] = theta_digest(theta);
  j["cuts"] = cuts.size();
  j["extent"] = cuts.extent();
  if (cuts.horizon) j["horizon"] = *cuts.horizon;
  const double ext = cuts.extent();
  const std::size_t n = mu.atoms_upto(ext);
  j["drift"] = mu.drift();
  j["atom_positions"] = std::vector<double>(mu.positions().begin(), mu.positions().begin() + n);
  j["atom_weights"] = std::vector<double>(mu.weights().begin(), mu.weights().begin() + n);
  return j.dump(1) + "\n";
}

MuRealization mu_from_sidecar(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  return MuRealization(j.at("drift").get<double>(), j.at("atom_positions").get<std::vector<double>>(),
                       j.at("atom_weights").get<std::vector<double>>(), j.at("extent").get<double>());
}

ThetaFamily family_from_sidecar(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto name = j.at("family").get<std::string>();
  if (name == "brownian") return ThetaFamily::brownian();
  if (name == "harmonic") return ThetaFamily::harmonic();
  if (name == "powerlaw") return ThetaFamily::power_law(j.at("alpha").get<double>());
  if (name == "explicit")
    return ThetaFamily::explicit_weights(j.at("theta0").get<double>(), j.at("family_weights").get<std::vector<double>>());
  throw std::runtime_error("sidecar: unknown family '" + name + "'");
}

namespace {

nlohmann::ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

}  // namespace

std::string dimension_report_json(const DimensionReport& r) {
  nlohmann::ordered_json j;
  j["upper"] = num(r.upper);
  j["lower"] = num(r.lower);
  j["unbounded"] = r.unbounded;
  j["hausdorff_formula_applicable"] = r.hausdorff_applicable;
  j["window"] = {r.j_first, r.j_last};
  j["reciprocal_limit"] = num(r.reciprocal_limit);
  j["decay_limit"] = num(r.decay_limit);
  if (r.symbolic_upper) j["symbolic_upper"] = num(*r.symbolic_upper);
  if (r.symbolic_lower) j["symbolic_lower"] = num(*r.symbolic_lower);
  if (r.symbolic_applicable) j["symbolic_hausdorff_applicable"] = *r.symbolic_applicable;
  return j.dump();
}

std::string box_regression_json(const BoxRegression& b) {
  nlohmann::ordered_json j;
  j["slope"] = num(b.slope);
  j["band"] = {num(b.band_lo), num(b.band_hi)};
  j["eps"] = b.eps;
  j["counts"] = b.counts;
  j["used"] = b.used;
  return j.dump();
}

}  // namespace icrt

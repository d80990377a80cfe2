#pragma once

#include <iosfwd>
#include <string>

#include "icrt/dimension.hpp"
#include "icrt/measure.hpp"
#include "icrt/params.hpp"
#include "icrt/stickbreak.hpp"

namespace icrt {

constexpr int kSchemaVersion = 1;

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// Columnar CSV: a "#schema_version=N" comment line, a header row, LF endings.
void write_cuts_csv(std::ostream& out, const CutSequence& cuts);
CutSequence read_cuts_csv(std::istream& in);

// 64-bit FNV-1a over the bit patterns of theta0 and the weights, as hex.
std::string theta_digest(const ThetaRealization& theta);

// JSON sidecar: seed, provenance, family, theta digest, horizon and the atoms
// of mu inside [0, extent] (enough to rebuild mu restricted to the tree).
std::string cuts_sidecar_json(const CutSequence& cuts, const ThetaFamily& family, const ThetaRealization& theta,
                              const MuRealization& mu);
// Rebuilds mu restricted to [0, extent] from a sidecar.
MuRealization mu_from_sidecar(const std::string& json);
ThetaFamily family_from_sidecar(const std::string& json);

std::string dimension_report_json(const DimensionReport& r);
std::string box_regression_json(const BoxRegression& b);

}  // namespace icrt

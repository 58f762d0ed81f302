#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ctlab/flow/flow_map.hpp"
#include "ctlab/flow/funnel.hpp"
#include "ctlab/measures/test_family.hpp"
#include "ctlab/superposition/ensemble.hpp"
#include "ctlab/superposition/signed_branch.hpp"
#include "ctlab/transport/grid_solver.hpp"
#include "ctlab/transport/measure_curve.hpp"

namespace ctlab::io {

/// Shortest round-trip text of a double ("%.17g"); output is byte-stable.
std::string fmt(double x);

/// Header "t,x1,...,xd", one row per node.
void write_curve_csv(std::ostream& os, const Curve& c);
Curve read_curve_csv(std::istream& is);

/// Header "w,x1,...,xd", one row per atom in storage order.
void write_measure_csv(std::ostream& os, const SignedMeasure& m);
SignedMeasure read_measure_csv(std::istream& is);

/// node_0000.csv, node_0001.csv, ... plus manifest.json with times,
/// provenance and, when given, the test-family parameters.
void write_measure_curve(const std::filesystem::path& dir, const MeasureCurve& mu,
                         const TestFamily* family = nullptr);
MeasureCurve read_measure_curve(const std::filesystem::path& dir);

/// slice_0000.csv, ... (ny rows of nx values, bottom row first) plus
/// manifest.json with the box, times and masses.
void write_density_curve(const std::filesystem::path& dir, const DensityCurve& d);

/// manifest.json with weights and file names, curve_0000.csv, ...
void write_ensemble(const std::filesystem::path& dir, const CurveEnsemble& nu);

std::string flow_map_json(const FlowMapSample& s);
std::string boundary_report_json(const BoundaryReport& r);
/// Header "delta,spread,upper1,..,lower1,..".
void write_funnel_csv(std::ostream& os, const FunnelTable& table);

}  // namespace ctlab::io

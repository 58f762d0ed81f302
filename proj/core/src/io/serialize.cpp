#include "ctlab/io/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "ctlab/errors.hpp"

namespace ctlab::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::vector<double>> read_rows(std::istream& is, std::string& header) {
  if (!std::getline(is, header)) throw PreconditionError("csv: missing header");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw PreconditionError("csv: bad number '" + cell + "'");
      }
      if (used != cell.size()) throw PreconditionError("csv: bad number '" + cell + "'");
      row.push_back(x);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string node_name(const char* stem, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%04zu.csv", stem, i);
  return buf;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw Error("cannot write " + p.string());
  return os;
}

json point_json(const Point& p) { return json(p); }

json atoms_json(const SignedMeasure& m) {
  json a = json::array();
  for (const auto& at : m.atoms()) a.push_back({{"w", at.w}, {"x", point_json(at.x)}});
  return a;
}

}  // namespace

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_curve_csv(std::ostream& os, const Curve& c) {
  os << "t";
  for (std::size_t k = 0; k < c.dim(); ++k) os << ",x" << k + 1;
  os << '\n';
  for (std::size_t i = 0; i < c.size(); ++i) {
    os << fmt(c.times()[i]);
    for (double v : c.points()[i]) os << ',' << fmt(v);
    os << '\n';
  }
}

Curve read_curve_csv(std::istream& is) {
  std::string header;
  auto rows = read_rows(is, header);
  std::vector<double> ts;
  std::vector<Point> ps;
  for (auto& r : rows) {
    if (r.size() < 2) throw PreconditionError("curve csv: rows need t and at least one coordinate");
    ts.push_back(r.front());
    ps.emplace_back(r.begin() + 1, r.end());
  }
  return Curve(std::move(ts), std::move(ps));
}

void write_measure_csv(std::ostream& os, const SignedMeasure& m) {
  os << "w";
  for (std::size_t k = 0; k < m.dim(); ++k) os << ",x" << k + 1;
  os << '\n';
  for (const auto& a : m.atoms()) {
    os << fmt(a.w);
    for (double v : a.x) os << ',' << fmt(v);
    os << '\n';
  }
}

SignedMeasure read_measure_csv(std::istream& is) {
  std::string header;
  auto rows = read_rows(is, header);
  std::size_t dim = 0;
  for (char c : header) dim += c == ',';
  std::vector<Atom> atoms;
  for (auto& r : rows) {
    if (r.size() != dim + 1) throw PreconditionError("measure csv: row width does not match header");
    atoms.push_back({Point(r.begin() + 1, r.end()), r.front()});
  }
  return SignedMeasure(dim, std::move(atoms));
}

void write_measure_curve(const fs::path& dir, const MeasureCurve& mu, const TestFamily* family) {
  fs::create_directories(dir);
  json manifest{{"kind", "measure_curve"},
                {"dim", mu.dim()},
                {"provenance", mu.provenance()},
                {"tracked", mu.tracked()},
                {"times", mu.times()},
                {"files", json::array()}};
  if (family) manifest["test_family"] = {{"depth", family->depth()}, {"extent", family->extent()}};
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const std::string name = node_name("node", i);
    auto os = open_out(dir / name);
    write_measure_csv(os, mu[i]);
    manifest["files"].push_back(name);
  }
  open_out(dir / "manifest.json") << manifest.dump(2) << '\n';
}

MeasureCurve read_measure_curve(const fs::path& dir) {
  std::ifstream is(dir / "manifest.json");
  if (!is) throw PreconditionError("no manifest.json in " + dir.string());
  const json manifest = json::parse(is);
  std::vector<double> times = manifest.at("times").get<std::vector<double>>();
  std::vector<SignedMeasure> ms;
  for (const auto& f : manifest.at("files")) {
    std::ifstream node(dir / f.get<std::string>());
    if (!node) throw PreconditionError("missing node file " + f.get<std::string>());
    ms.push_back(read_measure_csv(node));
  }
  return MeasureCurve(std::move(times), std::move(ms), manifest.at("provenance").get<std::string>(),
                      manifest.value("tracked", false));
}

void write_density_curve(const fs::path& dir, const DensityCurve& d) {
  fs::create_directories(dir);
  json manifest{{"kind", "density_curve"}, {"box", {{"lo", d.box.lo}, {"hi", d.box.hi}}},
                {"nx", d.nx},           {"ny", d.ny},
                {"times", d.times},     {"masses", d.masses},
                {"steps", d.steps},     {"files", json::array()}};
  for (std::size_t i = 0; i < d.slices.size(); ++i) {
    const std::string name = node_name("slice", i);
    auto os = open_out(dir / name);
    for (std::size_t iy = 0; iy < d.ny; ++iy) {
      for (std::size_t ix = 0; ix < d.nx; ++ix) os << (ix ? "," : "") << fmt(d.slices[i][ix + d.nx * iy]);
      os << '\n';
    }
    manifest["files"].push_back(name);
  }
  open_out(dir / "manifest.json") << manifest.dump(2) << '\n';
}

void write_ensemble(const fs::path& dir, const CurveEnsemble& nu) {
  fs::create_directories(dir);
  json manifest{{"kind", "curve_ensemble"}, {"dim", nu.dim()}, {"curves", json::array()}};
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const std::string name = node_name("curve", i);
    auto os = open_out(dir / name);
    write_curve_csv(os, nu.members()[i].curve);
    manifest["curves"].push_back({{"weight", nu.members()[i].weight}, {"file", name}});
  }
  open_out(dir / "manifest.json") << manifest.dump(2) << '\n';
}

std::string flow_map_json(const FlowMapSample& s) {
  json j{{"source_time", s.source_time},
         {"target_time", s.target_time},
         {"seeds", s.seeds},
         {"images", s.images},
         {"provenance", {{"scheme", s.provenance.scheme}, {"tol", s.provenance.tol}, {"steps", s.provenance.steps}}}};
  return j.dump(2);
}

std::string boundary_report_json(const BoundaryReport& r) {
  json j{{"lhs", atoms_json(r.lhs)}, {"rhs", atoms_json(r.rhs)}, {"holds", r.holds}};
  return j.dump(2);
}

void write_funnel_csv(std::ostream& os, const FunnelTable& table) {
  const std::size_t d = table.origin.size();
  os << "delta,spread";
  for (std::size_t k = 0; k < d; ++k) os << ",upper" << k + 1;
  for (std::size_t k = 0; k < d; ++k) os << ",lower" << k + 1;
  os << '\n';
  for (const auto& r : table.rows) {
    os << fmt(r.delta) << ',' << fmt(r.spread);
    for (double v : r.upper) os << ',' << fmt(v);
    for (double v : r.lower) os << ',' << fmt(v);
    os << '\n';
  }
}

}  // namespace ctlab::io

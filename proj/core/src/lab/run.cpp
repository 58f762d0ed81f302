#include "ctlab/lab/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ctlab/fields/norms.hpp"
#include "ctlab/flow/flow_map.hpp"
#include "ctlab/io/serialize.hpp"
#include "ctlab/measures/weak_metric.hpp"
#include "ctlab/superposition/endpoint.hpp"
#include "ctlab/superposition/ensemble.hpp"
#include "ctlab/superposition/signed_branch.hpp"
#include "ctlab/transport/cross_validate.hpp"
#include "ctlab/transport/equicontinuity.hpp"
#include "ctlab/transport/particle.hpp"
#include "ctlab/transport/weak_residual.hpp"

namespace ctlab {

namespace fs = std::filesystem;

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

bool RunReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::fail; });
}

const CheckResult* RunReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string RunReport::to_json() const {
  nlohmann::json j{{"scenario", scenario}, {"passed", passed()}, {"wall_seconds", wall_seconds}};
  j["provenance"] = provenance;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    // JSON has no infinity; failures that threw are stored as null
    auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
    j["checks"].push_back({{"name", c.name},
                           {"status", to_string(c.status)},
                           {"defect", num(c.defect)},
                           {"tolerance", c.tolerance},
                           {"error_bound", num(c.error_bound)},
                           {"detail", c.detail}});
  }
  return j.dump(2);
}

BranchPair extremal_branches(const std::string& field, const FieldParams& params, double S, const Point& p,
                             const std::vector<double>& grid) {
  if (field != "sqrt_branch")
    throw PreconditionError("no closed-form branch pair is known for field '" + field + "'");
  if (std::any_of(p.begin(), p.end(), [](double c) { return c != 0.0; }))
    throw PreconditionError("sqrt_branch branches are known only at the origin");
  const auto cap_it = params.find("cap");
  const double cap = cap_it == params.end() ? 4.0 : cap_it->second.at(0);
  std::vector<double> ts;
  for (double t : grid)
    if (t >= S) ts.push_back(t);
  if (ts.size() < 2) throw PreconditionError("branch time leaves fewer than two grid nodes");
  if ((ts.back() - S) * (ts.back() - S) > cap) throw PreconditionError("upper branch leaves the uncapped region");
  const std::size_t d = p.size();
  auto upper = Curve::from_function(ts, [&](double t) {
    Point x(d, 0.0);
    x[0] = (t - S) * (t - S);
    return x;
  });
  auto lower = Curve::from_function(ts, [&](double) { return Point(d, 0.0); });
  return {std::move(upper), std::move(lower)};
}

namespace {

double bump_density(double r, double radius, double height) {
  const double s = r / radius;
  return s < 1.0 ? height * std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
}

CheckResult judged(const CheckSpec& spec, double defect, double error_bound, std::string detail) {
  return {spec.name, defect <= spec.tol ? CheckStatus::pass : CheckStatus::fail, defect, spec.tol, error_bound,
          std::move(detail)};
}

std::string str(double x) { return io::fmt(x); }

std::vector<double> from(const std::vector<double>& grid, double S) {
  std::vector<double> out;
  for (double t : grid)
    if (t >= S) out.push_back(t);
  return out;
}

}  // namespace

RunReport run_scenario(const Scenario& sc_in, const RunOptions& opt) {
  const auto started = std::chrono::steady_clock::now();
  Scenario sc = sc_in;
  if (opt.tol) sc.solver.tol = *opt.tol;
  if (opt.metric_depth) sc.metric_depth = *opt.metric_depth;

  const VectorField v = builtin_field(sc.field, sc.params);
  const std::vector<double> grid = sc.time_grid();
  const double S = sc.initial.time;
  const std::size_t dim = v.dim();
  const TestFamily family(dim, sc.metric_depth, sc.metric_radius);
  const double tail = std::ldexp(1.0, -static_cast<int>(family.depth()));

  fs::path outdir;
  if (opt.out)
    outdir = *opt.out / sc.name;
  else if (!sc.output.empty())
    outdir = sc.output;

  RunReport rep;
  rep.scenario = sc.name;
  rep.provenance = {{"field", sc.field},
                    {"solver.scheme", to_string(sc.solver.scheme)},
                    {"solver.tol", str(sc.solver.tol)},
                    {"metric.depth", std::to_string(family.depth())},
                    {"metric.radius", str(family.extent())},
                    {"grid.nodes", std::to_string(grid.size())},
                    {"initial.time", str(S)}};
  for (const auto& [k, vals] : sc.params) {
    std::string s;
    for (double x : vals) s += (s.empty() ? "" : " ") + str(x);
    rep.provenance["field." + k] = s;
  }

  std::optional<MeasureCurve> mu;
  std::optional<DensityGrid> density0;
  std::optional<BranchPair> branch;
  switch (sc.initial.kind) {
    case InitialKind::atoms:
      mu = particle_solve(v, S, SignedMeasure(dim, sc.initial.atoms), grid, sc.solver);
      rep.provenance["initial.kind"] = "atoms";
      rep.provenance["initial.atoms"] = std::to_string(sc.initial.atoms.size());
      break;
    case InitialKind::density: {
      if (!v.sampling_box()) throw PreconditionError("density scenarios need a field with a sampling box");
      const auto& ini = sc.initial;
      density0 = DensityGrid::from_function(*v.sampling_box(), ini.cells, ini.cells, [&](double x, double y) {
        return bump_density(std::hypot(x - ini.center[0], y - ini.center[1]), ini.radius, ini.height);
      });
      // particles form the normalized (probability) version of the density
      const SignedMeasure atoms = density0->stratified_atoms(ini.subcells).scaled(1.0 / density0->mass());
      mu = particle_solve(v, S, atoms, grid, sc.solver);
      rep.provenance["initial.kind"] = "density";
      rep.provenance["initial.cells"] = std::to_string(ini.cells) + "x" + std::to_string(ini.cells);
      rep.provenance["initial.particles"] = std::to_string(atoms.atoms().size());
      break;
    }
    case InitialKind::branch:
      branch = extremal_branches(sc.field, sc.params, S, sc.initial.point, grid);
      mu = branch_measure_curve(S, branch->upper, branch->lower, grid);
      rep.provenance["initial.kind"] = "branch";
      break;
  }

  std::optional<DensityCurve> density;
  auto solve_density = [&]() -> const DensityCurve& {
    if (!density) density = grid_solve(v, *density0, from(grid, S));
    return *density;
  };

  for (const auto& spec : sc.checks) {
    const auto check_started = std::chrono::steady_clock::now();
    CheckResult res;
    try {
      if (spec.name == "weak_residual") {
        const auto it = spec.options.find("bumps");
        const std::size_t bumps = it == spec.options.end() ? 32 : static_cast<std::size_t>(it->second);
        const auto r = weak_residual_sweep(*mu, v, family, bumps, canonical_windows(grid.front(), grid.back()));
        res = judged(spec, r.worst, 0.0,
                     "worst at bump " + std::to_string(r.worst_bump) + ", window " + std::to_string(r.worst_window) +
                         " (" + std::to_string(r.bumps) + " bumps x " + std::to_string(r.windows) + " windows)");
      } else if (spec.name == "equicontinuity") {
        const auto r = equicontinuity_check(*mu, v, family);
        res = judged(spec, r.worst_ratio, tail,
                     "worst interval " + std::to_string(r.worst_interval) + ", " + std::to_string(r.skipped) +
                         " intervals skipped (field vanishes)");
      } else if (spec.name == "norm_trace") {
        const auto trace = norm_trace(*mu);
        double defect = 0.0;
        std::string detail;
        if (branch) {
          // expected trace 0 up to S and 2 after, with d(mu_S, mu_t) <= |t - S| L + tail
          const std::size_t iS = static_cast<std::size_t>(std::find(grid.begin(), grid.end(), S) - grid.begin());
          double sup = 0.0;
          for (double t : grid) sup = std::max(sup, sup_norm_at(v, t));
          const double L = 2.0 * sup;
          double excess = 0.0;
          for (std::size_t i = 0; i < grid.size(); ++i) {
            defect = std::max(defect, std::abs(trace[i] - (grid[i] > S ? 2.0 : 0.0)));
            const WeakDistance d = weak_distance((*mu)[iS], (*mu)[i], family);
            excess = std::max(excess, d.value - std::abs(grid[i] - S) * L - d.tail_bound);
          }
          defect = std::max(defect, excess);
          detail = "trace jumps 0 -> 2 at t=" + str(S) + "; weak continuity excess " + str(excess);
        } else {
          for (double x : trace) defect = std::max(defect, std::abs(x - trace.front()));
          detail = "trace value " + str(trace.front());
        }
        res = judged(spec, defect, 0.0, detail);
      } else if (spec.name == "marginal_defect") {
        if (!(*mu)[0].nonnegative()) {
          res = {spec.name, CheckStatus::skipped, 0.0, spec.tol, 0.0, "signed data has no nonnegative superposition"};
        } else {
          const MeasureCurve& m = *mu;
          const double mass = m[0].mass();
          std::optional<MeasureCurve> normalized;
          if (std::abs(mass - 1.0) > 1e-12) {
            std::vector<SignedMeasure> ms;
            for (const auto& x : m.measures()) ms.push_back(x.scaled(1.0 / mass));
            normalized.emplace(m.times(), std::move(ms), m.provenance(), true);
          }
          const MeasureCurve& use = normalized ? *normalized : m;
          const CurveEnsemble nu = superpose_nonneg(use, v, sc.solver);
          res = judged(spec, marginal_defect(nu, use, family), tail,
                       std::to_string(nu.size()) + " curves" + (normalized ? " (mass normalized)" : ""));
          if (!outdir.empty()) io::write_ensemble(outdir / "ensemble", nu);
        }
      } else if (spec.name == "endpoint_transport") {
        if (!v.osgood_certificate()) {
          res = {spec.name, CheckStatus::skipped, 0.0, spec.tol, 0.0, "field has no Osgood certificate"};
        } else {
          const auto r = endpoint_transport_check(v, *mu, family, CertificatePolicy::require, sc.solver);
          res = judged(spec, r.worst_pair_defect, tail,
                       std::to_string(r.pairs) + " node pairs; endpoint defect " + str(r.endpoint_defect));
        }
      } else if (spec.name == "markov") {
        if (!v.sampling_box()) throw PreconditionError("markov check needs a sampling box");
        const auto it = spec.options.find("seeds_per_axis");
        const std::size_t per_axis =
            it != spec.options.end() ? static_cast<std::size_t>(it->second) : (dim == 1 ? 100 : 10);
        const auto seeds = lattice_seeds(*v.sampling_box(), per_axis);
        const double T = grid.back();
        const double d = markov_defect(v, grid.front(), 0.5 * (grid.front() + T), T, seeds, sc.solver);
        res = judged(spec, d, 0.0, std::to_string(seeds.size()) + " seeds");
      } else if (spec.name == "grid_mass") {
        const DensityCurve& dc = solve_density();
        double drift = 0.0;
        for (double m : dc.masses) drift = std::max(drift, std::abs(m - dc.masses.front()));
        const double lo = dc.min_value(), hi = dc.max_value();
        const double bounds = std::max({0.0, -lo, hi - 1.0});
        res = judged(spec, drift, 0.0,
                     "values in [" + str(lo) + ", " + str(hi) + "], " + std::to_string(dc.steps) + " steps");
        if (bounds > 1e-12) {
          res.status = CheckStatus::fail;
          res.detail += "; value bounds violated by " + str(bounds);
        }
        if (!outdir.empty()) io::write_density_curve(outdir / "density", dc);
      } else if (spec.name == "cross_validate") {
        CrossValidateOptions co;
        co.subcells = sc.initial.subcells;
        co.integrate = sc.solver;
        const auto table = cross_validate(v, *density0, from(grid, S), family, co);
        res = judged(spec, table.worst_upper(), tail,
                     std::to_string(table.cells) + " cells vs " + std::to_string(table.particles) + " particles");
        if (!outdir.empty()) {
          fs::create_directories(outdir);
          std::ofstream os(outdir / "cross_validate.csv");
          os << "t,distance,tail\n";
          for (const auto& r : table.rows)
            os << io::fmt(r.time) << ',' << io::fmt(r.distance.value) << ',' << io::fmt(r.distance.tail_bound)
               << '\n';
        }
      } else if (spec.name == "reparam") {
        const SignedBranch b = signed_superpose_branch(v, S, branch->upper, branch->lower);
        double residual = 0.0;
        for (const auto& m : b.nu.members()) residual = std::max(residual, reparam_residual(m.curve, v).residual);
        res = judged(spec, residual, 0.0,
                     std::string("boundary identity ") + (b.boundary.holds ? "holds" : "FAILS") + " on " +
                         std::to_string(b.boundary.lhs.atoms().size()) + " atoms");
        if (!b.boundary.holds) res.status = CheckStatus::fail;
        if (!outdir.empty()) {
          fs::create_directories(outdir);
          std::ofstream(outdir / "boundary.json") << io::boundary_report_json(b.boundary) << '\n';
          std::ofstream os(outdir / "hairpin.csv");
          os << "s,t";
          for (std::size_t k = 0; k < dim; ++k) os << ",x" << k + 1;
          os << '\n';
          for (const auto& m : b.nu.members())
            for (std::size_t k = 0; k < m.curve.size(); ++k) {
              os << io::fmt(m.curve.s()[k]) << ',' << io::fmt(m.curve.t()[k]);
              for (double x : m.curve.x()[k]) os << ',' << io::fmt(x);
              os << '\n';
            }
        }
      }
    } catch (const std::exception& e) {
      res = {spec.name, CheckStatus::fail, std::numeric_limits<double>::infinity(), spec.tol, 0.0, e.what()};
    }
    res.name = spec.name;
    rep.provenance["seconds." + spec.name] =
        str(std::chrono::duration<double>(std::chrono::steady_clock::now() - check_started).count());
    rep.checks.push_back(std::move(res));
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  if (!outdir.empty()) {
    fs::create_directories(outdir);
    io::write_measure_curve(outdir / "measure_curve", *mu, &family);
    {
      std::ofstream os(outdir / "norm_trace.csv");
      os << "t,tv_norm\n";
      const auto trace = norm_trace(*mu);
      for (std::size_t i = 0; i < grid.size(); ++i) os << io::fmt(grid[i]) << ',' << io::fmt(trace[i]) << '\n';
    }
    {
      std::ofstream os(outdir / "checks.csv");
      os << "check,status,defect,tolerance,error_bound\n";
      for (const auto& c : rep.checks)
        os << c.name << ',' << to_string(c.status) << ',' << io::fmt(c.defect) << ',' << io::fmt(c.tolerance) << ','
           << io::fmt(c.error_bound) << '\n';
    }
    std::ofstream(outdir / "report.json") << rep.to_json() << '\n';
  }
  return rep;
}

}  // namespace ctlab

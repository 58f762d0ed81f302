// ctlab command line: scenario runner, catalog, and experiment drivers.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctlab/errors.hpp"
#include "ctlab/fields/catalog.hpp"
#include "ctlab/flow/funnel.hpp"
#include "ctlab/io/serialize.hpp"
#include "ctlab/lab/run.hpp"
#include "ctlab/lab/scenario.hpp"
#include "ctlab/lab/studies.hpp"

namespace fs = std::filesystem;

namespace {

// "key=v1,v2,..." -> params[key] = {v1, v2, ...}
ctlab::FieldParams parse_params(const std::vector<std::string>& raw) {
  ctlab::FieldParams params;
  for (const auto& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--param", "expected key=value[,value...]: " + kv);
    std::vector<double> vals;
    std::string rest = kv.substr(eq + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string cell = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw CLI::ValidationError("--param", "bad number '" + cell + "' in " + kv);
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    params[kv.substr(0, eq)] = std::move(vals);
  }
  return params;
}

std::ostream& sink(const std::optional<fs::path>& dir, const std::string& name, std::ofstream& file) {
  if (!dir) return std::cout;
  fs::create_directories(*dir);
  file.open(*dir / name);
  if (!file) throw ctlab::Error("cannot write " + (*dir / name).string());
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuity-equation lab: flows, measure solutions and superposition checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> out;
  std::optional<double> tol;
  std::optional<std::size_t> metric_depth;
  app.add_option("--out", out, "Directory for CSV data and JSON reports");
  app.add_option("--tol", tol, "Solver tolerance (overrides scenario and defaults)")->check(CLI::PositiveNumber);
  app.add_option("--metric-depth", metric_depth, "Number of test bumps in the weak metric")->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "Run scenario files; exit status 1 if any check fails");
  std::vector<std::string> files;
  run->add_option("files", files, "Scenario YAML files")->required()->check(CLI::ExistingFile);

  auto* catalog = app.add_subcommand("catalog", "List built-in vector fields");
  std::string filter;
  catalog->add_option("--filter", filter, "Substring of the field name");

  auto* study = app.add_subcommand("mollify-study", "Mollification study of a field at a probe point");
  std::string study_field;
  std::vector<unsigned> ns{4, 16, 64};
  std::vector<std::string> study_params;
  std::vector<double> study_at;
  study->add_option("field", study_field, "Catalog field name")->required();
  study->add_option("--n", ns, "Increasing mollification levels")->expected(1, -1);
  study->add_option("--param", study_params, "Field parameter key=v1,v2");
  study->add_option("--at", study_at, "Probe point (defaults to the origin)")->expected(1, -1);

  auto* funnel = app.add_subcommand("funnel", "Funnel probe: images of x +- delta e at the horizon");
  std::string funnel_field;
  std::vector<double> at;
  std::vector<double> deltas{1e-2, 1e-4, 1e-6, 1e-8};
  std::vector<std::string> funnel_params;
  double start = 0.0;
  funnel->add_option("field", funnel_field, "Catalog field name")->required();
  funnel->add_option("--at", at, "Probe point")->required()->expected(1, -1);
  funnel->add_option("--delta", deltas, "Decreasing offsets")->expected(1, -1);
  funnel->add_option("--start", start, "Start time");
  funnel->add_option("--param", funnel_params, "Field parameter key=v1,v2");

  CLI11_PARSE(app, argc, argv);
  const std::optional<fs::path> outdir = out ? std::optional<fs::path>(*out) : std::nullopt;

  try {
    if (*run) {
      ctlab::RunOptions ro{outdir, tol, metric_depth};
      bool all_passed = true;
      for (const auto& f : files) {
        const ctlab::Scenario sc = ctlab::load_scenario(f);
        const ctlab::RunReport rep = ctlab::run_scenario(sc, ro);
        std::printf("%s (%.2fs)\n", rep.scenario.c_str(), rep.wall_seconds);
        for (const auto& c : rep.checks)
          std::printf("  %-8s %-19s defect %-12.4g tol %-10.3g %s\n", ctlab::to_string(c.status), c.name.c_str(),
                      c.defect, c.tolerance, c.detail.c_str());
        all_passed = all_passed && rep.passed();
      }
      return all_passed ? 0 : 1;
    }
    if (*catalog) {
      for (const auto& e : ctlab::catalog_list(filter))
        std::printf("%-18s %s\n%-18s params: %s\n", e.name.c_str(), e.description.c_str(), "", e.params.c_str());
      return 0;
    }
    if (*study) {
      const ctlab::VectorField v = ctlab::builtin_field(study_field, parse_params(study_params));
      ctlab::MollificationOptions mo;
      if (!study_at.empty()) mo.probe = study_at;
      if (tol) mo.integrate.tol = *tol;
      const auto table = ctlab::mollification_study(v, ns, mo);
      std::ofstream file;
      ctlab::write_mollification_csv(sink(outdir, "mollification_" + study_field + ".csv", file), table);
      return 0;
    }
    if (*funnel) {
      const ctlab::VectorField v = ctlab::builtin_field(funnel_field, parse_params(funnel_params));
      ctlab::FunnelOptions fo;
      if (tol) fo.integrate.tol = *tol;
      const auto table = ctlab::funnel_probe(v, start, at, deltas, v.horizon(), fo);
      std::ofstream file;
      ctlab::io::write_funnel_csv(sink(outdir, "funnel_" + funnel_field + ".csv", file), table);
      std::fprintf(stderr, "non-unique indicator: %s\n", table.non_unique_indicator() ? "raised" : "clear");
      return 0;
    }
  } catch (const ctlab::ScenarioError& e) {
    std::fprintf(stderr, "scenario error: %s\n", e.what());
    return 2;
  } catch (const ctlab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

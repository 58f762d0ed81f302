#include "ctlab/lab/studies.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "ctlab/errors.hpp"
#include "ctlab/fields/mollifier.hpp"
#include "ctlab/io/serialize.hpp"
#include "ctlab/quadrature.hpp"
#include "ctlab/superposition/signed_branch.hpp"
#include "ctlab/transport/particle.hpp"

namespace ctlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void branch_diagnostic(const VectorField& w, const Point& raw_upper_end, const MollificationOptions& opt, double S,
                       double T, const Point& probe, MollificationRow& row) {
  const std::vector<double> targets = uniform_grid(S, T, 65);
  const Curve y = integrate(w, S, probe, targets, opt.integrate);
  const Curve x = integrate(w, T, raw_upper_end, targets, opt.integrate);
  row.meet_gap = distance(x.at_node(S), y.at_node(S));
  try {
    BranchOptions bo;
    bo.residual_tol = 10.0 * opt.integrate.tol;
    bo.meet_tol = opt.meet_tol;
    signed_superpose_branch(w, S, x, y, bo);
    row.hairpin_rejected = false;
  } catch (const PreconditionError&) {
    row.hairpin_rejected = true;
  }
  const MeasureCurve zero = particle_solve(w, S, SignedMeasure(w.dim()), targets, opt.integrate);
  row.zero_stays_zero = zero.sup_tv_norm() == 0.0;
}

}  // namespace

MollificationStudy mollification_study(const VectorField& v, const std::vector<unsigned>& ns,
                                       const MollificationOptions& opt) {
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (ns[i] == 0 || (i > 0 && ns[i] <= ns[i - 1]))
      throw PreconditionError("mollification_study: n list must be positive and increasing");
  if (opt.deltas.empty()) throw PreconditionError("mollification_study: no probe offsets");
  NormOptions norm = opt.norm;
  if (!norm.box) {
    if (!v.sampling_box()) throw PreconditionError("mollification_study: field has no sampling box");
    norm.box = v.sampling_box();
  }

  MollificationStudy study;
  study.horizon = v.horizon();
  study.probe = opt.probe.value_or(Point(v.dim(), 0.0));
  const double S = opt.probe_time, T = v.horizon();
  FunnelOptions fo;
  fo.integrate = opt.integrate;

  const FunnelTable raw = funnel_probe(v, S, study.probe, opt.deltas, T, fo);
  const Point raw_upper_end = raw.rows.back().upper;

  const MollifierKernel g;
  for (unsigned n : ns) {
    const VectorField w = mollify(v, n, g);
    MollificationRow row;
    row.n = n;
    const FunnelTable f = funnel_probe(w, S, study.probe, opt.deltas, T, fo);
    row.delta = f.rows.back().delta;
    row.spread = f.rows.back().spread;
    row.non_unique_indicator = f.non_unique_indicator();
    const NormEstimate diff = c_norm(w - v, norm);
    row.c_norm_diff = diff.value;
    row.c_norm_error = diff.error_bound;
    if (const auto& cert = w.certificate()) {
      const auto ts = uniform_grid(S, T, 65);
      std::vector<double> cs;
      for (double t : ts) {
        cs.push_back(cert->C(t));
        row.lipschitz = std::max(row.lipschitz, cs.back());
      }
      row.gronwall_bound = std::exp(trapezoid(ts, cs)) * 2.0 * row.delta;
    } else {
      row.lipschitz = kInf;
      row.gronwall_bound = kInf;
    }
    branch_diagnostic(w, raw_upper_end, opt, S, T, study.probe, row);
    study.rows.push_back(row);
  }

  MollificationRow row;
  row.delta = raw.rows.back().delta;
  row.spread = raw.rows.back().spread;
  row.non_unique_indicator = raw.non_unique_indicator();
  row.lipschitz = kInf;
  row.gronwall_bound = kInf;
  branch_diagnostic(v, raw_upper_end, opt, S, T, study.probe, row);
  study.rows.push_back(row);
  return study;
}

void write_mollification_csv(std::ostream& os, const MollificationStudy& study) {
  os << "n,delta,spread,indicator,c_norm_diff,c_norm_error,lipschitz,gronwall_bound,meet_gap,hairpin_rejected,"
        "zero_stays_zero\n";
  for (const auto& r : study.rows) {
    os << (r.n ? std::to_string(*r.n) : "inf") << ',' << io::fmt(r.delta) << ',' << io::fmt(r.spread) << ','
       << r.non_unique_indicator << ',' << io::fmt(r.c_norm_diff) << ',' << io::fmt(r.c_norm_error) << ','
       << io::fmt(r.lipschitz) << ',' << io::fmt(r.gronwall_bound) << ',' << io::fmt(r.meet_gap) << ','
       << r.hairpin_rejected << ',' << r.zero_stays_zero << '\n';
  }
}

}  // namespace ctlab

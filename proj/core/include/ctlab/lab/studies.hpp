#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "ctlab/fields/norms.hpp"
#include "ctlab/flow/funnel.hpp"

namespace ctlab {

struct MollificationOptions {
  std::vector<double> deltas{1e-2, 1e-4, 1e-6, 1e-8};
  std::optional<Point> probe;  ///< defaults to the origin
  double probe_time = 0.0;
  NormOptions norm;            ///< the box defaults to the field's sampling box
  IntegrateOptions integrate{Scheme::adaptive_rk, 1e-9};
  double meet_tol = 1e-6;
};

/// One row per mollification level; n empty marks the raw field.
struct MollificationRow {
  std::optional<unsigned> n;
  double delta = 0.0;           ///< smallest probe offset
  double spread = 0.0;          ///< funnel spread at the horizon for that offset
  bool non_unique_indicator = false;
  double c_norm_diff = 0.0;     ///< ||W^n - V||_c over the box (0 for the raw row)
  double c_norm_error = 0.0;
  double lipschitz = 0.0;       ///< sup_t C_W(t); +inf for the raw row
  double gronwall_bound = 0.0;  ///< exp(int C_W) 2 delta; +inf for the raw row
  double meet_gap = 0.0;        ///< |x(S) - y(S)| for the hairpin candidate
  bool hairpin_rejected = false;
  bool zero_stays_zero = false; ///< particle solution from mu = 0 stays 0
};

struct MollificationStudy {
  double horizon = 0.0;
  Point probe;
  std::vector<MollificationRow> rows;
};

/// For each n: W^n = mollify(V, n), its funnel at the probe, ||W^n - V||_c,
/// the Gronwall bound from its Lipschitz certificate, and the signed branch
/// diagnostic. The hairpin candidate pairs the solution y from the probe with
/// the solution x through the raw field's upper funnel image at the horizon,
/// traced backwards; the constructor accepts it only when the two meet at the
/// probe time. A final row repeats the probes on V itself. ns must increase.
MollificationStudy mollification_study(const VectorField& v, const std::vector<unsigned>& ns,
                                       const MollificationOptions& opt = {});

/// Header "n,delta,spread,indicator,c_norm_diff,c_norm_error,lipschitz,
/// gronwall_bound,meet_gap,hairpin_rejected,zero_stays_zero"; n = inf for the
/// raw row.
void write_mollification_csv(std::ostream& os, const MollificationStudy& study);

}  // namespace ctlab

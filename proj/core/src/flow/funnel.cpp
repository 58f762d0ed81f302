#include "ctlab/flow/funnel.hpp"

#include "ctlab/errors.hpp"
#include "ctlab/flow/flow_map.hpp"

namespace ctlab {

FunnelTable funnel_probe(const VectorField& v, double s, const Point& x,
                         const std::vector<double>& deltas, double horizon,
                         const FunnelOptions& opt) {
  if (x.size() != v.dim()) throw PreconditionError("funnel_probe: point dimension mismatch");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) throw PreconditionError("funnel_probe: deltas must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1]))
      throw PreconditionError("funnel_probe: deltas must be strictly decreasing");
  }
  Point e(v.dim(), 0.0);
  if (opt.direction) {
    if (opt.direction->size() != v.dim()) throw PreconditionError("funnel_probe: direction dimension mismatch");
    const double n = norm(*opt.direction);
    if (!(n > 0.0)) throw PreconditionError("funnel_probe: zero direction");
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = (*opt.direction)[k] / n;
  } else {
    e[0] = 1.0;
  }

  FunnelTable table{s, horizon, x, e, {}};
  for (double delta : deltas) {
    Point up(x), dn(x);
    for (std::size_t k = 0; k < e.size(); ++k) {
      up[k] += delta * e[k];
      dn[k] -= delta * e[k];
    }
    const auto images = flow_map(v, s, horizon, {up, dn}, opt.integrate).images;
    FunnelRow row{delta, images[0], images[1], distance(images[0], images[1])};
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace ctlab

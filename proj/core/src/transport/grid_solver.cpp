#include "ctlab/transport/grid_solver.hpp"

#include <algorithm>
#include <cmath>

#include "ctlab/errors.hpp"

namespace ctlab {

Point DensityGrid::cell_center(std::size_t ix, std::size_t iy) const {
  return {box.lo[0] + (static_cast<double>(ix) + 0.5) * dx(), box.lo[1] + (static_cast<double>(iy) + 0.5) * dy()};
}

double DensityGrid::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * cell_volume();
}

DensityGrid DensityGrid::from_function(const Box& box, std::size_t nx, std::size_t ny,
                                       const std::function<double(double, double)>& f) {
  if (box.dim() != 2) throw PreconditionError("density grid: box must be planar");
  if (nx == 0 || ny == 0) throw PreconditionError("density grid: empty grid");
  DensityGrid g{box, nx, ny, std::vector<double>(nx * ny)};
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const Point c = g.cell_center(ix, iy);
      g.values[ix + nx * iy] = f(c[0], c[1]);
    }
  return g;
}

SignedMeasure DensityGrid::to_atoms() const { return stratified_atoms(1); }

SignedMeasure DensityGrid::stratified_atoms(std::size_t q) const {
  if (q == 0) throw PreconditionError("stratified_atoms: q must be positive");
  const double sx = dx() / static_cast<double>(q), sy = dy() / static_cast<double>(q);
  std::vector<Atom> atoms;
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double v = values[ix + nx * iy];
      if (v == 0.0) continue;
      const double x0 = box.lo[0] + static_cast<double>(ix) * dx();
      const double y0 = box.lo[1] + static_cast<double>(iy) * dy();
      for (std::size_t b = 0; b < q; ++b)
        for (std::size_t a = 0; a < q; ++a)
          atoms.push_back({{x0 + (static_cast<double>(a) + 0.5) * sx, y0 + (static_cast<double>(b) + 0.5) * sy},
                           v * sx * sy});
    }
  return SignedMeasure(2, std::move(atoms));
}

double DensityCurve::min_value() const {
  double m = slices.empty() ? 0.0 : slices.front().front();
  for (const auto& s : slices) m = std::min(m, *std::min_element(s.begin(), s.end()));
  return m;
}

double DensityCurve::max_value() const {
  double m = slices.empty() ? 0.0 : slices.front().front();
  for (const auto& s : slices) m = std::max(m, *std::max_element(s.begin(), s.end()));
  return m;
}

namespace {

class UpwindStepper {
 public:
  UpwindStepper(const VectorField& v, const DensityGrid& g, Boundary bc)
      : psi_(*v.stream_function()),
        g_(g),
        bc_(bc),
        xs_(g.nx + 1),
        ys_(g.ny + 1),
        corner_((g.nx + 1) * (g.ny + 1)),
        fx_((g.nx + 1) * g.ny),
        fy_(g.nx * (g.ny + 1)) {
    for (std::size_t i = 0; i <= g.nx; ++i) xs_[i] = g.box.lo[0] + static_cast<double>(i) * g.dx();
    for (std::size_t j = 0; j <= g.ny; ++j) ys_[j] = g.box.lo[1] + static_cast<double>(j) * g.dy();
    xs_[g.nx] = g.box.hi[0];
    ys_[g.ny] = g.box.hi[1];
  }

  // Face fluxes at time t. fx(i, j): through the vertical face x = x_i,
  // positive in +x; fy(i, j): through y = y_j, positive in +y.
  void fluxes(double t) {
    const std::size_t nx = g_.nx, ny = g_.ny;
    for (std::size_t j = 0; j <= ny; ++j)
      for (std::size_t i = 0; i <= nx; ++i) corner_[i + (nx + 1) * j] = psi_(t, xs_[i], ys_[j]);
    auto P = [&](std::size_t i, std::size_t j) { return corner_[i + (nx + 1) * j]; };
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i <= nx; ++i) fx_[i + (nx + 1) * j] = P(i, j + 1) - P(i, j);
    for (std::size_t j = 0; j <= ny; ++j)
      for (std::size_t i = 0; i < nx; ++i) fy_[i + nx * j] = -(P(i + 1, j) - P(i, j));
    if (bc_ == Boundary::periodic) {
      // the wrap faces must carry one flux; otherwise the discrete divergence
      // of the boundary cells does not vanish
      double scale = 0.0, gap = 0.0;
      for (std::size_t j = 0; j < ny; ++j) {
        scale = std::max(scale, std::abs(fx_[(nx + 1) * j]));
        gap = std::max(gap, std::abs(fx_[(nx + 1) * j] - fx_[nx + (nx + 1) * j]));
      }
      for (std::size_t i = 0; i < nx; ++i) {
        scale = std::max(scale, std::abs(fy_[i]));
        gap = std::max(gap, std::abs(fy_[i] - fy_[i + nx * ny]));
      }
      if (gap > 1e-12 * std::max(1.0, scale))
        throw PreconditionError("grid_solve: stream function is not periodic-compatible on this box");
      for (std::size_t j = 0; j < ny; ++j) fx_[nx + (nx + 1) * j] = fx_[(nx + 1) * j];
      for (std::size_t i = 0; i < nx; ++i) fy_[i + nx * ny] = fy_[i];
    }
  }

  // max over cells of total outgoing flux / cell volume
  double max_outflow_rate() const {
    const std::size_t nx = g_.nx, ny = g_.ny;
    double m = 0.0;
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i) {
        const double out = std::max(fx_[i + 1 + (nx + 1) * j], 0.0) + std::max(-fx_[i + (nx + 1) * j], 0.0) +
                           std::max(fy_[i + nx * (j + 1)], 0.0) + std::max(-fy_[i + nx * j], 0.0);
        m = std::max(m, out);
      }
    return m / g_.cell_volume();
  }

  void advance(std::vector<double>& v, double dt) {
    const std::size_t nx = g_.nx, ny = g_.ny;
    const bool per = bc_ == Boundary::periodic;
    auto at = [&](long i, long j) -> double {
      if (per) {
        i = (i + static_cast<long>(nx)) % static_cast<long>(nx);
        j = (j + static_cast<long>(ny)) % static_cast<long>(ny);
      } else if (i < 0 || j < 0 || i >= static_cast<long>(nx) || j >= static_cast<long>(ny)) {
        return 0.0;
      }
      return v[static_cast<std::size_t>(i) + nx * static_cast<std::size_t>(j)];
    };
    next_.assign(v.size(), 0.0);
    const double k = dt / g_.cell_volume();
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i) {
        const long li = static_cast<long>(i), lj = static_cast<long>(j);
        const double c = v[i + nx * j];
        const double fl = fx_[i + (nx + 1) * j], fr = fx_[i + 1 + (nx + 1) * j];
        const double fb = fy_[i + nx * j], ft = fy_[i + nx * (j + 1)];
        const double out = std::max(fr, 0.0) + std::max(-fl, 0.0) + std::max(ft, 0.0) + std::max(-fb, 0.0);
        const double in = std::max(fl, 0.0) * at(li - 1, lj) + std::max(-fr, 0.0) * at(li + 1, lj) +
                          std::max(fb, 0.0) * at(li, lj - 1) + std::max(-ft, 0.0) * at(li, lj + 1);
        next_[i + nx * j] = c * (1.0 - k * out) + k * in;
      }
    v.swap(next_);
  }

 private:
  std::function<double(double, double, double)> psi_;
  const DensityGrid& g_;
  Boundary bc_;
  std::vector<double> xs_, ys_, corner_, fx_, fy_, next_;
};

}  // namespace

DensityCurve grid_solve(const VectorField& v, const DensityGrid& initial, const std::vector<double>& times,
                        const GridSolveOptions& opt) {
  if (!v.stream_function())
    throw PreconditionError("grid_solve: field '" + v.name() + "' is not certified divergence-free");
  if (initial.box.dim() != 2 || initial.values.size() != initial.nx * initial.ny)
    throw PreconditionError("grid_solve: malformed initial grid");
  if (times.empty()) throw PreconditionError("grid_solve: no output times");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw PreconditionError("grid_solve: output times must increase");
  for (double x : initial.values)
    if (!(x >= 0.0 && x <= 1.0)) throw PreconditionError("grid_solve: initial values must lie in [0, 1]");
  if (!(opt.cfl > 0.0 && opt.cfl <= 1.0)) throw PreconditionError("grid_solve: cfl must lie in (0, 1]");

  DensityCurve out{initial.box, initial.nx, initial.ny, {times.front()}, {initial.values}, {initial.mass()}, 0};
  UpwindStepper stepper(v, initial, opt.boundary);
  std::vector<double> cur = initial.values;
  double t = times.front();
  for (std::size_t n = 1; n < times.size(); ++n) {
    const double stop = times[n];
    while (t < stop) {
      // fluxes at the step midpoint; the step is chosen from the rate at t
      stepper.fluxes(t);
      const double rate = stepper.max_outflow_rate();
      double dt;
      if (opt.fixed_dt) {
        dt = std::min(*opt.fixed_dt, stop - t);
      } else {
        dt = rate > 0.0 ? std::min(opt.cfl / rate, stop - t) : stop - t;
      }
      stepper.fluxes(t + 0.5 * dt);
      const double rate_mid = stepper.max_outflow_rate();
      if (dt * rate_mid > 1.0) {
        if (opt.fixed_dt)
          throw CflError("grid_solve: time step " + std::to_string(dt) + " violates the CFL bound " +
                         std::to_string(1.0 / rate_mid));
        dt = opt.cfl / rate_mid;
        stepper.fluxes(t + 0.5 * dt);
        if (dt * stepper.max_outflow_rate() > 1.0) throw CflError("grid_solve: could not satisfy CFL");
      }
      stepper.advance(cur, dt);
      t = (stop - t <= dt) ? stop : t + dt;
      ++out.steps;
    }
    out.times.push_back(stop);
    DensityGrid g{initial.box, initial.nx, initial.ny, cur};
    out.masses.push_back(g.mass());
    out.slices.push_back(cur);
  }
  return out;
}

}  // namespace ctlab

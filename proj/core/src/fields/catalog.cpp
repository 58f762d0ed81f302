#include "ctlab/fields/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "ctlab/errors.hpp"

namespace ctlab {

namespace {

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> list = {
      {"constant", "V(t,x) = c; divergence-free", "value=[1] (dimension = length)"},
      {"linear", "V(t,x) = rate * P(x), P the projection onto the ball of radius cap; Lipschitz",
       "dim=1 rate=1 cap=4"},
      {"log_lipschitz",
       "V = a(t) phi(x) (d=1) or a(t) (phi(x2), -phi(x1)) (d=2), phi(u) = u(1-ln|u|) clipped at "
       "|u|=1, a(t) = 1 + amplitude sin(2 pi t/T); log-Lipschitz modulus, divergence-free in d=2",
       "dim=2 amplitude=0.5"},
      {"rotation_divfree", "V(x,y) = omega (-y, x) saturated at radius cap; divergence-free",
       "omega=1 cap=4"},
      {"sqrt_branch", "V(x) = 2 sqrt(min(|x1|, cap)) e1; Holder-1/2, no Osgood certificate",
       "dim=1 cap=4"},
      {"time_switch", "V(t,x) = speed e1 for t < switch, -speed e1 afterwards; Borel in time",
       "dim=1 speed=1 switch=T/2"},
      {"zero", "V = 0", "dim=1"},
  };
  return list;
}

class ParamReader {
 public:
  ParamReader(const std::string& field, const FieldParams& p) : field_(field), p_(p) {}

  double scalar(const std::string& key, double def) {
    used_.insert(key);
    auto it = p_.find(key);
    if (it == p_.end()) return def;
    if (it->second.size() != 1)
      throw PreconditionError("field '" + field_ + "': parameter '" + key + "' must be a scalar");
    return it->second[0];
  }
  std::vector<double> vec(const std::string& key, std::vector<double> def) {
    used_.insert(key);
    auto it = p_.find(key);
    return it == p_.end() ? def : it->second;
  }
  std::size_t dim(std::size_t def) {
    const double d = scalar("dim", static_cast<double>(def));
    if (d < 1 || d != std::floor(d) || d > 12)
      throw PreconditionError("field '" + field_ + "': dim must be an integer in [1, 12]");
    return static_cast<std::size_t>(d);
  }
  void finish() const {
    for (const auto& [k, v] : p_)
      if (!used_.count(k))
        throw PreconditionError("field '" + field_ + "': unknown parameter '" + k + "'");
  }

 private:
  std::string field_;
  const FieldParams& p_;
  std::set<std::string> used_;
};

double positive(const std::string& field, const std::string& key, double v) {
  if (!(v > 0.0)) throw PreconditionError("field '" + field + "': " + key + " must be positive");
  return v;
}

// integral of log_lipschitz_profile from 0 to u
double log_lipschitz_primitive(double u) {
  const double a = std::abs(u);
  if (a == 0.0) return 0.0;
  if (a <= 1.0) return 0.75 * a * a - 0.5 * a * a * std::log(a);
  return 0.75 + (a - 1.0);
}

}  // namespace

double log_lipschitz_profile(double u) {
  const double a = std::abs(u);
  if (a >= 1.0) return u > 0 ? 1.0 : -1.0;
  if (a == 0.0) return 0.0;
  return u * (1.0 - std::log(a));
}

std::vector<CatalogEntry> catalog_list(const std::string& filter) {
  std::vector<CatalogEntry> out;
  for (const auto& e : entries())
    if (filter.empty() || e.name.find(filter) != std::string::npos) out.push_back(e);
  return out;
}

VectorField builtin_field(const std::string& name, const FieldParams& params) {
  ParamReader p(name, params);
  const double T = positive(name, "horizon", p.scalar("horizon", 1.0));
  const double half = positive(name, "box", p.scalar("box", 1.0));

  auto finish = [&](VectorField v) {
    p.finish();
    v.with_sampling_box(Box::cube(v.dim(), half));
    return v;
  };
  auto constant_fn = [](double c) { return [c](double) { return c; }; };

  if (name == "zero") {
    const std::size_t d = p.dim(1);
    VectorField v("zero", d, T, [](double, std::span<const double>, std::span<double> out) {
      std::fill(out.begin(), out.end(), 0.0);
    });
    v.with_sup_norm(constant_fn(0.0)).with_certificate({constant_fn(0.0), Modulus::linear()});
    if (d == 2) v.with_stream_function([](double, double, double) { return 0.0; });
    return finish(std::move(v));
  }

  if (name == "constant") {
    const auto c = p.vec("value", {1.0});
    if (c.empty()) throw PreconditionError("field 'constant': value must be non-empty");
    VectorField v("constant", c.size(), T,
                  [c](double, std::span<const double>, std::span<double> out) {
                    std::copy(c.begin(), c.end(), out.begin());
                  });
    v.with_sup_norm(constant_fn(norm(c))).with_certificate({constant_fn(0.0), Modulus::linear()});
    if (c.size() == 2) {
      const double c1 = c[0], c2 = c[1];
      v.with_stream_function([c1, c2](double, double x, double y) { return c1 * y - c2 * x; });
    }
    return finish(std::move(v));
  }

  if (name == "linear") {
    const std::size_t d = p.dim(1);
    const double rate = p.scalar("rate", 1.0);
    const double cap = positive(name, "cap", p.scalar("cap", 4.0));
    VectorField v("linear", d, T, [rate, cap](double, std::span<const double> x, std::span<double> out) {
      const double r = norm(x);
      const double s = r > cap ? cap / r : 1.0;
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = rate * s * x[i];
    });
    v.with_sup_norm(constant_fn(std::abs(rate) * cap))
        .with_certificate({constant_fn(std::abs(rate)), Modulus::linear()});
    return finish(std::move(v));
  }

  if (name == "rotation_divfree") {
    const double omega = p.scalar("omega", 1.0);
    const double cap = positive(name, "cap", p.scalar("cap", 4.0));
    VectorField v("rotation_divfree", 2, T,
                  [omega, cap](double, std::span<const double> x, std::span<double> out) {
                    const double r = std::hypot(x[0], x[1]);
                    const double s = r > cap ? cap / r : 1.0;
                    out[0] = -omega * s * x[1];
                    out[1] = omega * s * x[0];
                  });
    v.with_sup_norm(constant_fn(std::abs(omega) * cap))
        .with_certificate({constant_fn(std::abs(omega)), Modulus::linear()})
        .with_stream_function([omega, cap](double, double x, double y) {
          const double r = std::hypot(x, y);
          const double G = r <= cap ? 0.5 * r * r : 0.5 * cap * cap + cap * (r - cap);
          return -omega * G;
        });
    return finish(std::move(v));
  }

  if (name == "sqrt_branch") {
    const std::size_t d = p.dim(1);
    const double cap = positive(name, "cap", p.scalar("cap", 4.0));
    VectorField v("sqrt_branch", d, T, [cap](double, std::span<const double> x, std::span<double> out) {
      std::fill(out.begin(), out.end(), 0.0);
      out[0] = 2.0 * std::sqrt(std::min(std::abs(x[0]), cap));
    });
    // |2 sqrt(a) - 2 sqrt(b)| <= 2 sqrt(|a - b|): a Holder certificate, not Osgood
    v.with_sup_norm(constant_fn(2.0 * std::sqrt(cap)))
        .with_certificate({constant_fn(2.0), Modulus::holder(0.5)});
    return finish(std::move(v));
  }

  if (name == "log_lipschitz") {
    const std::size_t d = p.dim(2);
    if (d > 2) throw PreconditionError("field 'log_lipschitz': dim must be 1 or 2");
    const double amp = p.scalar("amplitude", 0.5);
    if (std::abs(amp) >= 1.0) throw PreconditionError("field 'log_lipschitz': |amplitude| must be < 1");
    auto a = [amp, T](double t) { return 1.0 + amp * std::sin(2.0 * std::numbers::pi * t / T); };
    VectorField v("log_lipschitz", d, T, [a, d](double t, std::span<const double> x, std::span<double> out) {
      const double at = a(t);
      if (d == 1) {
        out[0] = at * log_lipschitz_profile(x[0]);
      } else {
        out[0] = at * log_lipschitz_profile(x[1]);
        out[1] = -at * log_lipschitz_profile(x[0]);
      }
    });
    // concavity of phi on [0,1] gives |phi(u)-phi(v)| <= (1 + ln 2) rho(|u-v|) per component
    const double k = (1.0 + std::numbers::ln2) * std::sqrt(static_cast<double>(d));
    v.with_sup_norm([a, d](double t) { return std::abs(a(t)) * std::sqrt(static_cast<double>(d)); })
        .with_certificate({[a, k](double t) { return k * std::abs(a(t)); }, Modulus::log_lipschitz()});
    if (d == 2)
      v.with_stream_function([a](double t, double x, double y) {
        return a(t) * (log_lipschitz_primitive(x) + log_lipschitz_primitive(y));
      });
    return finish(std::move(v));
  }

  if (name == "time_switch") {
    const std::size_t d = p.dim(1);
    const double speed = p.scalar("speed", 1.0);
    const double ts = p.scalar("switch", 0.5 * T);
    VectorField v("time_switch", d, T,
                  [speed, ts](double t, std::span<const double>, std::span<double> out) {
                    std::fill(out.begin(), out.end(), 0.0);
                    out[0] = t < ts ? speed : -speed;
                  });
    v.with_sup_norm(constant_fn(std::abs(speed))).with_certificate({constant_fn(0.0), Modulus::linear()});
    if (d == 2)
      v.with_stream_function([speed, ts](double t, double, double y) { return (t < ts ? speed : -speed) * y; });
    return finish(std::move(v));
  }

  throw PreconditionError("unknown catalog field '" + name + "'");
}

}  // namespace ctlab

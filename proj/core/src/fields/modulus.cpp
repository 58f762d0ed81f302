#include "ctlab/fields/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ctlab/errors.hpp"
#include "ctlab/quadrature.hpp"

namespace ctlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProbeEps[] = {1e-3, 1e-6, 1e-9, 1e-12};
}  // namespace

Modulus Modulus::linear() { return Modulus(Kind::linear, 1.0, true); }

Modulus Modulus::log_lipschitz() { return Modulus(Kind::log_lipschitz, 1.0, true); }

Modulus Modulus::holder(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("holder modulus needs alpha in (0,1)");
  return Modulus(Kind::holder, alpha, false);
}

Modulus Modulus::tabulated(std::vector<double> s, std::vector<double> rho,
                           std::optional<bool> osgood) {
  if (s.size() != rho.size() || s.size() < 2)
    throw PreconditionError("tabulated modulus: need at least two (s, rho) rows of equal length");
  if (s.front() != 0.0 || rho.front() != 0.0)
    throw PreconditionError("tabulated modulus: first row must be (0, 0)");
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i] > s[i - 1])) throw PreconditionError("tabulated modulus: s must be strictly increasing");
    if (!(rho[i] > 0.0)) throw PreconditionError("tabulated modulus: rho must be positive for s > 0");
    if (rho[i] < rho[i - 1]) throw PreconditionError("tabulated modulus: rho must be nondecreasing");
  }
  if (s.back() >= 1.0) {
    // values at s >= 1 are replaced by the +inf sentinel; drop them
    while (s.size() > 2 && s.back() >= 1.0) {
      s.pop_back();
      rho.pop_back();
    }
    if (s.back() >= 1.0) throw PreconditionError("tabulated modulus: need a node in (0,1)");
  }
  Modulus m(Kind::tabulated, 1.0, osgood);
  for (std::size_t i = 1; i < s.size(); ++i) {
    m.log_s_.push_back(std::log(s[i]));
    m.log_rho_.push_back(std::log(rho[i]));
  }
  return m;
}

Modulus Modulus::from_csv(std::istream& in, std::optional<bool> osgood) {
  std::vector<double> s, rho;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a = 0.0, b = 0.0;
    if (!(ls >> a >> b)) {
      if (s.empty() && lineno == 1) continue;  // header
      throw PreconditionError("modulus CSV: malformed row at line " + std::to_string(lineno));
    }
    s.push_back(a);
    rho.push_back(b);
  }
  return tabulated(std::move(s), std::move(rho), osgood);
}

double Modulus::table_eval(double s) const {
  const double ls = std::log(s);
  const std::size_t n = log_s_.size();
  if (n == 1) return std::exp(log_rho_[0] + (ls - log_s_[0]));
  std::size_t hi;
  if (ls <= log_s_.front()) {
    hi = 1;
  } else if (ls >= log_s_.back()) {
    hi = n - 1;
  } else {
    hi = static_cast<std::size_t>(std::upper_bound(log_s_.begin(), log_s_.end(), ls) - log_s_.begin());
  }
  const std::size_t lo = hi - 1;
  const double slope = (log_rho_[hi] - log_rho_[lo]) / (log_s_[hi] - log_s_[lo]);
  return std::exp(log_rho_[lo] + slope * (ls - log_s_[lo]));
}

double Modulus::operator()(double s) const {
  if (s >= 1.0) return kInf;
  if (s <= 0.0) return 0.0;
  switch (kind_) {
    case Kind::linear:
      return s;
    case Kind::log_lipschitz:
      return s * (1.0 - std::log(s));
    case Kind::holder:
      return std::pow(s, alpha_);
    case Kind::tabulated:
      return table_eval(s);
  }
  return kInf;
}

std::string Modulus::describe() const {
  switch (kind_) {
    case Kind::linear:
      return "linear";
    case Kind::log_lipschitz:
      return "log-lipschitz";
    case Kind::holder: {
      std::ostringstream os;
      os << "holder(" << alpha_ << ")";
      return os.str();
    }
    case Kind::tabulated:
      return "tabulated(" + std::to_string(log_s_.size() + 1) + " rows)";
  }
  return "?";
}

OsgoodIntegral osgood_integral(const Modulus& rho, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("osgood_integral: eps must lie in (0,1)");
  // s = e^u turns the 1/s-type singularity into a bounded integrand.
  auto integrand = [&rho](double u) {
    const double s = std::exp(u);
    if (s >= 1.0) return 0.0;
    return s / rho(s);
  };
  const auto r = integrate_adaptive(integrand, std::log(eps), 0.0, 1e-11);
  return {r.value, r.error_bound};
}

const char* to_string(OsgoodClass c) {
  switch (c) {
    case OsgoodClass::osgood:
      return "osgood";
    case OsgoodClass::not_osgood:
      return "not_osgood";
    case OsgoodClass::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::vector<double> osgood_profile(const Modulus& rho) {
  std::vector<double> out;
  for (double eps : kProbeEps) out.push_back(osgood_integral(rho, eps).value);
  return out;
}

OsgoodClass classify_osgood(const Modulus& rho, bool use_analytic_flag) {
  if (use_analytic_flag && rho.osgood_flag())
    return *rho.osgood_flag() ? OsgoodClass::osgood : OsgoodClass::not_osgood;
  const auto I = osgood_profile(rho);
  const double last = I[3] - I[2];
  const double prev = I[2] - I[1];
  if (last / 3.0 >= 0.5) return OsgoodClass::osgood;
  if (last <= 1e-3 * (1.0 + std::abs(I[3])) && last <= prev) return OsgoodClass::not_osgood;
  return OsgoodClass::inconclusive;
}

}  // namespace ctlab

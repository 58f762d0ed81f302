#pragma once

#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace ctlab {

/// Modulus of continuity rho: [0,1) -> [0,inf), rho(0) = 0, nondecreasing,
/// continuous, extended by +inf on [1, inf).
class Modulus {
 public:
  enum class Kind { linear, log_lipschitz, holder, tabulated };

  /// rho(s) = s.
  static Modulus linear();
  /// rho(s) = s (1 - ln s).
  static Modulus log_lipschitz();
  /// rho(s) = s^alpha, alpha in (0,1).
  static Modulus holder(double alpha);
  /// Table of (s_i, rho_i) with s_0 = 0 < s_1 < ..., rho_0 = 0, rho_i > 0 for
  /// i > 0 and nondecreasing. Evaluated by log-log interpolation between
  /// positive nodes and power-law extrapolation outside them.
  static Modulus tabulated(std::vector<double> s, std::vector<double> rho,
                           std::optional<bool> osgood = std::nullopt);
  /// Two-column CSV (s, rho(s)); an optional non-numeric header line is skipped.
  static Modulus from_csv(std::istream& in, std::optional<bool> osgood = std::nullopt);

  double operator()(double s) const;

  Kind kind() const { return kind_; }
  double exponent() const { return alpha_; }
  /// Analytic Osgood flag, if known.
  std::optional<bool> osgood_flag() const { return osgood_; }
  std::string describe() const;

 private:
  Modulus(Kind kind, double alpha, std::optional<bool> osgood)
      : kind_(kind), alpha_(alpha), osgood_(osgood) {}
  double table_eval(double s) const;

  Kind kind_;
  double alpha_ = 1.0;
  std::optional<bool> osgood_;
  std::vector<double> log_s_;
  std::vector<double> log_rho_;
};

/// Approximation of the integral of 1/rho over [eps, 1].
struct OsgoodIntegral {
  double value = 0.0;
  double error_bound = 0.0;
};

OsgoodIntegral osgood_integral(const Modulus& rho, double eps);

enum class OsgoodClass { osgood, not_osgood, inconclusive };

const char* to_string(OsgoodClass c);

/// Numerical Osgood classification from the integrals at eps = 1e-3, 1e-6,
/// 1e-9, 1e-12. Growth of at least 0.5 per decade between 1e-9 and 1e-12
/// means osgood; a sequence whose last increment is below 1e-3 (relative)
/// and shrinking means not_osgood. The analytic flag wins when present.
OsgoodClass classify_osgood(const Modulus& rho, bool use_analytic_flag = true);

/// Integrals backing the classification, one per probe epsilon.
std::vector<double> osgood_profile(const Modulus& rho);

}  // namespace ctlab

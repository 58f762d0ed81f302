#include "ctlab/measures/signed_measure.hpp"

#include <cmath>

#include "ctlab/errors.hpp"

namespace ctlab {

SignedMeasure::SignedMeasure(std::size_t dim, std::vector<Atom> atoms) : dim_(dim) {
  atoms_.reserve(atoms.size());
  for (auto& a : atoms) {
    if (a.x.size() != dim_) throw PreconditionError("signed measure: atom dimension mismatch");
    if (!std::isfinite(a.w) || !all_finite(a.x)) throw PreconditionError("signed measure: non-finite atom");
    if (a.w != 0.0) atoms_.push_back(std::move(a));
  }
}

SignedMeasure SignedMeasure::dirac(const Point& x, double w) { return SignedMeasure(x.size(), {{x, w}}); }

double SignedMeasure::tv_norm() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += std::abs(a.w);
  return s;
}

double SignedMeasure::mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.w;
  return s;
}

bool SignedMeasure::nonnegative() const {
  for (const auto& a : atoms_)
    if (a.w < 0.0) return false;
  return true;
}

std::pair<SignedMeasure, SignedMeasure> SignedMeasure::jordan() const {
  std::vector<Atom> pos, neg;
  for (const auto& a : atoms_) {
    if (a.w > 0.0) pos.push_back(a);
    else neg.push_back({a.x, -a.w});
  }
  return {SignedMeasure(dim_, std::move(pos)), SignedMeasure(dim_, std::move(neg))};
}

SignedMeasure SignedMeasure::pushforward(const std::function<Point(const Point&)>& phi,
                                         bool consolidate) const {
  std::vector<Atom> moved;
  moved.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    Point y = phi(a.x);
    if (y.size() != dim_ || !all_finite(y))
      throw PreconditionError("pushforward: map returned a non-finite or mis-sized point");
    moved.push_back({std::move(y), a.w});
  }
  SignedMeasure out(dim_, std::move(moved));
  return consolidate ? out.consolidated() : out;
}

SignedMeasure SignedMeasure::consolidated() const {
  std::vector<Atom> merged;
  for (const auto& a : atoms_) {
    bool found = false;
    for (auto& m : merged) {
      double dmax = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) dmax = std::max(dmax, std::abs(m.x[k] - a.x[k]));
      if (dmax <= kCoincidence) {
        m.w += a.w;
        found = true;
        break;
      }
    }
    if (!found) merged.push_back(a);
  }
  return SignedMeasure(dim_, std::move(merged));
}

SignedMeasure SignedMeasure::scaled(double a) const {
  std::vector<Atom> out;
  for (const auto& at : atoms_) out.push_back({at.x, a * at.w});
  return SignedMeasure(dim_, std::move(out));
}

SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b) {
  if (a.dim_ != b.dim_) throw PreconditionError("signed measure sum: dimension mismatch");
  std::vector<Atom> all(a.atoms_);
  all.insert(all.end(), b.atoms_.begin(), b.atoms_.end());
  return SignedMeasure(a.dim_, std::move(all));
}

SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b) { return a + b.scaled(-1.0); }

}  // namespace ctlab

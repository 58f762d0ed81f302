#include "ctlab/errors.hpp"

#include <sstream>

namespace ctlab {

namespace {
std::string with_bound(const std::string& what, double achieved) {
  std::ostringstream os;
  os << what << " (achieved error bound " << achieved << ")";
  return os.str();
}
}  // namespace

QuadratureError::QuadratureError(const std::string& what, double achieved_error)
    : Error(with_bound(what, achieved_error)), achieved_error_(achieved_error) {}

}  // namespace ctlab

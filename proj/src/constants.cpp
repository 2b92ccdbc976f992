#include "gsod/constants.hpp"

#include <cmath>
#include <sstream>

#include "gsod/errors.hpp"

namespace gsod {

double ProblemConstants::swirl_at_zero() const {
  return family == ProfileFamily::generic ? std::sqrt(eps * eps * FR) : eps * FR;
}

double ProblemConstants::swirl_at_zero_squared() const {
  return family == ProfileFamily::generic ? eps * eps * FR : eps * eps * FR * FR;
}

ProblemConstants make_constants(const ProfileFunctions& profile, double R, double eps) {
  profile.validate();
  if (!(R > 0.0)) fail(ErrorKind::InvalidArgument, "R must be positive");
  if (!std::isfinite(eps)) fail(ErrorKind::InvalidArgument, "ε must be finite");

  ProblemConstants c;
  c.R = R;
  c.eps = eps;
  c.family = profile.family;
  c.a = profile.h.derivative(0.0, 1);
  c.b = profile.family == ProfileFamily::generic ? -0.5 * profile.ftilde.derivative(0.0, 1) : 0.0;
  const double ar2 = c.a * R * R;
  c.A0 = (ar2 + c.b) / 4.0;
  c.A1 = (5.0 * ar2 + c.b) / (16.0 * R);
  c.kappa = 4.0 * c.A0 * (c.A0 - c.A1 * R);

  if (profile.family == ProfileFamily::generic) {
    const double margin = ar2 - 3.0 * c.b;
    if (!(margin > 0.0)) {
      std::ostringstream msg;
      msg << "aR^2 - 3b = " << margin << " <= 0 (need R > sqrt(3b/a) = " << std::sqrt(3.0 * c.b / c.a)
          << ")";
      fail(ErrorKind::InadmissibleR, msg.str());
    }
    c.FR = -c.kappa;
  } else {
    c.FR = ar2 / 4.0;
  }
  c.admissible = true;
  return c;
}

}  // namespace gsod

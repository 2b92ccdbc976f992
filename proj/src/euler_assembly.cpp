#include "gsod/euler_assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gsod/errors.hpp"

namespace gsod {

namespace {

// Inside this rescaled radius the jet is reconstructed from a ring around the point.
constexpr double kPoleRadius = 3e-3;

FlowSample outside_sample(double r, double z, double p_out) {
  FlowSample s;
  s.r = r;
  s.z = z;
  s.p = p_out;
  return s;
}

}  // namespace

SolutionBundle::SolutionBundle(ProblemConstants consts, ProfileFunctions profile, ShapeState shape,
                               DirichletSolution solution)
    : consts_(consts),
      profile_(std::move(profile)),
      shape_(std::move(shape)),
      sol_(std::move(solution)),
      interp_(sol_.phi.interpolant()) {
  const int n = 1024;
  for (int k = 0; k < n; ++k)
    half_width_ = std::max(half_width_, consts_.eps * sol_.map.scale(2.0 * std::numbers::pi * k / n));
}

double SolutionBundle::swirl(double psi) const {
  const double e = consts_.eps;
  if (consts_.family == ProfileFamily::generic) {
    const double rad = e * e * consts_.FR + profile_.ftilde(psi);
    if (!(rad > 0.0)) {
      std::ostringstream msg;
      msg << "eps^2 F_R + Ftilde(psi) = " << rad << " at psi = " << psi;
      fail(ErrorKind::NegativeRadicand, msg.str());
    }
    return std::sqrt(rad);
  }
  const double f = e * consts_.FR + profile_.ftilde(psi);
  if (!(f > 0.0)) {
    std::ostringstream msg;
    msg << "eps F_R + Ftilde(psi) = " << f << " at psi = " << psi;
    fail(ErrorKind::NegativeRadicand, msg.str());
  }
  return f;
}

double SolutionBundle::swirl_derivative(double psi, double swirl_value) const {
  const double d = profile_.ftilde.derivative(psi, 1);
  return consts_.family == ProfileFamily::generic ? 0.5 * d / swirl_value : d;
}

double SolutionBundle::swirl_sq_derivative(double psi) const {
  const double d = profile_.ftilde.derivative(psi, 1);
  return consts_.family == ProfileFamily::generic ? d : 2.0 * swirl(psi) * d;
}

bool SolutionBundle::inside(double r, double z) const {
  const double e = consts_.eps;
  if (e == 0.0) return false;
  const double x = (r - consts_.R) / e, y = z / e;
  return std::hypot(x, y) < sol_.map.scale(std::atan2(y, x));
}

FlowSample SolutionBundle::at(double r, double z) const {
  const double e = consts_.eps;
  if (e == 0.0) return outside_sample(r, z, outside_pressure());
  const double x = (r - consts_.R) / e, y = z / e;
  const double theta = std::atan2(y, x);
  if (!(std::hypot(x, y) < sol_.map.scale(theta))) return outside_sample(r, z, outside_pressure());
  return from_jet(r, z, cartesian_jet(x, y));
}

FlowSample SolutionBundle::at_reference(double rho, double theta) const {
  const double e = consts_.eps;
  const double big_rho = sol_.map.physical_radius(rho, theta);
  const double r = consts_.R + e * big_rho * std::cos(theta);
  const double z = e * big_rho * std::sin(theta);
  if (e == 0.0) return outside_sample(r, z, outside_pressure());
  if (big_rho < kPoleRadius) return from_jet(r, z, cartesian_jet(big_rho * std::cos(theta), big_rho * std::sin(theta)));
  return from_jet(r, z, sol_.map.to_cartesian(interp_.jet(rho, theta), rho, theta));
}

CartesianJet SolutionBundle::cartesian_jet(double x, double y) const {
  const double big_rho = std::hypot(x, y);
  if (big_rho >= kPoleRadius) {
    const double theta = std::atan2(y, x);
    const double rho = sol_.map.reference_radius(big_rho, theta);
    return sol_.map.to_cartesian(interp_.jet(rho, theta), rho, theta);
  }
  // Near the pole the polar chain rule divides round-off by ρ². Average the
  // jet over four points at distance δ and 2δ instead and extrapolate the
  // O(δ²) bias away.
  auto ring = [&](double d) {
    CartesianJet acc;
    for (int q = 0; q < 4; ++q) {
      const double a = std::numbers::pi * (0.25 + 0.5 * q);
      const CartesianJet j = cartesian_jet(x + d * std::cos(a), y + d * std::sin(a));
      acc.f += 0.25 * j.f;
      acc.f_x += 0.25 * j.f_x;
      acc.f_y += 0.25 * j.f_y;
      acc.f_xx += 0.25 * j.f_xx;
      acc.f_xy += 0.25 * j.f_xy;
      acc.f_yy += 0.25 * j.f_yy;
    }
    return acc;
  };
  const CartesianJet a = ring(2.0 * kPoleRadius), b = ring(4.0 * kPoleRadius);
  auto extrap = [](double u, double v) { return (4.0 * u - v) / 3.0; };
  return {extrap(a.f, b.f),       extrap(a.f_x, b.f_x),   extrap(a.f_y, b.f_y),
          extrap(a.f_xx, b.f_xx), extrap(a.f_xy, b.f_xy), extrap(a.f_yy, b.f_yy)};
}

FlowSample SolutionBundle::from_jet(double r, double z, const CartesianJet& j) const {
  const double e = consts_.eps;

  FlowSample s;
  s.inside = true;
  s.r = r;
  s.z = z;
  s.psi = e * e * j.f;
  s.psi_r = e * j.f_x;
  s.psi_z = e * j.f_y;
  s.psi_rr = j.f_xx;
  s.psi_rz = j.f_xy;
  s.psi_zz = j.f_yy;

  const double F = swirl(s.psi);
  const double dF = swirl_derivative(s.psi, F);
  const double dF2 = swirl_sq_derivative(s.psi);
  const double hp = profile_.h.derivative(s.psi, 1);
  const double grad2 = s.psi_r * s.psi_r + s.psi_z * s.psi_z;

  s.swirl = F;
  s.u_r = -s.psi_z / r;
  s.u_z = s.psi_r / r;
  s.u_phi = F / r;
  s.p = profile_.h(s.psi) - (grad2 + F * F) / (2.0 * r * r);
  s.p_r = hp * s.psi_r - (s.psi_r * s.psi_rr + s.psi_z * s.psi_rz + F * dF * s.psi_r) / (r * r) +
          (grad2 + F * F) / (r * r * r);
  s.p_z = hp * s.psi_z - (s.psi_r * s.psi_rz + s.psi_z * s.psi_zz + F * dF * s.psi_z) / (r * r);
  s.omega_r = -dF * s.psi_z / r;
  s.omega_z = dF * s.psi_r / r;
  s.omega_phi = -r * hp + dF2 / (2.0 * r);
  return s;
}

void AxiField::resize(int nr_, int nz_) {
  nr = nr_;
  nz = nz_;
  const auto n = static_cast<std::size_t>(nr) * static_cast<std::size_t>(nz);
  r.assign(static_cast<std::size_t>(nr), 0.0);
  z.assign(static_cast<std::size_t>(nz), 0.0);
  inside.assign(n, 0);
  for (auto* v : {&u_r, &u_phi, &u_z, &p, &omega_r, &omega_phi, &omega_z, &psi}) v->assign(n, 0.0);
}

void AxiField::store(int i, int j, const FlowSample& s) {
  const auto k = static_cast<std::size_t>(index(i, j));
  inside[k] = s.inside ? 1 : 0;
  u_r[k] = s.u_r;
  u_phi[k] = s.u_phi;
  u_z[k] = s.u_z;
  p[k] = s.p;
  omega_r[k] = s.omega_r;
  omega_phi[k] = s.omega_phi;
  omega_z[k] = s.omega_z;
  psi[k] = s.psi;
}

BundlePtr make_bundle(const ShapeState& state, const ProblemConstants& consts,
                      const ProfileFunctions& profile, GridPtr grid) {
  if (!state.converged) fail(ErrorKind::InvalidArgument, "assembly needs a converged shape state");
  const GsDirichlet dirichlet(consts, profile, grid);
  DirichletSolution sol = dirichlet.solve(state.B);
  auto bundle = std::make_shared<const SolutionBundle>(consts, profile, state, std::move(sol));
  // Validate the radicand at every collocation node of the closed domain.
  const Eigen::MatrixXd& phi = bundle->dirichlet().phi.values();
  for (Eigen::Index k = 0; k < phi.size(); ++k)
    (void)bundle->swirl(consts.eps * consts.eps * phi.data()[k]);
  return bundle;
}

AxiField sample_field(BundlePtr bundle, const GridSpec& spec) {
  if (spec.nr < 2 || spec.nz < 2 || !(spec.margin >= 0.0))
    fail(ErrorKind::InvalidArgument, "grid spec needs nr, nz >= 2 and margin >= 0");
  const auto& k = bundle->constants();
  AxiField f;
  f.resize(spec.nr, spec.nz);
  const double w = (1.0 + spec.margin) * bundle->half_width();
  for (int i = 0; i < spec.nr; ++i) f.r[static_cast<std::size_t>(i)] = k.R - w + 2.0 * w * i / (spec.nr - 1);
  for (int j = 0; j < spec.nz; ++j) f.z[static_cast<std::size_t>(j)] = -w + 2.0 * w * j / (spec.nz - 1);
  f.outside_pressure = bundle->outside_pressure();
  f.length_scale = k.eps;
  for (int j = 0; j < spec.nz; ++j)
    for (int i = 0; i < spec.nr; ++i)
      f.store(i, j, bundle->at(f.r[static_cast<std::size_t>(i)], f.z[static_cast<std::size_t>(j)]));
  f.sampler = [bundle](double r, double z) { return bundle->at(r, z); };
  return f;
}

AxiField vorticity(BundlePtr bundle, const GridSpec& spec) { return sample_field(std::move(bundle), spec); }

Assembly assemble(const ShapeState& state, const ProblemConstants& consts,
                  const ProfileFunctions& profile, GridPtr grid, const GridSpec& spec) {
  Assembly out;
  out.bundle = make_bundle(state, consts, profile, std::move(grid));
  out.field = sample_field(out.bundle, spec);
  return out;
}

std::array<double, 3> curl_fd(const SolutionBundle& b, double r, double z, double h) {
  const FlowSample rp = b.at(r + h, z), rm = b.at(r - h, z);
  const FlowSample zp = b.at(r, z + h), zm = b.at(r, z - h);
  const double w_r = -(zp.u_phi - zm.u_phi) / (2.0 * h);
  const double w_phi = (zp.u_r - zm.u_r) / (2.0 * h) - (rp.u_z - rm.u_z) / (2.0 * h);
  const double w_z = ((r + h) * rp.u_phi - (r - h) * rm.u_phi) / (2.0 * h * r);
  return {w_r, w_phi, w_z};
}

double curl_defect(const SolutionBundle& b, double h, int probes) {
  const auto& k = b.constants();
  const double w = b.half_width();
  double worst = 0.0;
  for (int j = 0; j < probes; ++j)
    for (int i = 0; i < probes; ++i) {
      const double r = k.R - w + 2.0 * w * (i + 0.5) / probes;
      const double z = -w + 2.0 * w * (j + 0.5) / probes;
      if (!(b.inside(r, z) && b.inside(r + h, z) && b.inside(r - h, z) && b.inside(r, z + h) &&
            b.inside(r, z - h)))
        continue;
      const FlowSample s = b.at(r, z);
      const auto c = curl_fd(b, r, z, h);
      worst = std::max({worst, std::abs(s.omega_r - c[0]), std::abs(s.omega_phi - c[1]),
                        std::abs(s.omega_z - c[2])});
    }
  return worst;
}

double localizability(const std::vector<FlowSample>& samples) {
  double umax = 0, gpmax = 0, worst = 0;
  for (const auto& s : samples) {
    if (!s.inside) continue;
    umax = std::max(umax, std::sqrt(s.u_r * s.u_r + s.u_phi * s.u_phi + s.u_z * s.u_z));
    gpmax = std::max(gpmax, std::hypot(s.p_r, s.p_z));
    worst = std::max(worst, std::abs(s.u_r * s.p_r + s.u_z * s.p_z));
  }
  if (umax == 0.0 || gpmax == 0.0) return 0.0;
  return worst / (umax * gpmax);
}

namespace {

std::vector<FlowSample> inside_samples(const SolutionBundle& b, const AxiField& f) {
  std::vector<FlowSample> out;
  for (int j = 0; j < f.nz; ++j)
    for (int i = 0; i < f.nr; ++i)
      if (f.inside[static_cast<std::size_t>(f.index(i, j))])
        out.push_back(b.at(f.r[static_cast<std::size_t>(i)], f.z[static_cast<std::size_t>(j)]));
  return out;
}

// r and z components of u·∇u for an axisymmetric field.
std::array<double, 2> convective(const FlowSample& s) {
  const double r = s.r;
  const double ur_r = -s.psi_rz / r + s.psi_z / (r * r), ur_z = -s.psi_zz / r;
  const double uz_r = s.psi_rr / r - s.psi_r / (r * r), uz_z = s.psi_rz / r;
  return {s.u_r * ur_r + s.u_z * ur_z - s.u_phi * s.u_phi / r, s.u_r * uz_r + s.u_z * uz_z};
}

}  // namespace

double localizability(const SolutionBundle& b, const AxiField& f) {
  return localizability(inside_samples(b, f));
}

FieldChecks check_fields(const SolutionBundle& b, const AxiField& f, int boundary_samples) {
  FieldChecks out;
  const auto samples = inside_samples(b, f);

  double umax = 0, gpsi = 0, stream = 0, conv_max = 0, res_max = 0;
  out.min_swirl = samples.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    umax = std::max(umax, std::sqrt(s.u_r * s.u_r + s.u_phi * s.u_phi + s.u_z * s.u_z));
    gpsi = std::max(gpsi, std::hypot(s.psi_r, s.psi_z));
    stream = std::max(stream, std::abs(s.u_r * s.psi_r + s.u_z * s.psi_z));
    out.min_swirl = std::min(out.min_swirl, s.swirl);

    // Azimuthal component: no pressure gradient balances it, so it must vanish on its own.
    const auto c = convective(s);
    const double dF = b.swirl_derivative(s.psi, s.swirl);
    const double uphi_r = dF * s.psi_r / s.r - s.swirl / (s.r * s.r);
    const double uphi_z = dF * s.psi_z / s.r;
    const double c_phi = s.u_r * uphi_r + s.u_z * uphi_z + s.u_r * s.u_phi / s.r;
    conv_max = std::max({conv_max, std::abs(c[0]), std::abs(c_phi), std::abs(c[1])});
    res_max = std::max({res_max, std::abs(c[0] + s.p_r), std::abs(c_phi), std::abs(c[1] + s.p_z)});
  }
  out.streamline = (umax > 0 && gpsi > 0) ? stream / (umax * gpsi) : 0.0;
  out.steady_residual = conv_max > 0 ? res_max / conv_max : 0.0;
  out.localizability = localizability(samples);

  const auto& k = b.constants();
  const auto& map = b.dirichlet().map;
  const double f0sq = k.swirl_at_zero_squared();
  double qmin = std::numeric_limits<double>::infinity(), qmax = -qmin, qsum = 0, ubmax = 0, nu = 0;
  for (int m = 0; m < boundary_samples; ++m) {
    const double th = 2.0 * std::numbers::pi * m / boundary_samples;
    const FlowSample s = b.at_reference(1.0, th);
    out.pressure_jump = std::max(out.pressure_jump, std::abs(s.p - b.outside_pressure()));
    const double q = (s.psi_r * s.psi_r + s.psi_z * s.psi_z + f0sq) / (s.r * s.r);
    qmin = std::min(qmin, q);
    qmax = std::max(qmax, q);
    qsum += q;
    // Outward normal of the curve s(θ)(cos θ, sin θ).
    const Stretch st = map.stretch(1.0, th);
    const double tx = st.s_t * std::cos(th) - st.sig * std::sin(th);
    const double ty = st.s_t * std::sin(th) + st.sig * std::cos(th);
    const double nrm = std::hypot(tx, ty);
    nu = std::max(nu, std::abs((ty * s.u_r - tx * s.u_z) / nrm));
    ubmax = std::max(ubmax, std::sqrt(s.u_r * s.u_r + s.u_phi * s.u_phi + s.u_z * s.u_z));
  }
  const double umax_all = std::max(umax, ubmax);
  out.tangency = umax_all > 0 ? nu / umax_all : 0.0;
  out.neumann_spread = boundary_samples > 0 ? (qmax - qmin) / (qsum / boundary_samples) : 0.0;
  return out;
}

}  // namespace gsod

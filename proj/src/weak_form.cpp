#include "gsod/weak_form.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gsod/errors.hpp"

namespace gsod {

namespace {

// exp(-1/(1-t²)) on |t| < 1 with its first derivative.
void bump(double t, double& v, double& dv) {
  if (std::abs(t) >= 1.0) {
    v = dv = 0.0;
    return;
  }
  const double q = 1.0 - t * t;
  v = std::exp(-1.0 / q);
  dv = v * (-2.0 * t / (q * q));
}

struct Bump2 {
  double rc, zc, wr, wz, amp;
  // Value and (r, z) gradient.
  void eval(double r, double z, double& v, double& vr, double& vz) const {
    double a, da, b, db;
    bump((r - rc) / wr, a, da);
    bump((z - zc) / wz, b, db);
    v = amp * a * b;
    vr = amp * da / wr * b;
    vz = amp * a * db / wz;
  }
};

struct TestFields {
  Bump2 w_r, w_phi, w_z, phi;
};

struct Sums {
  double mom = 0, mom_abs = 0, div = 0, div_abs = 0;
};

class Integrator {
 public:
  Integrator(const AxiField& f, std::vector<TestFields> tests, int depth)
      : f_(f), tests_(std::move(tests)), sums_(tests_.size()), depth_(depth) {}

  void cell(double r0, double z0, double dr, double dz, bool cut, int level) {
    if (cut && level < depth_) {
      const double hr = 0.5 * dr, hz = 0.5 * dz;
      for (int q = 0; q < 4; ++q) {
        const double a = r0 + (q % 2) * hr, b = z0 + (q / 2) * hz;
        cell(a, b, hr, hz, straddles(a, b, hr, hz), level + 1);
      }
      return;
    }
    point(r0 + 0.5 * dr, z0 + 0.5 * dz, dr * dz);
  }

  bool straddles(double r0, double z0, double dr, double dz) {
    const bool a = inside(r0, z0);
    return inside(r0 + dr, z0) != a || inside(r0, z0 + dz) != a || inside(r0 + dr, z0 + dz) != a ||
           inside(r0 + 0.5 * dr, z0 + 0.5 * dz) != a;
  }

  const std::vector<Sums>& sums() const { return sums_; }
  long evaluations() const { return evals_; }

 private:
  bool inside(double r, double z) {
    ++evals_;
    return f_.sampler(r, z).inside;
  }

  void point(double r, double z, double area) {
    ++evals_;
    const FlowSample s = f_.sampler(r, z);
    if (!s.inside) return;  // u = 0 and p - p_out = 0 outside
    const double q = s.p - f_.outside_pressure;
    const double wgt = 2.0 * std::numbers::pi * r * area;
    for (std::size_t t = 0; t < tests_.size(); ++t) {
      const auto& tf = tests_[t];
      double wr, wr_r, wr_z, wp, wp_r, wp_z, wz, wz_r, wz_z, ph, ph_r, ph_z;
      tf.w_r.eval(r, z, wr, wr_r, wr_z);
      tf.w_phi.eval(r, z, wp, wp_r, wp_z);
      tf.w_z.eval(r, z, wz, wz_r, wz_z);
      tf.phi.eval(r, z, ph, ph_r, ph_z);
      // u·((u·∇)w) in cylindrical components, axisymmetric w.
      const double cw_r = s.u_r * wr_r + s.u_z * wr_z - s.u_phi * wp / r;
      const double cw_p = s.u_r * wp_r + s.u_z * wp_z + s.u_phi * wr / r;
      const double cw_z = s.u_r * wz_r + s.u_z * wz_z;
      const double conv = s.u_r * cw_r + s.u_phi * cw_p + s.u_z * cw_z;
      const double divw = wr_r + wr / r + wz_z;
      const double mom = conv + q * divw;
      const double dv = s.u_r * ph_r + s.u_z * ph_z;
      auto& out = sums_[t];
      out.mom += wgt * mom;
      out.mom_abs += wgt * (std::abs(conv) + std::abs(q * divw));
      out.div += wgt * dv;
      out.div_abs += wgt * std::abs(dv);
    }
  }

  const AxiField& f_;
  std::vector<TestFields> tests_;
  std::vector<Sums> sums_;
  int depth_;
  long evals_ = 0;
};

}  // namespace

WeakReport verify_weak(const AxiField& field, int n_tests, std::uint64_t seed,
                       const WeakOptions& options) {
  if (n_tests < 1) fail(ErrorKind::InvalidArgument, "verify_weak needs at least one test field");
  if (field.nr < 2 || field.nz < 2 || !field.sampler)
    fail(ErrorKind::InvalidArgument, "verify_weak needs a sampled field with an evaluator");
  const double h = std::max(field.dr(), field.dz());
  WeakReport rep;
  rep.cells_across = field.length_scale / h;
  if (!(rep.cells_across >= options.min_cells))
    fail(ErrorKind::GridTooCoarse, "boundary layer resolved by " + std::to_string(rep.cells_across) +
                                       " cells; need at least " + std::to_string(options.min_cells));

  // Test supports are drawn inside the sampled box so that they are compactly
  // supported there; centers cluster around the domain to probe ∂Ω.
  const double r_lo = field.r.front(), r_hi = field.r.back();
  const double z_lo = field.z.front(), z_hi = field.z.back();
  const double rc0 = 0.5 * (r_lo + r_hi), half = 0.5 * (r_hi - r_lo);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto draw = [&]() {
    Bump2 b{};
    b.wr = half * (0.25 + 0.25 * (unit(rng) + 1.0));
    b.wz = (0.5 * (z_hi - z_lo)) * (0.25 + 0.25 * (unit(rng) + 1.0));
    b.rc = rc0 + (half - b.wr) * unit(rng);
    b.zc = 0.5 * (z_lo + z_hi) + (0.5 * (z_hi - z_lo) - b.wz) * unit(rng);
    b.amp = unit(rng);
    return b;
  };
  std::vector<TestFields> tests;
  for (int t = 0; t < n_tests; ++t) tests.push_back({draw(), draw(), draw(), draw()});

  Integrator integ(field, std::move(tests), options.refine_depth);
  for (int j = 0; j + 1 < field.nz; ++j)
    for (int i = 0; i + 1 < field.nr; ++i) {
      const auto in = [&](int a, int b) { return field.inside[static_cast<std::size_t>(field.index(a, b))]; };
      const bool cut = in(i, j) != in(i + 1, j) || in(i, j) != in(i, j + 1) || in(i, j) != in(i + 1, j + 1);
      integ.cell(field.r[static_cast<std::size_t>(i)], field.z[static_cast<std::size_t>(j)], field.dr(),
                 field.dz(), cut, 0);
    }

  for (const auto& s : integ.sums()) {
    const double m = s.mom_abs > 0 ? std::abs(s.mom) / s.mom_abs : 0.0;
    const double d = s.div_abs > 0 ? std::abs(s.div) / s.div_abs : 0.0;
    rep.momentum.push_back(m);
    rep.divergence.push_back(d);
    rep.max_momentum = std::max(rep.max_momentum, m);
    rep.max_divergence = std::max(rep.max_divergence, d);
  }
  rep.evaluations = integ.evaluations();
  return rep;
}

}  // namespace gsod

#include <doctest.h>

#include "gsod/errors.hpp"
#include "gsod/euler_assembly.hpp"
#include "gsod/weak_form.hpp"

using namespace gsod;

namespace {

AxiField rest_field(int n) {
  // u ≡ 0, p ≡ p_out on a disk-shaped support.
  AxiField f;
  f.resize(n, n);
  const double R = 2.0, w = 0.0125;
  for (int i = 0; i < n; ++i) f.r[i] = R - w + 2 * w * i / (n - 1);
  for (int j = 0; j < n; ++j) f.z[j] = -w + 2 * w * j / (n - 1);
  f.outside_pressure = 0.3;
  f.length_scale = 0.01;
  f.sampler = [R](double r, double z) {
    FlowSample s;
    s.r = r;
    s.z = z;
    s.inside = (r - R) * (r - R) + z * z < 1e-4;
    s.p = 0.3;
    return s;
  };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) f.store(i, j, f.sampler(f.r[i], f.z[j]));
  return f;
}

const Assembly& fixture_a(int n) {
  static const Assembly as = [n] {
    const auto k = make_constants(fixture_a_profile(), 2.0, 0.01);
    const auto grid = make_grid();
    return assemble(solve_shape(k, fixture_a_profile(), grid), k, fixture_a_profile(), grid, {n, n, 0.25});
  }();
  return as;
}

}  // namespace

TEST_CASE("fluid at rest with constant pressure has exactly zero residuals") {
  const auto rep = verify_weak(rest_field(64), 10, 3);
  CHECK(rep.max_momentum == 0.0);
  CHECK(rep.max_divergence == 0.0);
}

TEST_CASE("converged flow satisfies the weak identities") {
  const auto rep = verify_weak(fixture_a(192).field, 8, 1);
  CHECK(rep.momentum.size() == 8);
  CHECK(rep.max_momentum <= 1e-3);
  CHECK(rep.max_divergence <= 1e-3);
  CHECK(rep.cells_across >= 8.0);
}

TEST_CASE("same seed, same residuals") {
  const auto& f = fixture_a(192).field;
  const auto a = verify_weak(f, 3, 99), b = verify_weak(f, 3, 99);
  CHECK(a.momentum == b.momentum);
  CHECK(a.divergence == b.divergence);
}

TEST_CASE("coarse grids are refused") {
  try {
    verify_weak(rest_field(6), 2, 1);
    FAIL("expected GridTooCoarse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GridTooCoarse);
  }
  AxiField empty;
  CHECK_THROWS_AS(verify_weak(empty, 1, 1), Error);
}

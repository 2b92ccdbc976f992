#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "gsod/errors.hpp"
#include "gsod/validation.hpp"

using namespace gsod;

TEST_CASE("slope of an exact power law") {
  const std::vector<double> eps = {0.04, 0.02, 0.01, 0.005};
  std::vector<double> err;
  for (double e : eps) err.push_back(3.0 * std::pow(e, 2.5));
  CHECK(fit_slope(eps, err) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK_THROWS_AS(fit_slope({0.1}, {1.0}), Error);
}

TEST_CASE("epsilon list rules") {
  CHECK_NOTHROW(validate_eps_list({0.04, 0.02, 0.01}));
  try {
    validate_eps_list({0.04, 0.01});
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("need ≥3 epsilons") != std::string::npos);
  }
  CHECK_THROWS_AS(validate_eps_list({0.04, 0.03, 0.02}), Error);  // span < 4
  CHECK_THROWS_AS(validate_eps_list({0.08, 0.04, 0.02}), Error);  // beyond eps_max
  CHECK_THROWS_AS(validate_eps_list({0.04, 0.02, -0.01}), Error);
  CHECK_NOTHROW(validate_eps_list(fast_eps_list()));
  CHECK_NOTHROW(validate_eps_list(thorough_eps_list()));
  CHECK(thorough_eps_list().size() >= 5);
}

TEST_CASE("claim names round-trip") {
  for (auto c : all_claims()) {
    CHECK(claim_from_string(to_string(c)) == c);
    CHECK(!claim_description(c).empty());
  }
  CHECK(all_claims().size() == 8);
  CHECK(expected_order(ClaimId::CL1) == 2);
  CHECK(expected_order(ClaimId::CL2) == 3);
  CHECK(expected_order(ClaimId::CL5) == 1);
  CHECK(expected_order(ClaimId::CL8) == 1);
  CHECK_THROWS_AS(claim_from_string("CL9"), Error);
  CHECK(fixture_by_name("fixture-b").R == 1.0);
  CHECK_THROWS_AS(fixture_by_name("fixture-z"), Error);
}

TEST_CASE("scorecard verdict bookkeeping") {
  SweepReport ok;
  ok.verdict = Verdict::pass;
  SweepReport bad = ok;
  bad.claim = ClaimId::CL3;
  bad.fixture = "fixture-a";
  bad.verdict = Verdict::inconclusive;
  CHECK(scorecard({ok}).exit_code() == 0);
  const auto sc = scorecard({ok, bad});
  CHECK_FALSE(sc.all_pass());
  CHECK(sc.exit_code() == 2);
  CHECK(sc.failing().size() == 1);
  CHECK(sc.json()["all_pass"] == false);
  CHECK(sc.table().find("inconclusive") != std::string::npos);
}

TEST_CASE("Dirichlet expansion claim passes for fixture A") {
  const auto r = run_claim(ClaimId::CL1, fixture_by_name("fixture-a"), fast_eps_list());
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.slope >= 1.7);
  CHECK(r.slope <= 2.3);
}

TEST_CASE("Neumann functional at B = 0 approaches kappa at second order") {
  const auto r = run_claim(ClaimId::CL4, fixture_by_name("fixture-b"), fast_eps_list());
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.slope >= 1.7);
}

TEST_CASE("solver failure makes a claim inconclusive") {
  SweepOptions o;
  o.shape.max_iter = 1;
  const auto r = run_claim(ClaimId::CL6, fixture_by_name("fixture-a"), fast_eps_list(), o);
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK(!r.note.empty());
}

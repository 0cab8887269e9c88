#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "tcpkit/bounds.hpp"
#include "tcpkit/classify.hpp"
#include "tcpkit/pareto.hpp"
#include "tcpkit/tcp.hpp"

using namespace tcpkit;

namespace {

double inf_dist(const Vec& a, const Vec& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

TCPInstance quad_instance() {
  return TCPInstance(fixtures::two_quadratics(), fixtures::two_quadratics_q());
}

}  // namespace

TEST_CASE("minimax constant on closed-form fixtures") {
  CHECK(beta(fixtures::identity(3, 2)).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(beta(fixtures::identity(4, 3)).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(beta(fixtures::identity(3, 2).scaled(3.0)).value == doctest::Approx(3.0).epsilon(1e-10));

  const BetaResult r = beta(fixtures::two_quadratics());
  CHECK(std::abs(r.value - oracles::beta_grid(fixtures::two_quadratics(), 1000)) <= 1e-2);
  CHECK(r.value == doctest::Approx(0.408189).epsilon(5e-3));
  CHECK(inf_norm(r.argmin) == doctest::Approx(1.0));
}

TEST_CASE("m-norm bound") {
  const TCPInstance diag(fixtures::identity(3, 2), {-1.0, -4.0});
  auto r = bound_m_norm(diag, {1.0, 2.0}, 1.0);
  CHECK(r.satisfied);
  CHECK(r.lhs == doctest::Approx(std::pow(9.0, 2.0 / 3.0)));
  CHECK(std::abs(r.slack) <= 1e-8);

  const TCPInstance easy(fixtures::identity(3, 2), {1.0, 2.0});
  r = bound_m_norm(easy, {0.0, 0.0}, 1.0);
  CHECK(r.satisfied);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);

  const TCPInstance ones(fixtures::all_ones(4, 2), {-1.0, -1.0});
  for (const auto& s : solve_enumerate(ones)) {
    r = bound_m_norm(ones, s.x, 1.0);
    CHECK(r.satisfied);
    CHECK(r.slack > 0.0);
  }

  CHECK_THROWS_AS((void)bound_m_norm(diag, {1.0, 2.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)bound_m_norm(diag, {1.0, 2.0}, -1.0), std::invalid_argument);
}

TEST_CASE("2-norm bound") {
  const TCPInstance diag(fixtures::identity(3, 2), {-1.0, -4.0});
  auto r = bound_2_norm(diag, {1.0, 2.0}, 1.0 / std::sqrt(2.0));
  CHECK(r.satisfied);
  CHECK(r.lhs == doctest::Approx(5.0));
  CHECK(r.rhs == doctest::Approx(std::sqrt(34.0)).epsilon(1e-12));

  const TCPInstance matrix(fixtures::identity(2, 2), {-1.0, 0.0});
  r = bound_2_norm(matrix, {1.0, 0.0}, 1.0);
  CHECK(r.satisfied);
  CHECK(r.lhs == doctest::Approx(1.0));
  CHECK(std::abs(r.slack) <= 1e-12);

  CHECK_THROWS_AS((void)bound_2_norm(diag, {1.0, 2.0}, 0.0), std::invalid_argument);
}

TEST_CASE("inf-norm bound") {
  const auto quad = quad_instance();
  const double beta_val = beta(quad.A).value;
  REQUIRE(beta_val > 0.0);
  for (const auto& s : solve_enumerate(quad)) {
    const auto r = bound_inf_norm(quad, s.x, beta_val);
    CHECK(r.satisfied);
    CHECK(r.lhs <= 1.5 + 1e-9);
    CHECK(r.rhs == doctest::Approx(1.5 / beta_val));
  }

  const TCPInstance diag(fixtures::identity(3, 2), {-1.0, -4.0});
  const auto r = bound_inf_norm(diag, {1.0, 2.0}, 1.0);
  CHECK(r.satisfied);
  CHECK(r.lhs == doctest::Approx(4.0));
  CHECK(std::abs(r.slack) <= 1e-8);

  CHECK_THROWS_AS((void)bound_inf_norm(diag, {1.0, 2.0}, 0.0), std::invalid_argument);
}

TEST_CASE("bounds hold on every verified solution of structured fixtures") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const Tensor a = fixtures::random_diag_dominant(seed + 40, 3, 3, true);
    REQUIRE(a.is_symmetric());
    const double lam = lambda_min(a).value;
    const double mu = mu_min(a).value;
    const double bv = beta(a).value;
    REQUIRE(lam > 0.0);
    REQUIRE(mu > 0.0);
    REQUIRE(bv > 0.0);
    fixtures::Rng rng(seed);
    for (int trial = 0; trial < 5; ++trial) {
      const Vec q = fixtures::random_vec(rng, 3, -2.0, 1.0);
      const TCPInstance inst(a, q);
      for (const auto& s : solve_enumerate(inst)) {
        REQUIRE(s.verified);
        CHECK(bound_m_norm(inst, s.x, lam).satisfied);
        CHECK(bound_2_norm(inst, s.x, mu).satisfied);
        CHECK(bound_inf_norm(inst, s.x, bv).satisfied);
      }
    }
  }

  // the inf-norm bound needs no symmetry
  const auto quad = quad_instance();
  const double bq = beta(quad.A).value;
  for (const auto& s : solve_enumerate(quad)) {
    CHECK(bound_inf_norm(quad, s.x, bq).satisfied);
  }
}

TEST_CASE("uniform diagonal tensors meet the m-norm and inf-norm bounds with equality") {
  fixtures::Rng rng(606);
  for (double c : {0.5, 1.0, 2.3}) {
    for (int m : {3, 4}) {
      const Tensor a = fixtures::identity(m, 2).scaled(c);
      for (int trial = 0; trial < 5; ++trial) {
        const Vec q = fixtures::random_vec(rng, 2, -3.0, -0.1);
        const TCPInstance inst(a, q);
        Vec x(2);
        for (int i = 0; i < 2; ++i) x[static_cast<std::size_t>(i)] = std::pow(-q[static_cast<std::size_t>(i)] / c, 1.0 / (m - 1.0));
        REQUIRE(verify_solution(inst, x, 1e-9).verified);
        const auto rm = bound_m_norm(inst, x, c);
        const auto ri = bound_inf_norm(inst, x, c);
        CHECK(std::abs(rm.slack) <= 1e-8);
        CHECK(std::abs(ri.slack) <= 1e-8);
      }
    }
  }
}

TEST_CASE("positive minimax constant on strictly semi-positive fixtures") {
  const std::vector<Tensor> list = {
      fixtures::two_quadratics(),
      fixtures::identity(3, 2),
      fixtures::random_diag_dominant(7, 3, 3, false),
      fixtures::random_diag_dominant(8, 4, 2, true),
  };
  for (const auto& a : list) {
    REQUIRE(check_strictly_semi_positive(a).verdict == Verdict::Holds);
    CHECK(beta(a).value > 0.0);
  }
}

TEST_CASE("level-set probe on the zero tensor") {
  const GammaProbe probe = gamma_probe(fixtures::zero(3, 2), {0.0, 0.0}, 0.0, 1.0);
  CHECK(probe.verdict == GammaVerdict::UnboundedWitness);
  REQUIRE(probe.escape_direction.has_value());
  const Vec& dir = *probe.escape_direction;
  CHECK(inf_norm(dir) == doctest::Approx(1.0));
  for (double vdir : dir) CHECK(vdir >= 0.0);
  const Vec w = fixtures::zero(3, 2).apply(dir);
  for (double c : w) CHECK(c >= -1e-8);
  CHECK(std::abs(fixtures::zero(3, 2).poly_value(dir)) <= 1e-8);
  CHECK(!probe.members_found.empty());
}

TEST_CASE("level-set probe on a bounded instance") {
  const auto quad = quad_instance();
  const GammaProbe probe = gamma_probe(quad.A, quad.q, 1.0, 2.0);
  CHECK(probe.verdict == GammaVerdict::LikelyBounded);
  CHECK_FALSE(probe.escape_direction.has_value());
}

TEST_CASE("members of the (0,1) level set are the solutions") {
  const auto quad = quad_instance();
  SearchBudget b;
  b.multistarts = 256;
  const GammaProbe probe = gamma_probe(quad.A, quad.q, 0.0, 1.0, b);
  const auto solutions = solve_enumerate(quad);
  REQUIRE(solutions.size() == 3);
  REQUIRE(probe.members_found.size() == 3);
  for (const auto& member : probe.members_found) {
    const bool near = std::any_of(solutions.begin(), solutions.end(), [&](const TCPSolution& s) {
      return inf_dist(s.x, member) <= 1e-4;
    });
    CHECK(near);
  }
  for (const auto& s : solutions) {
    const bool found = std::any_of(probe.members_found.begin(), probe.members_found.end(),
                                   [&](const Vec& m) { return inf_dist(s.x, m) <= 1e-4; });
    CHECK(found);
  }
}

TEST_CASE("probe argument guards") {
  CHECK_THROWS_AS((void)gamma_probe(fixtures::zero(3, 2), {0.0, 0.0}, 0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)gamma_probe(fixtures::zero(3, 2), {0.0, 0.0, 0.0}, 0.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("probe verdict tracks the zero-offset uniqueness check") {
  const std::vector<Tensor> list = {
      fixtures::zero(3, 2),
      fixtures::two_quadratics(),
      fixtures::identity(3, 2),
      fixtures::negated_identity(3, 2),
      fixtures::random_diag_dominant(31, 3, 3, false),
      fixtures::random_symmetric(32, 3, 2),
      fixtures::random_symmetric(33, 4, 2, 0.0, 1.0),
  };
  SearchBudget b;
  fixtures::Rng rng(99);
  for (const auto& a : list) {
    const Vec q = fixtures::random_vec(rng, a.dim(), -1.0, 1.0);
    const auto probe = gamma_probe(a, q, 0.5, 1.5, b);
    const auto r0 = check_R0(a, b);
    CHECK((probe.verdict == GammaVerdict::UnboundedWitness) ==
          (r0.verdict == Verdict::Violated));
  }
}

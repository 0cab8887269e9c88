#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "tcpkit/io.hpp"
#include "tcpkit/tensor.hpp"

using namespace tcpkit;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("apply: quadratic pair fixture") {
  const Tensor a = fixtures::two_quadratics();
  const Vec w = a.apply({1.0, 1.0});
  CHECK(w[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(0.0).epsilon(1e-15));

  // with q = (-3/2, -1/2) the induced map at (1,1) is (1/2, -1/2)
  const Vec q = fixtures::two_quadratics_q();
  CHECK(w[0] + q[0] == doctest::Approx(0.5));
  CHECK(w[1] + q[1] == doctest::Approx(-0.5));
}

TEST_CASE("apply: zero tensor and diagonal contraction") {
  const Tensor z = fixtures::zero(3, 2);
  const Vec wz = z.apply({3.0, -4.0});
  CHECK(wz == Vec{0.0, 0.0});

  const Tensor id = fixtures::identity(3, 2);
  const Vec wi = id.apply({1.0, 2.0});
  CHECK(wi[0] == 1.0);
  CHECK(wi[1] == 4.0);
}

TEST_CASE("apply: dimension mismatch") {
  const Tensor id = fixtures::identity(3, 2);
  CHECK_THROWS_AS((void)id.apply({1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("poly_value examples") {
  const Tensor a = fixtures::two_quadratics();
  CHECK(a.poly_value({1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(a.poly_value({0.0, 0.0}) == 0.0);
  CHECK(fixtures::identity(3, 2).poly_value({1.0, 2.0}) == doctest::Approx(9.0));
}

TEST_CASE("is_symmetric") {
  CHECK(fixtures::identity(3, 2).is_symmetric());
  CHECK_FALSE(fixtures::two_quadratics().is_symmetric());
  CHECK(fixtures::two_quadratics().symmetrize().is_symmetric());
}

TEST_CASE("symmetrize: fixed point and poly preservation") {
  const Tensor id = fixtures::identity(4, 3);
  const Tensor ids = id.symmetrize();
  for (std::size_t i = 0; i < id.raw_entries().size(); ++i) {
    CHECK(ids.raw_entries()[i] == doctest::Approx(id.raw_entries()[i]).epsilon(1e-14));
  }

  const Tensor a = fixtures::two_quadratics();
  const Tensor as = a.symmetrize();
  CHECK(as.poly_value({1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-12));

  fixtures::Rng rng(7);
  const Tensor b = fixtures::random_dense(rng, 4, 3, -2.0, 2.0);
  const Tensor bs = b.symmetrize();
  for (int trial = 0; trial < 50; ++trial) {
    const Vec x = fixtures::random_vec(rng, 3, -1.5, 1.5);
    const double pv = b.poly_value(x);
    CHECK(std::abs(pv - bs.poly_value(x)) <= 1e-10 * (1.0 + std::abs(pv)));
  }

  const Tensor z = fixtures::zero(3, 2).symmetrize();
  for (double e : z.raw_entries()) CHECK(e == 0.0);
}

TEST_CASE("positive_part") {
  CHECK(positive_part({1.5, 0.5}) == Vec{1.5, 0.5});
  CHECK(positive_part({-1.0, 2.0}) == Vec{0.0, 2.0});
  // (-q)_+ for q = (-3/2, -1/2)
  const Vec q = fixtures::two_quadratics_q();
  CHECK(positive_part({-q[0], -q[1]}) == Vec{1.5, 0.5});
}

TEST_CASE("norms") {
  CHECK(norm({1.0, 2.0}, 3.0) == doctest::Approx(std::cbrt(9.0)));
  CHECK(norm({1.0, 2.0}, kInf) == 2.0);
  CHECK(inf_norm({-3.0, 2.0}) == 3.0);
  CHECK(norm({1.0, 4.0}, 1.5) == doctest::Approx(std::pow(9.0, 2.0 / 3.0)));
  CHECK_THROWS_AS((void)norm({1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)norm({1.0}, 0.5), std::invalid_argument);
}

TEST_CASE("homogeneity of the contraction maps") {
  fixtures::Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 2 + trial % 3;
    const int n = 2 + trial % 2;
    const Tensor a = fixtures::random_dense(rng, m, n, -1.0, 1.0);
    const Vec x = fixtures::random_vec(rng, n, -1.0, 1.0);
    for (double t : {0.5, 2.0, 3.7}) {
      Vec tx = x;
      for (double& c : tx) c *= t;
      const Vec lhs = a.apply(tx);
      const Vec rhs = a.apply(x);
      const double scale = std::pow(t, m - 1);
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        CHECK(std::abs(lhs[i] - scale * rhs[i]) <= 1e-12 * (1.0 + std::abs(scale * rhs[i])));
      }
      const double pv = a.poly_value(tx);
      const double expect = std::pow(t, m) * a.poly_value(x);
      CHECK(std::abs(pv - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    }
  }
}

TEST_CASE("poly_value is the inner product with apply, exactly") {
  fixtures::Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const Tensor a = fixtures::random_dense(rng, 3, 3, -1.0, 1.0);
    const Vec x = fixtures::random_vec(rng, 3, -2.0, 2.0);
    CHECK(a.poly_value(x) == dot(x, a.apply(x)));
  }
}

TEST_CASE("apply matches the nested-loop oracle bit for bit") {
  fixtures::Rng rng(17);
  for (int m = 2; m <= 4; ++m) {
    for (int n = 1; n <= 3; ++n) {
      const Tensor a = fixtures::random_dense(rng, m, n, -1.0, 1.0);
      for (int trial = 0; trial < 8; ++trial) {
        const Vec x = fixtures::random_vec(rng, n, -2.0, 2.0);
        const Vec got = a.apply(x);
        const Vec want = oracles::naive_apply(a, x);
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
      }
    }
  }
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(Tensor(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(Tensor(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(Tensor(3, 2, Vec{1.0, 2.0}), std::invalid_argument);
  Vec bad(8, 0.0);
  bad[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Tensor(3, 2, bad), std::invalid_argument);
  bad[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Tensor(3, 2, bad), std::invalid_argument);
}

TEST_CASE("tensor file: sparse document round trip") {
  const std::string doc = R"({
    "order": 3, "dim": 2,
    "entries": [
      {"idx": [1,1,1], "val": 1},
      {"idx": [1,2,2], "val": 1},
      {"idx": [2,1,1], "val": 1},
      {"idx": [2,2,1], "val": -2},
      {"idx": [2,2,2], "val": 1}
    ],
    "symmetric": false
  })";
  const Tensor parsed = parse_tensor(doc);
  const Tensor expect = fixtures::two_quadratics();
  CHECK(parsed.raw_entries() == expect.raw_entries());

  // canonical serialize/parse round trip is bitwise
  fixtures::Rng rng(23);
  const Tensor random = fixtures::random_dense(rng, 3, 3, -1.0, 1.0);
  const Tensor round = parse_tensor(serialize_tensor(random));
  CHECK(round.raw_entries() == random.raw_entries());
  CHECK(round.order() == random.order());
}

TEST_CASE("tensor file: empty entry list is the zero tensor") {
  const Tensor t = parse_tensor(R"({"order": 4, "dim": 2, "entries": []})");
  for (double e : t.raw_entries()) CHECK(e == 0.0);
}

TEST_CASE("tensor file: malformed documents") {
  CHECK_THROWS_AS((void)parse_tensor("{"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_tensor(R"({"dim": 2})"), std::invalid_argument);
  CHECK_THROWS_AS(
      (void)parse_tensor(R"({"order": 3, "dim": 2, "entries": [{"idx": [1,1], "val": 1}]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)parse_tensor(R"({"order": 3, "dim": 2, "entries": [{"idx": [1,1,3], "val": 1}]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)parse_tensor(R"({"order": 3, "dim": 2, "entries": [{"idx": [0,1,1], "val": 1}]})"),
      std::invalid_argument);
  // duplicate index tuple
  CHECK_THROWS_AS((void)parse_tensor(R"({"order": 3, "dim": 2, "entries": [
      {"idx": [1,1,1], "val": 1}, {"idx": [1,1,1], "val": 2}]})"),
                  std::invalid_argument);
  // symmetry claim that fails verification
  CHECK_THROWS_AS((void)parse_tensor(R"({"order": 3, "dim": 2, "symmetric": true, "entries": [
      {"idx": [1,2,2], "val": 1}]})"),
                  std::invalid_argument);
}

TEST_CASE("vector and instance files") {
  const Vec v = parse_vector("[1.0, -2.5, 3]");
  CHECK(v == Vec{1.0, -2.5, 3.0});
  CHECK(parse_vector(serialize_vector(v)) == v);
  CHECK_THROWS_AS((void)parse_vector("[]"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_vector("{}"), std::invalid_argument);

  const TCPInstance inst = parse_instance(
      R"({"tensor": {"order": 3, "dim": 2, "entries": []}, "q": [1, 2]})");
  CHECK(inst.q == Vec{1.0, 2.0});
  CHECK(inst.A.order() == 3);
  const TCPInstance round = parse_instance(serialize_instance(inst));
  CHECK(round.q == inst.q);
  CHECK_THROWS_AS(
      (void)parse_instance(R"({"tensor": {"order": 3, "dim": 2, "entries": []}, "q": [1]})"),
      std::invalid_argument);
}

#include <doctest.h>

#include "oracles.hpp"
#include "ofdma/error.hpp"
#include "ofdma/geometry.hpp"

#include <cmath>

using namespace ofdma;

TEST_CASE("dense layout with a single provided transmitter")
{
  auto l = build_dense_layout(1, 1.0, 0.3, 0.1, Placement::Provided, {{0, 0}}, 0);
  REQUIRE(l.B() == 1);
  CHECK(l.tx[0].x == 0.0);
  CHECK(l.tx[0].y == 0.0);
  CHECK(l.kind == LayoutKind::Dense);
}

TEST_CASE("dense layout rejects a transmitter outside p - R")
{
  CHECK_THROWS_AS(build_dense_layout(3, 1.0, 0.3, 0.1, Placement::Provided,
                                     {{0, 0}, {0.5, 0}, {0, 0.9}}, 0),
                  ConstraintViolation);
}

TEST_CASE("dense layout rejects bad radius ordering")
{
  CHECK_THROWS_AS(build_dense_layout(1, 1.0, 0.3, 0.3, Placement::UniformRandom, {}, 0),
                  ConstraintViolation);
  CHECK_THROWS_AS(build_dense_layout(1, 0.3, 0.3, 0.1, Placement::UniformRandom, {}, 0),
                  ConstraintViolation);
}

TEST_CASE("random dense placement stays inside p - R and is reproducible")
{
  auto a = build_dense_layout(50, 1.0, 0.3, 0.1, Placement::UniformRandom, {}, 7);
  auto b = build_dense_layout(50, 1.0, 0.3, 0.1, Placement::UniformRandom, {}, 7);
  REQUIRE(a.B() == 50);
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(std::hypot(a.tx[i].x, a.tx[i].y) <= 0.7);
    CHECK(a.tx[i].x == b.tx[i].x);
    CHECK(a.tx[i].y == b.tx[i].y);
  }
}

TEST_CASE("hex layout radius rule")
{
  auto l = build_hex_layout(1, 1.0, 0.1);
  REQUIRE(l.B() == 1);
  CHECK(l.p == doctest::Approx(std::sqrt(3.0 / M_PI)));
  CHECK(l.p == doctest::Approx(0.977205).epsilon(1e-6));
}

TEST_CASE("hex layout first ring")
{
  auto l = build_hex_layout(7, 1.0, 0.1);
  REQUIRE(l.B() == 7);
  CHECK(l.tx[0].x == 0.0);
  for (std::size_t i = 1; i < 7; ++i)
    CHECK(std::hypot(l.tx[i].x, l.tx[i].y) == doctest::Approx(2.0).epsilon(1e-12));
  // starts at angle 0 and proceeds counter-clockwise
  CHECK(l.tx[1].x == doctest::Approx(2.0));
  CHECK(l.tx[1].y == doctest::Approx(0.0));
  CHECK(l.tx[2].y > 0.0);
}

TEST_CASE("hex layout with two rings")
{
  auto l = build_hex_layout(19, 1.0, 0.1);
  double dmin = 1e9, rmax = 0.0;
  for (std::size_t i = 0; i < l.B(); ++i) {
    rmax = std::max(rmax, std::hypot(l.tx[i].x, l.tx[i].y));
    for (std::size_t j = i + 1; j < l.B(); ++j)
      dmin = std::min(dmin, distance(l.tx[i], l.tx[j]));
  }
  CHECK(dmin == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rmax == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("hex spacing property over many sizes")
{
  for (std::size_t B = 2; B <= 61; ++B) {
    double R = 0.5 + 0.01 * static_cast<double>(B);
    auto l = build_hex_layout(B, R, 0.1);
    REQUIRE(l.B() == B);
    double dmin = 1e9;
    for (std::size_t i = 0; i < B; ++i)
      for (std::size_t j = i + 1; j < B; ++j)
        dmin = std::min(dmin, distance(l.tx[i], l.tx[j]));
    CHECK(std::fabs(dmin - 2.0 * R) <= 1e-9 * 2.0 * R);
  }
}

TEST_CASE("hex layout rejects r0 >= R")
{
  CHECK_THROWS_AS(build_hex_layout(7, 1.0, 1.0), ConstraintViolation);
}

TEST_CASE("disc sampler support and moments")
{
  auto l = build_dense_layout(1, 1.0, 0.3, 0.1, Placement::Provided, {{0, 0}}, 0);
  auto one = sample_users_disc(l, 1, 3);
  CHECK(std::hypot(one.pos[0].x, one.pos[0].y) <= 1.0);

  auto u = sample_users_disc(l, 100000, 11);
  double r2 = 0.0, inner = 0.0;
  for (const auto& q : u.pos) {
    double s = q.x * q.x + q.y * q.y;
    CHECK(s <= 1.0);
    r2 += s;
    inner += s <= 0.25 ? 1.0 : 0.0;
  }
  CHECK(r2 / 1e5 == doctest::Approx(0.5).epsilon(0.02));
  CHECK(std::fabs(inner / 1e5 - 0.25) < 0.01);
}

TEST_CASE("disc sampler hit fraction on sub-discs")
{
  auto l = build_dense_layout(1, 2.0, 0.3, 0.1, Placement::Provided, {{0, 0}}, 0);
  auto u = sample_users_disc(l, 100000, 5);
  oracle::Gen g(99);
  for (int t = 0; t < 20; ++t) {
    double q = g.uniform(0.05, 2.0);
    double frac = 0.0;
    for (const auto& pt : u.pos)
      frac += std::hypot(pt.x, pt.y) <= q ? 1.0 : 0.0;
    frac /= 1e5;
    double expect = q * q / 4.0;
    double sd = std::sqrt(expect * (1.0 - expect) / 1e5);
    CHECK(std::fabs(frac - expect) <= 3.0 * sd + 1e-12);
  }
}

TEST_CASE("per-cell sampling")
{
  auto h1 = build_hex_layout(1, 1.0, 0.1);
  auto u1 = sample_users_per_cell(h1, 3, 1);
  REQUIRE(u1.K() == 3);
  for (const auto& q : u1.pos)
    CHECK(inside_hex_cell({0, 0}, 1.0, q));

  auto h7 = build_hex_layout(7, 1.0, 0.1);
  auto u7 = sample_users_per_cell(h7, 100, 2);
  std::vector<int> counts(7, 0);
  for (std::size_t k = 0; k < u7.K(); ++k) {
    ++counts[u7.cell[k]];
    CHECK(inside_hex_cell(h7.tx[u7.cell[k]], 1.0, u7.pos[k]));
  }
  for (int c : counts)
    CHECK(c == 100);
}

TEST_CASE("per-cell centroids sit at the cell centers")
{
  auto h = build_hex_layout(7, 1.0, 0.1);
  auto u = sample_users_per_cell(h, 10000, 4);
  std::vector<double> sx(7, 0.0), sy(7, 0.0);
  for (std::size_t k = 0; k < u.K(); ++k) {
    sx[u.cell[k]] += u.pos[k].x;
    sy[u.cell[k]] += u.pos[k].y;
  }
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(std::fabs(sx[i] / 1e4 - h.tx[i].x) < 0.02);
    CHECK(std::fabs(sy[i] / 1e4 - h.tx[i].y) < 0.02);
  }
}

TEST_CASE("per-cell sampling needs a hex layout")
{
  auto l = build_dense_layout(1, 1.0, 0.3, 0.1, Placement::Provided, {{0, 0}}, 0);
  CHECK_THROWS_AS(sample_users_per_cell(l, 3, 1), KindMismatch);
}

TEST_CASE("truncated distance")
{
  CHECK(truncated_distance({0, 0}, {0, 0.05}, 0.1) == 0.1);
  CHECK(truncated_distance({0, 0}, {3, 4}, 0.1) == 5.0);
  CHECK(truncated_distance({1, 1}, {1, 1}, 0.2) == 0.2);

  oracle::Gen g(5);
  for (int t = 0; t < 1000; ++t) {
    Point a{g.uniform(-3, 3), g.uniform(-3, 3)};
    Point b{g.uniform(-3, 3), g.uniform(-3, 3)};
    double r0 = g.uniform(0.01, 2.0);
    CHECK(truncated_distance(a, b, r0) == truncated_distance(b, a, r0));
    CHECK(truncated_distance(a, b, r0) >= r0);
  }
}

TEST_CASE("layout json round trip")
{
  auto l = build_hex_layout(7, 1.0, 0.1);
  nlohmann::json j = l;
  CHECK(j["kind"] == "hex");
  CHECK(j["tx"].size() == 7);
  NetworkLayout back = j.get<NetworkLayout>();
  CHECK(back.kind == LayoutKind::HexExtended);
  CHECK(back.p == l.p);
  CHECK(back.tx[3].x == l.tx[3].x);
  CHECK(back.tx[3].y == l.tx[3].y);
}

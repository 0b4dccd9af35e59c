#include "ofdma/geometry.hpp"
#include "ofdma/error.hpp"
#include "ofdma/random.hpp"


#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace ofdma {

namespace {

constexpr double kPi = std::numbers::pi;

void check_radii(double r0, double R)
{
  if (!(r0 > 0.0) || !(r0 < R))
    throw ConstraintViolation("need 0 < r0 < R (r0=" + std::to_string(r0) +
                              ", R=" + std::to_string(R) + ")");
}

Point hex_dir(int s, double spacing)
{
  double a = kPi / 3.0 * static_cast<double>(s % 6);
  return {spacing * std::cos(a), spacing * std::sin(a)};
}

std::array<Point, 6> hex_vertices(Point c, double R)
{
  std::array<Point, 6> v;
  double circ = 2.0 * R / std::sqrt(3.0);
  for (int j = 0; j < 6; ++j) {
    double a = kPi / 6.0 + kPi / 3.0 * j;
    v[j] = {c.x + circ * std::cos(a), c.y + circ * std::sin(a)};
  }
  return v;
}

} // namespace

double distance(Point a, Point b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

NetworkLayout build_dense_layout(std::size_t B, double p, double R, double r0,
                                 Placement placement, const std::vector<Point>& provided,
                                 std::uint64_t seed)
{
  if (B < 1)
    throw ConstraintViolation("B must be at least 1");
  check_radii(r0, R);
  if (!(R < p))
    throw ConstraintViolation("need R < p");

  NetworkLayout l;
  l.p = p;
  l.R = R;
  l.r0 = r0;
  l.kind = LayoutKind::Dense;
  double lim = p - R;

  if (placement == Placement::Provided) {
    if (provided.size() != B)
      throw ConstraintViolation("provided placement has " + std::to_string(provided.size()) +
                                " points, expected " + std::to_string(B));
    for (const Point& q : provided) {
      if (std::hypot(q.x, q.y) > lim * (1.0 + 1e-12))
        throw ConstraintViolation("transmitter (" + std::to_string(q.x) + ", " +
                                  std::to_string(q.y) + ") outside radius " +
                                  std::to_string(lim));
    }
    l.tx = provided;
    return l;
  }

  Rng rng = make_stream(seed, {kStreamPlacement});
  l.tx.reserve(B);
  for (std::size_t i = 0; i < B; ++i) {
    double r = lim * std::sqrt(uniform01(rng));
    double th = 2.0 * kPi * uniform01(rng);
    l.tx.push_back({r * std::cos(th), r * std::sin(th)});
  }
  return l;
}

double hex_network_radius(std::size_t B, double R)
{
  return R * std::sqrt(3.0 * static_cast<double>(B) / kPi);
}

NetworkLayout build_hex_layout(std::size_t B, double R, double r0)
{
  if (B < 1)
    throw ConstraintViolation("B must be at least 1");
  check_radii(r0, R);

  NetworkLayout l;
  l.R = R;
  l.r0 = r0;
  l.p = hex_network_radius(B, R);
  l.kind = LayoutKind::HexExtended;
  l.tx.reserve(B);
  l.tx.push_back({0.0, 0.0});

  double spacing = 2.0 * R;
  // ring k starts at k*e0 and walks each of the six sides in direction e_{s+2}
  for (int k = 1; l.tx.size() < B; ++k) {
    Point e0 = hex_dir(0, spacing);
    Point q{k * e0.x, k * e0.y};
    for (int s = 0; s < 6 && l.tx.size() < B; ++s) {
      Point step = hex_dir(s + 2, spacing);
      for (int j = 0; j < k && l.tx.size() < B; ++j) {
        l.tx.push_back(q);
        q.x += step.x;
        q.y += step.y;
      }
    }
  }
  return l;
}

UserSet sample_users_disc(const NetworkLayout& layout, std::size_t K, std::uint64_t seed)
{
  if (K < 1)
    throw InvalidParam("K must be at least 1");
  Rng rng = make_stream(seed, {kStreamUsers});
  UserSet u;
  u.pos.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    double r = layout.p * std::sqrt(uniform01(rng));
    double th = 2.0 * kPi * uniform01(rng);
    u.pos.push_back({r * std::cos(th), r * std::sin(th)});
  }
  return u;
}

UserSet sample_users_per_cell(const NetworkLayout& layout, std::size_t rho, std::uint64_t seed)
{
  if (layout.kind != LayoutKind::HexExtended)
    throw KindMismatch("per-cell sampling needs a hex layout");
  if (rho < 1)
    throw InvalidParam("rho must be at least 1");
  Rng rng = make_stream(seed, {kStreamUsers});
  UserSet u;
  u.pos.reserve(rho * layout.B());
  u.cell.reserve(rho * layout.B());
  for (std::size_t i = 0; i < layout.B(); ++i) {
    auto v = hex_vertices(layout.tx[i], layout.R);
    Point c = layout.tx[i];
    for (std::size_t k = 0; k < rho; ++k) {
      // pick one of six equal triangles, then a uniform point in it
      int t = std::min(5, static_cast<int>(6.0 * uniform01(rng)));
      double s = std::sqrt(uniform01(rng));
      double w = uniform01(rng);
      Point a = v[t];
      Point b = v[(t + 1) % 6];
      double x = c.x + s * ((1.0 - w) * (a.x - c.x) + w * (b.x - c.x));
      double y = c.y + s * ((1.0 - w) * (a.y - c.y) + w * (b.y - c.y));
      u.pos.push_back({x, y});
      u.cell.push_back(i);
    }
  }
  return u;
}

double truncated_distance(Point tx, Point user, double r0)
{
  return std::max(r0, distance(tx, user));
}

bool inside_hex_cell(Point center, double R, Point q, double slack)
{
  double dx = q.x - center.x;
  double dy = q.y - center.y;
  for (int s = 0; s < 3; ++s) {
    double a = kPi / 3.0 * s;
    if (std::fabs(dx * std::cos(a) + dy * std::sin(a)) > R * (1.0 + slack))
      return false;
  }
  return true;
}

void to_json(nlohmann::json& j, const NetworkLayout& l)
{
  nlohmann::json tx = nlohmann::json::array();
  for (const Point& q : l.tx)
    tx.push_back({q.x, q.y});
  j = {{"kind", l.kind == LayoutKind::Dense ? "dense" : "hex"},
       {"p", l.p},
       {"R", l.R},
       {"r0", l.r0},
       {"tx", tx}};
}

void from_json(const nlohmann::json& j, NetworkLayout& l)
{
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "dense")
    l.kind = LayoutKind::Dense;
  else if (kind == "hex")
    l.kind = LayoutKind::HexExtended;
  else
    throw ConfigError("unknown layout kind '" + kind + "'");
  l.p = j.at("p").get<double>();
  l.R = j.at("R").get<double>();
  l.r0 = j.at("r0").get<double>();
  l.tx.clear();
  for (const auto& q : j.at("tx"))
    l.tx.push_back({q.at(0).get<double>(), q.at(1).get<double>()});
}

} // namespace ofdma

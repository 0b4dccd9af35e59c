#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

namespace ofdma {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

enum class LayoutKind { Dense, HexExtended };

struct NetworkLayout {
  std::vector<Point> tx;
  double p = 0.0;  // network radius
  double R = 0.0;  // cell radius
  double r0 = 0.0; // path-loss truncation distance
  LayoutKind kind = LayoutKind::Dense;

  std::size_t B() const { return tx.size(); }
};

struct UserSet {
  std::vector<Point> pos;
  std::vector<std::size_t> cell; // empty unless sampled per cell

  std::size_t K() const { return pos.size(); }
};

enum class Placement { UniformRandom, Provided };

NetworkLayout build_dense_layout(std::size_t B, double p, double R, double r0,
                                 Placement placement, const std::vector<Point>& provided,
                                 std::uint64_t seed);

NetworkLayout build_hex_layout(std::size_t B, double R, double r0);

// Radius rule for hex networks: pi p^2 = 3 B R^2.
double hex_network_radius(std::size_t B, double R);

UserSet sample_users_disc(const NetworkLayout& layout, std::size_t K, std::uint64_t seed);

UserSet sample_users_per_cell(const NetworkLayout& layout, std::size_t rho, std::uint64_t seed);

double truncated_distance(Point tx, Point user, double r0);

// Hexagon of inradius R around `center`, flat sides facing the lattice neighbors.
bool inside_hex_cell(Point center, double R, Point q, double slack = 1e-12);

void to_json(nlohmann::json& j, const NetworkLayout& l);
void from_json(const nlohmann::json& j, NetworkLayout& l);

} // namespace ofdma

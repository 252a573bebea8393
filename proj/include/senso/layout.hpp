#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "senso/gesture.hpp"

namespace senso {

// Axis-aligned rectangle on the interaction plane.
struct Zone {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool contains(const Vec3& p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  Vec3 center() const { return {(x0 + x1) / 2.0, (y0 + y1) / 2.0, 0.0}; }
};

namespace layout {

// Grasps within this planar distance of an object pick it up. Generous on
// purpose: the players are older adults with variable fine motor control.
inline constexpr double kPickupRadius = 0.15;

inline constexpr Zone kDimSumTable{0.35, -0.6, 0.95, 0.6};
inline constexpr Zone kSteamerZone{-0.45, 0.0, 0.45, 0.8};
inline constexpr Zone kServingZone{0.55, -0.6, 0.95, 0.6};
inline constexpr Zone kCashHolder{-0.4, 0.2, 0.4, 0.8};

inline constexpr std::size_t kDimSumCartCapacity = 12;
inline constexpr std::size_t kSteamerCapacity = 8;

// 4 x 3 grid on the left of the table.
std::vector<Vec3> dimsum_cart_slots();
// 4 x 2 grid below the steamer.
std::vector<Vec3> steamer_cart_slots();
// Positions of items inside the steamer basket.
std::vector<Vec3> steamer_basket_slots();

}  // namespace layout

const std::vector<std::string>& default_dimsum_catalog();

nlohmann::json zone_json(const Zone& z);

}  // namespace senso

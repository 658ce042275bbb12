#pragma once

#include "wft/systems.hpp"

#include <random>
#include <vector>

namespace wft::testing {

inline std::vector<State> random_points(const DomainBox& box, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<State> out;
  for (int k = 0; k < count; ++k) {
    State t(box.dim());
    for (int i = 0; i < box.dim(); ++i) t(i) = unit(rng);
    out.push_back(box.point(t));
  }
  return out;
}

inline std::vector<SystemPair> shipped_pairs() {
  return {systems::burgers_pair(1, 2), systems::burgers_pair(2, 3), systems::psystem_pair({}),
          systems::psystem_pair({1.3, 1.4}), systems::euler_pair(2.0), systems::euler_pair(1.4),
          systems::traffic_pair(1, 2)};
}

inline std::vector<SystemDef> shipped_systems() {
  std::vector<SystemDef> out;
  for (const auto& p : shipped_pairs()) {
    out.push_back(p.left);
    out.push_back(p.right);
  }
  out.push_back(systems::isentropic(2.0, 0.05));
  return out;
}

/// Burgers flux with a wider box for hand-computed interaction examples.
inline SystemDef wide_burgers(double m) {
  SystemDef s = systems::burgers(m);
  s.domain = DomainBox(make_state({0.5}), make_state({1.5}), make_state({1.0}));
  s.lambda_hat = 1.8;
  return s;
}

} // namespace wft::testing

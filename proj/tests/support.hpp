#pragma once

// Random generators shared by the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "anchorvote/density.hpp"
#include "anchorvote/simplex.hpp"

namespace anchorvote::testing {

inline SimplexPoint random_point(std::size_t m, std::mt19937_64& rng) {
  return DensityModel::uniform(m).sample(rng);
}

inline double random_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t random_index(std::mt19937_64& rng, std::size_t size) {
  return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

inline std::vector<std::uint32_t> random_histogram(std::size_t reports, std::uint32_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> h(reports, 0);
  for (std::uint32_t i = 0; i < n; ++i) ++h[random_index(rng, reports)];
  return h;
}

inline std::vector<ReportMenu> builtin_menus() {
  std::vector<ReportMenu> out;
  for (std::size_t m : {3u, 4u}) {
    out.push_back(ReportMenu::plurality(m));
    out.push_back(ReportMenu::ordinal(m));
    out.push_back(ReportMenu::veto(m));
  }
  return out;
}

}  // namespace anchorvote::testing

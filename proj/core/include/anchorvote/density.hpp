#pragma once

// Utility densities on the simplex and the measure of nearest-report cells.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "anchorvote/simplex.hpp"

namespace anchorvote {

/// splitmix64 step; derives independent stream seeds from one user seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// A density mu on the m-simplex: uniform, Dirichlet(theta), or a finite
/// mixture of those.
class DensityModel {
 public:
  enum class Kind { uniform, dirichlet, mixture };

  struct Component;

  static DensityModel uniform(std::size_t m);
  /// Throws InvalidInput on an empty theta or any theta_i <= 0.
  static DensityModel dirichlet(Vector theta);
  /// Weights must be positive; they are normalized to sum to one.
  static DensityModel mixture(std::vector<Component> components);

  Kind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  const Vector& theta() const noexcept { return theta_; }
  const std::vector<Component>& components() const noexcept { return components_; }

  /// True when the density is identically the uniform density (uniform kind,
  /// Dirichlet(1, ..., 1), or a mixture of such).
  bool is_uniform() const;

  /// E_mu u in closed form.
  Vector mean() const;

  /// Upper bound on TV(mu, uniform): 0 if uniform, the total weight of
  /// non-uniform components for a mixture, 1 otherwise.
  double tv_upper_bound() const;

  /// One draw. Dirichlet coordinates are normalized independent Gamma draws;
  /// the uniform density goes through the same path with every shape equal to 1.
  SimplexPoint sample(std::mt19937_64& rng) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::uniform;
  std::size_t dim_ = 0;
  Vector theta_;
  std::vector<Component> components_;
};

struct DensityModel::Component {
  double weight = 0.0;
  DensityModel density;
};

/// n i.i.d. draws from one seeded stream.
std::vector<SimplexPoint> sample_profile(const DensityModel& density, std::size_t n, std::uint64_t seed);

enum class Provenance { monte_carlo, exact_geometry, closed_form, exact_enumeration };
std::string to_string(Provenance provenance);

/// A probability per report of some menu.
struct ReportDistribution {
  Vector probs;
  Vector stderrs;  ///< per-entry Monte Carlo standard error, 0 when exact
  Provenance provenance = Provenance::closed_form;
  std::uint64_t samples = 0;

  std::size_t size() const noexcept { return probs.size(); }
  double operator[](std::size_t r) const { return probs[r]; }
  /// Sum of probs over the given report indices.
  double mass(const std::vector<std::size_t>& reports) const;
  /// Point mass-free constructor from plain probabilities (validated).
  static ReportDistribution from_probs(Vector probs);
};

/// Monte Carlo estimate of mu(Gamma_r) for every report r. Samples are drawn
/// in fixed-size shards with per-shard seeds so the result depends only on
/// (density, menu, samples, seed). A draw tied between k reports credits
/// each with 1/k.
ReportDistribution level_set_measure(const DensityModel& density, const ReportMenu& menu,
                                     std::uint64_t samples, std::uint64_t seed);

/// Exact uniform-density measure of every nearest-report cell for m = 3, by
/// clipping the simplex triangle against perpendicular bisectors.
/// Throws Unsupported when the menu dimension is not 3.
ReportDistribution exact_measure_m3(const ReportMenu& menu);

/// Exact geometry when m = 3 and mu is uniform, Monte Carlo otherwise.
ReportDistribution report_distribution(const DensityModel& density, const ReportMenu& menu,
                                       std::uint64_t samples, std::uint64_t seed);

/// max_r |mu(Gamma_r) - m(Gamma_r)| over the cells of `menu`, with m the
/// uniform density. This is a lower estimate of TV(mu, m) restricted to one
/// partition, not the supremum over all Borel sets. The uniform reference uses
/// exact geometry at m = 3 and the same Monte Carlo stream otherwise.
double tv_distance_bound(const DensityModel& density, const ReportMenu& menu,
                         std::uint64_t samples, std::uint64_t seed);

}  // namespace anchorvote

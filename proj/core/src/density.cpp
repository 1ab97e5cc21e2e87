#include "anchorvote/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "anchorvote/geometry.hpp"
#include "compensated_sum.hpp"
#include "shards.hpp"

namespace anchorvote {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

DensityModel DensityModel::uniform(std::size_t m) {
  if (m < 1) throw InvalidInput("density dimension must be positive");
  DensityModel d;
  d.kind_ = Kind::uniform;
  d.dim_ = m;
  d.theta_.assign(m, 1.0);
  return d;
}

DensityModel DensityModel::dirichlet(Vector theta) {
  if (theta.empty()) throw InvalidInput("Dirichlet parameters are empty");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!(theta[i] > 0.0) || !std::isfinite(theta[i])) {
      std::ostringstream msg;
      msg << "Dirichlet parameter theta[" << i << "] = " << theta[i] << " must be positive";
      throw InvalidInput(msg.str());
    }
  }
  DensityModel d;
  d.kind_ = Kind::dirichlet;
  d.dim_ = theta.size();
  d.theta_ = std::move(theta);
  return d;
}

DensityModel DensityModel::mixture(std::vector<Component> components) {
  if (components.empty()) throw InvalidInput("mixture has no components");
  double total = 0.0;
  const std::size_t m = components.front().density.dim();
  for (const auto& c : components) {
    if (!(c.weight > 0.0) || !std::isfinite(c.weight)) throw InvalidInput("mixture weights must be positive");
    if (c.density.dim() != m) throw InvalidInput("mixture components must share one dimension");
    total += c.weight;
  }
  for (auto& c : components) c.weight /= total;
  DensityModel d;
  d.kind_ = Kind::mixture;
  d.dim_ = m;
  d.components_ = std::move(components);
  return d;
}

bool DensityModel::is_uniform() const {
  switch (kind_) {
    case Kind::uniform:
      return true;
    case Kind::dirichlet:
      return std::all_of(theta_.begin(), theta_.end(), [](double t) { return t == 1.0; });
    case Kind::mixture:
      return std::all_of(components_.begin(), components_.end(),
                         [](const Component& c) { return c.density.is_uniform(); });
  }
  return false;
}

Vector DensityModel::mean() const {
  Vector v(dim_, 0.0);
  switch (kind_) {
    case Kind::uniform:
      std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(dim_));
      break;
    case Kind::dirichlet: {
      const double total = std::accumulate(theta_.begin(), theta_.end(), 0.0);
      for (std::size_t i = 0; i < dim_; ++i) v[i] = theta_[i] / total;
      break;
    }
    case Kind::mixture:
      for (const auto& c : components_) {
        const Vector cm = c.density.mean();
        for (std::size_t i = 0; i < dim_; ++i) v[i] += c.weight * cm[i];
      }
      break;
  }
  return v;
}

double DensityModel::tv_upper_bound() const {
  if (is_uniform()) return 0.0;
  if (kind_ != Kind::mixture) return 1.0;
  double bound = 0.0;
  for (const auto& c : components_) bound += c.weight * c.density.tv_upper_bound();
  return std::min(bound, 1.0);
}

SimplexPoint DensityModel::sample(std::mt19937_64& rng) const {
  if (kind_ == Kind::mixture) {
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    double x = pick(rng);
    for (const auto& c : components_) {
      if (x < c.weight) return c.density.sample(rng);
      x -= c.weight;
    }
    return components_.back().density.sample(rng);
  }
  Vector g(dim_);
  double total = 0.0;
  do {
    total = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      std::gamma_distribution<double> gamma(theta_[i], 1.0);
      g[i] = gamma(rng);
      total += g[i];
    }
  } while (!(total > 0.0));
  for (auto& x : g) x /= total;
  return SimplexPoint(std::move(g));
}

std::string DensityModel::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::uniform:
      out << "uniform(m=" << dim_ << ")";
      break;
    case Kind::dirichlet:
      out << "dirichlet(";
      for (std::size_t i = 0; i < theta_.size(); ++i) out << (i ? "," : "") << theta_[i];
      out << ")";
      break;
    case Kind::mixture:
      out << "mixture(";
      for (std::size_t i = 0; i < components_.size(); ++i) {
        out << (i ? " + " : "") << components_[i].weight << "*" << components_[i].density.describe();
      }
      out << ")";
      break;
  }
  return out.str();
}

std::vector<SimplexPoint> sample_profile(const DensityModel& density, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("profile size must be at least 1");
  std::mt19937_64 rng(mix_seed(seed, 0));
  std::vector<SimplexPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(density.sample(rng));
  return out;
}

std::string to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::monte_carlo:
      return "monte-carlo";
    case Provenance::exact_geometry:
      return "exact-geometry";
    case Provenance::closed_form:
      return "closed-form";
    case Provenance::exact_enumeration:
      return "exact-enumeration";
  }
  return "unknown";
}

double ReportDistribution::mass(const std::vector<std::size_t>& reports) const {
  double s = 0.0;
  for (std::size_t r : reports) s += probs.at(r);
  return s;
}

ReportDistribution ReportDistribution::from_probs(Vector probs) {
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw InvalidInput("report probabilities must be nonnegative");
    total += p;
  }
  if (probs.empty() || std::abs(total - 1.0) > 1e-9) throw InvalidInput("report probabilities must sum to 1");
  ReportDistribution d;
  d.stderrs.assign(probs.size(), 0.0);
  d.probs = std::move(probs);
  d.provenance = Provenance::closed_form;
  return d;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kShardSize = 1ULL << 16;

Vector count_shard(const DensityModel& density, const ReportMenu& menu, std::uint64_t seed,
                   std::uint64_t shard, std::uint64_t count) {
  std::mt19937_64 rng(mix_seed(seed, shard));
  Vector counts(menu.size(), 0.0);
  Vector dist(menu.size());
  std::vector<std::size_t> tied;
  tied.reserve(menu.size());
  for (std::uint64_t i = 0; i < count; ++i) {
    const SimplexPoint u = density.sample(rng);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < menu.size(); ++r) {
      dist[r] = distance(u.coords(), menu.position(r));
      best = std::min(best, dist[r]);
    }
    tied.clear();
    for (std::size_t r = 0; r < menu.size(); ++r) {
      if (dist[r] - best <= kTieTolerance) tied.push_back(r);
    }
    const double credit = 1.0 / static_cast<double>(tied.size());
    for (std::size_t r : tied) counts[r] += credit;
  }
  return counts;
}

}  // namespace

ReportDistribution level_set_measure(const DensityModel& density, const ReportMenu& menu,
                                     std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("sample count must be at least 1");
  if (density.dim() != menu.dim()) throw InvalidInput("density and menu dimensions differ");

  const std::uint64_t shards = (samples + kShardSize - 1) / kShardSize;
  const auto shard_counts = detail::run_shards<Vector>(shards, [&](std::uint64_t s) {
    return count_shard(density, menu, seed, s, std::min(kShardSize, samples - s * kShardSize));
  });

  ReportDistribution out;
  out.provenance = Provenance::monte_carlo;
  out.samples = samples;
  out.probs.assign(menu.size(), 0.0);
  out.stderrs.assign(menu.size(), 0.0);
  const double n = static_cast<double>(samples);
  for (std::size_t r = 0; r < menu.size(); ++r) {
    detail::CompensatedSum total;
    for (const auto& c : shard_counts) total.add(c[r]);
    const double p = total.value() / n;
    out.probs[r] = p;
    out.stderrs[r] = std::sqrt(std::max(p * (1.0 - p), 0.0) / n);
  }
  return out;
}

ReportDistribution exact_measure_m3(const ReportMenu& menu) {
  if (menu.dim() != 3) throw Unsupported("exact level-set measure is only available for m = 3");
  const auto cells = geometry::level_set_cells(menu);
  const double total = geometry::area(geometry::simplex_triangle());
  ReportDistribution out;
  out.provenance = Provenance::exact_geometry;
  out.stderrs.assign(menu.size(), 0.0);
  for (const auto& cell : cells) out.probs.push_back(geometry::area(cell) / total);
  return out;
}

ReportDistribution report_distribution(const DensityModel& density, const ReportMenu& menu,
                                       std::uint64_t samples, std::uint64_t seed) {
  if (menu.dim() == 3 && density.dim() == 3 && density.is_uniform()) return exact_measure_m3(menu);
  return level_set_measure(density, menu, samples, seed);
}

double tv_distance_bound(const DensityModel& density, const ReportMenu& menu,
                         std::uint64_t samples, std::uint64_t seed) {
  if (density.is_uniform()) return 0.0;
  const ReportDistribution mu = level_set_measure(density, menu, samples, seed);
  const ReportDistribution ref = menu.dim() == 3
                                     ? exact_measure_m3(menu)
                                     : level_set_measure(DensityModel::uniform(menu.dim()), menu, samples, seed);
  double worst = 0.0;
  for (std::size_t r = 0; r < menu.size(); ++r) worst = std::max(worst, std::abs(mu.probs[r] - ref.probs[r]));
  return worst;
}

}  // namespace anchorvote

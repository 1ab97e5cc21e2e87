#pragma once

// Exact outcome distributions over alternatives and the change in social
// welfare when voters anchor.

#include <cstdint>
#include <span>
#include <vector>

#include "anchorvote/density.hpp"
#include "anchorvote/rules.hpp"

namespace anchorvote {

/// Probability that each alternative is selected, ties split uniformly.
struct OutcomeDistribution {
  Vector probs;
  Vector stderrs;  ///< zero for exact enumeration
  Provenance provenance = Provenance::exact_enumeration;
  std::uint64_t samples = 0;
};

/// sum_i u_i(a). Throws InvalidInput for an empty profile or an out-of-range
/// alternative.
double social_welfare(std::size_t a, std::span<const SimplexPoint> profile);

/// nu(f_a) = sum over histograms h with a in f(h) of
///   (1 / |f(h)|) * n! / prod_r h_r! * prod_r p_r^{h_r},
/// by walking every composition of n into |menu| parts. Multinomial weights
/// are built incrementally (log space once n > 150).
/// Throws ResourceLimit when the composition count exceeds `budget`.
OutcomeDistribution outcome_distribution(const VotingRule& rule, const ReportDistribution& p, std::uint32_t n,
                                         std::uint64_t budget = kDefaultEnumerationBudget);

/// nu_soc: the same enumeration over q = measure of the anchored-menu cells
/// (exact geometry for m = 3 under the uniform density, Monte Carlo otherwise).
OutcomeDistribution anchored_outcome_distribution(const VotingRule& rule, const DensityModel& density,
                                                  const AnchorParams& params, std::uint32_t n,
                                                  std::uint64_t samples, std::uint64_t seed,
                                                  std::uint64_t budget = kDefaultEnumerationBudget);

/// Empirical outcome frequencies from `elections` simulated elections with
/// reports drawn i.i.d. from p and a uniformly random winner among ties.
OutcomeDistribution simulate_outcomes(const VotingRule& rule, const ReportDistribution& p, std::uint32_t n,
                                      std::uint64_t elections, std::uint64_t seed);

enum class WelfareMode { exact, monte_carlo };

/// How a tied election is scored in Monte Carlo welfare.
enum class TieMode {
  expected,  ///< average welfare over the tied winners
  sampled,   ///< one tied winner drawn uniformly
};

struct WelfareOptions {
  WelfareMode mode = WelfareMode::exact;
  TieMode ties = TieMode::expected;
  std::uint64_t samples = 100'000;  ///< level-set draws (exact) or simulated electorates (Monte Carlo)
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultEnumerationBudget;
  /// Monte Carlo only: score both outcomes with a second, independent
  /// profile instead of the voters' own utilities. The mean then estimates
  /// n <v, nu_soc - nu>; with the voters' utilities it does not, because
  /// those utilities also decide the outcome.
  bool independent_evaluation = false;
};

struct WelfareStats {
  WelfareMode mode = WelfareMode::exact;
  double expected_delta = 0.0;          ///< E[delta sw], total over n voters
  double expected_delta_stderr = 0.0;
  double decrease_probability = 0.0;    ///< Pr[delta sw < 0]
  double decrease_probability_stderr = 0.0;
  double chernoff_bound = 1.0;          ///< E[exp(-delta sw)]
  double chernoff_bound_stderr = 0.0;
  bool bound_vacuous = true;            ///< chernoff_bound >= 1
  std::uint64_t samples = 0;

  Vector v;       ///< E_mu u
  Vector nu;      ///< standard outcome distribution (exact mode)
  Vector nu_soc;  ///< anchored outcome distribution (exact mode)
  std::vector<std::size_t> inc;  ///< alternatives whose win probability weakly increases
  std::vector<std::size_t> dec;
  bool order_condition = false;  ///< max_{a in dec} v_a <= min_{a in inc} v_a
};

/// exact: n <v, nu_soc - nu> with the Inc/Dec split and its order condition.
/// monte_carlo: mean of delta sw over simulated electorates, together with
/// Pr[delta sw < 0] and E[exp(-delta sw)] from the same draws.
WelfareStats expected_delta_sw(const DensityModel& density, const VotingRule& rule, const AnchorParams& params,
                               std::uint32_t n, const WelfareOptions& options);

/// Monte Carlo Pr[delta sw < 0] and the bound E[exp(-delta sw)] >= that probability.
WelfareStats decrease_probability(const DensityModel& density, const VotingRule& rule, const AnchorParams& params,
                                  std::uint32_t n, std::uint64_t samples, std::uint64_t seed,
                                  TieMode ties = TieMode::expected);

/// Delta sw for one electorate: welfare of the anchored outcome minus welfare
/// of the standard outcome. Welfare is measured on `evaluation`, which
/// defaults to the voters' own profile when empty.
double welfare_change(const VotingRule& rule, const ReportMenu& anchored_menu,
                      std::span<const SimplexPoint> profile, TieMode ties, std::mt19937_64* rng = nullptr,
                      std::span<const SimplexPoint> evaluation = {});

}  // namespace anchorvote

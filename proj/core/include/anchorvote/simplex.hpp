#pragma once

// Points on the probability simplex, report menus, nearest-report voting and
// the anchored-menu transform.
//
// A voter with utility u reports the menu element closest to u in Euclidean
// distance. An anchored voter uses (1 - alpha) u + alpha w instead; the same
// vote is produced by an unanchored voter facing the transformed menu
// { (r - alpha w) / (1 - alpha) : r in R }.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anchorvote/errors.hpp"

namespace anchorvote {

using Vector = std::vector<double>;

/// Coordinate tolerance for simplex membership (nonnegativity and unit sum).
inline constexpr double kSimplexTolerance = 1e-12;

/// Two reports whose distances to a point differ by at most this are tied.
inline constexpr double kTieTolerance = 1e-10;

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

/// Human-readable alternative name: a, b, c, ... (x26, x27, ... past z).
std::string alternative_name(std::size_t a);

class SimplexPoint {
 public:
  /// Throws InvalidInput unless every coordinate is >= -1e-12 and the sum is
  /// within 1e-12 of one.
  explicit SimplexPoint(Vector coords);

  static SimplexPoint uniform(std::size_t m);
  static SimplexPoint vertex(std::size_t m, std::size_t a);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const Vector& vector() const noexcept { return coords_; }

  bool operator==(const SimplexPoint&) const = default;

 private:
  Vector coords_;
};

enum class Scaling {
  normalized,  ///< scores divided by their sum so every report lies on the simplex
  raw,         ///< positional scores used as-is (sensitivity studies)
};

enum class MenuKind { plurality, ordinal, veto, custom };

/// A finite set of score vectors a voter may submit.
///
/// Each report carries two vectors: its geometric position (used for distance
/// computations, possibly normalized or anchored) and the positional scores a
/// rule tallies. Anchoring moves positions but never scores or labels, so
/// histograms over an anchored menu index the same reports as the original.
class ReportMenu {
 public:
  /// The m standard basis vectors, labelled by alternative.
  static ReportMenu plurality(std::size_t m, Scaling scaling = Scaling::normalized);

  /// All m! rankings, scores a permutation of {0, ..., m-1}. Reports are in
  /// lexicographic order of the ranking string (abc, acb, bac, bca, cab, cba).
  static ReportMenu ordinal(std::size_t m, Scaling scaling = Scaling::normalized);

  /// Report a vetoes alternative a: score 0 for a and 1 for everyone else.
  static ReportMenu veto(std::size_t m, Scaling scaling = Scaling::normalized);

  /// Arbitrary distinct reports; positions and scores coincide.
  static ReportMenu custom(std::vector<Vector> reports, std::vector<std::string> labels);

  std::size_t size() const noexcept { return positions_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  MenuKind kind() const noexcept { return kind_; }
  Scaling scaling() const noexcept { return scaling_; }
  bool anchored() const noexcept { return anchored_; }

  const Vector& position(std::size_t r) const { return positions_.at(r); }
  const std::vector<Vector>& positions() const noexcept { return positions_; }
  const Vector& scores(std::size_t r) const { return scores_.at(r); }
  const std::string& label(std::size_t r) const { return labels_.at(r); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> find_label(std::string_view label) const;

  /// Strict preference order of report r, best first. Only ordinal menus
  /// carry full rankings.
  bool has_rankings() const noexcept { return !rankings_.empty(); }
  const std::vector<std::size_t>& ranking(std::size_t r) const { return rankings_.at(r); }

  /// Alternatives receiving the largest score in report r.
  std::vector<std::size_t> top_alternatives(std::size_t r) const;

  /// Copy of this menu with every position replaced. Scores, labels and
  /// rankings are kept.
  ReportMenu with_positions(std::vector<Vector> positions, bool anchored) const;

 private:
  ReportMenu() = default;
  void validate() const;

  std::size_t dim_ = 0;
  MenuKind kind_ = MenuKind::custom;
  Scaling scaling_ = Scaling::raw;
  bool anchored_ = false;
  std::vector<Vector> positions_;
  std::vector<Vector> scores_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> rankings_;
};

/// Anchoring information w and the weight alpha in [0, 1) every voter puts on it.
class AnchorParams {
 public:
  AnchorParams(SimplexPoint w, double alpha);

  const SimplexPoint& w() const noexcept { return w_; }
  double alpha() const noexcept { return alpha_; }

  /// argmax_a w_a when it is unique.
  std::optional<std::size_t> top_alternative() const;
  /// Same, throwing InvalidInput when the argmax is ambiguous.
  std::size_t require_top_alternative() const;

 private:
  SimplexPoint w_;
  double alpha_;
};

/// (1 - alpha) u + alpha w, for any field-like scalar (double, rationals).
template <class T>
std::vector<T> anchored_combination(std::span<const T> u, std::span<const T> w, const T& alpha) {
  std::vector<T> out(u.size());
  const T keep = T(1) - alpha;
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = keep * u[i] + alpha * w[i];
  return out;
}

/// r -> (r - alpha w) / (1 - alpha).
template <class T>
std::vector<T> anchor_transform(std::span<const T> r, std::span<const T> w, const T& alpha) {
  std::vector<T> out(r.size());
  const T keep = T(1) - alpha;
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = (r[i] - alpha * w[i]) / keep;
  return out;
}

/// Inverse of anchor_transform: s -> (1 - alpha) s + alpha w.
template <class T>
std::vector<T> unanchor_transform(std::span<const T> s, std::span<const T> w, const T& alpha) {
  return anchored_combination<T>(s, w, alpha);
}

struct NearestReport {
  std::vector<std::size_t> indices;  ///< every report within kTieTolerance of the minimum
  double distance = 0.0;             ///< the minimum distance
  double margin = 0.0;               ///< gap to the closest non-tied report (+inf if none)
};

NearestReport nearest_report_detail(std::span<const double> point, const ReportMenu& menu);
std::vector<std::size_t> nearest_report(std::span<const double> point, const ReportMenu& menu);
std::vector<std::size_t> nearest_report(const SimplexPoint& u, const ReportMenu& menu);

SimplexPoint anchored_utility(const SimplexPoint& u, const AnchorParams& params);

/// Applies r -> (r - alpha w) / (1 - alpha) to every position.
ReportMenu anchor_menu(const ReportMenu& menu, const AnchorParams& params);
/// Applies s -> (1 - alpha) s + alpha w to every position.
ReportMenu unanchor_menu(const ReportMenu& menu, const AnchorParams& params);

/// True iff d(u, s) <= d(u, t) and <w, s> >= <w, t>. For reports of equal
/// norm this implies d(u, phi(s)) <= d(u, phi(t)).
bool alignment_predicate(std::span<const double> s, std::span<const double> t,
                         const SimplexPoint& u, const AnchorParams& params);

/// Reports maximizing <w, r> (ties within kTieTolerance).
std::vector<std::size_t> best_aligned_reports(const SimplexPoint& w, const ReportMenu& menu);

}  // namespace anchorvote

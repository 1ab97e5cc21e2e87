#include "anchorvote/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace anchorvote {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

std::string alternative_name(std::size_t a) {
  if (a < 26) return std::string(1, static_cast<char>('a' + a));
  return "x" + std::to_string(a);
}

SimplexPoint::SimplexPoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidInput("simplex point needs at least one coordinate");
  double sum = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i]) || coords_[i] < -kSimplexTolerance) {
      std::ostringstream msg;
      msg << "simplex point coordinate " << i << " = " << coords_[i] << " is negative or not finite";
      throw InvalidInput(msg.str());
    }
    sum += coords_[i];
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "simplex point coordinates sum to " << sum << ", expected 1";
    throw InvalidInput(msg.str());
  }
}

SimplexPoint SimplexPoint::uniform(std::size_t m) {
  if (m == 0) throw InvalidInput("dimension must be positive");
  return SimplexPoint(Vector(m, 1.0 / static_cast<double>(m)));
}

SimplexPoint SimplexPoint::vertex(std::size_t m, std::size_t a) {
  if (a >= m) throw InvalidInput("vertex index out of range");
  Vector v(m, 0.0);
  v[a] = 1.0;
  return SimplexPoint(std::move(v));
}

// ---------------------------------------------------------------------------

namespace {

void normalize_in_place(std::vector<Vector>& positions) {
  for (auto& p : positions) {
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& x : p) x /= s;
  }
}

}  // namespace

ReportMenu ReportMenu::plurality(std::size_t m, Scaling scaling) {
  if (m < 2) throw InvalidInput("plurality menu needs m >= 2");
  ReportMenu menu;
  menu.dim_ = m;
  menu.kind_ = MenuKind::plurality;
  menu.scaling_ = scaling;
  for (std::size_t a = 0; a < m; ++a) {
    Vector e(m, 0.0);
    e[a] = 1.0;
    menu.scores_.push_back(e);
    menu.positions_.push_back(e);
    menu.labels_.push_back(alternative_name(a));
  }
  return menu;
}

ReportMenu ReportMenu::ordinal(std::size_t m, Scaling scaling) {
  if (m < 2) throw InvalidInput("ordinal menu needs m >= 2");
  if (m > 8) throw InvalidInput("ordinal menu limited to m <= 8 (m! reports)");
  ReportMenu menu;
  menu.dim_ = m;
  menu.kind_ = MenuKind::ordinal;
  menu.scaling_ = scaling;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  do {
    Vector scores(m, 0.0);
    std::string label;
    for (std::size_t pos = 0; pos < m; ++pos) {
      scores[order[pos]] = static_cast<double>(m - 1 - pos);
      label += alternative_name(order[pos]);
    }
    menu.scores_.push_back(scores);
    menu.positions_.push_back(std::move(scores));
    menu.labels_.push_back(std::move(label));
    menu.rankings_.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  if (scaling == Scaling::normalized) normalize_in_place(menu.positions_);
  return menu;
}

ReportMenu ReportMenu::veto(std::size_t m, Scaling scaling) {
  if (m < 2) throw InvalidInput("veto menu needs m >= 2");
  ReportMenu menu;
  menu.dim_ = m;
  menu.kind_ = MenuKind::veto;
  menu.scaling_ = scaling;
  for (std::size_t a = 0; a < m; ++a) {
    Vector v(m, 1.0);
    v[a] = 0.0;
    menu.scores_.push_back(v);
    menu.positions_.push_back(std::move(v));
    menu.labels_.push_back("veto-" + alternative_name(a));
  }
  if (scaling == Scaling::normalized) normalize_in_place(menu.positions_);
  return menu;
}

ReportMenu ReportMenu::custom(std::vector<Vector> reports, std::vector<std::string> labels) {
  if (reports.empty()) throw InvalidInput("report menu is empty");
  if (labels.empty()) {
    for (std::size_t r = 0; r < reports.size(); ++r) labels.push_back("r" + std::to_string(r));
  }
  if (labels.size() != reports.size()) throw InvalidInput("one label per report required");
  ReportMenu menu;
  menu.dim_ = reports.front().size();
  menu.kind_ = MenuKind::custom;
  menu.scaling_ = Scaling::raw;
  menu.scores_ = reports;
  menu.positions_ = std::move(reports);
  menu.labels_ = std::move(labels);
  menu.validate();
  return menu;
}

void ReportMenu::validate() const {
  if (positions_.empty()) throw InvalidInput("report menu is empty");
  for (const auto& p : positions_) {
    if (p.size() != dim_) throw InvalidInput("reports must share one dimension");
    for (double x : p) {
      if (!std::isfinite(x)) throw InvalidInput("report coordinates must be finite");
    }
  }
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    for (std::size_t j = i + 1; j < positions_.size(); ++j) {
      if (positions_[i] == positions_[j]) {
        throw InvalidInput("reports " + labels_[i] + " and " + labels_[j] + " coincide");
      }
    }
  }
}

std::optional<std::size_t> ReportMenu::find_label(std::string_view label) const {
  for (std::size_t r = 0; r < labels_.size(); ++r) {
    if (labels_[r] == label) return r;
  }
  return std::nullopt;
}

std::vector<std::size_t> ReportMenu::top_alternatives(std::size_t r) const {
  const Vector& s = scores_.at(r);
  const double best = *std::max_element(s.begin(), s.end());
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (s[a] == best) out.push_back(a);
  }
  return out;
}

ReportMenu ReportMenu::with_positions(std::vector<Vector> positions, bool anchored) const {
  if (positions.size() != positions_.size()) throw InvalidInput("position count mismatch");
  ReportMenu out = *this;
  out.positions_ = std::move(positions);
  out.anchored_ = anchored;
  return out;
}

// ---------------------------------------------------------------------------

AnchorParams::AnchorParams(SimplexPoint w, double alpha) : w_(std::move(w)), alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    std::ostringstream msg;
    msg << "anchor weight alpha = " << alpha << " must lie in [0, 1)";
    throw InvalidInput(msg.str());
  }
}

std::optional<std::size_t> AnchorParams::top_alternative() const {
  const auto c = w_.coords();
  const auto it = std::max_element(c.begin(), c.end());
  const std::size_t best = static_cast<std::size_t>(it - c.begin());
  for (std::size_t a = 0; a < c.size(); ++a) {
    if (a != best && std::abs(c[a] - *it) <= kSimplexTolerance) return std::nullopt;
  }
  return best;
}

std::size_t AnchorParams::require_top_alternative() const {
  if (auto a = top_alternative()) return *a;
  throw InvalidInput("anchoring point has no unique most preferred alternative");
}

// ---------------------------------------------------------------------------

NearestReport nearest_report_detail(std::span<const double> point, const ReportMenu& menu) {
  if (menu.size() == 0) throw InvalidInput("report menu is empty");
  if (point.size() != menu.dim()) throw InvalidInput("point and menu dimensions differ");

  Vector dist(menu.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < menu.size(); ++r) {
    dist[r] = distance(point, menu.position(r));
    best = std::min(best, dist[r]);
  }
  NearestReport out;
  out.distance = best;
  out.margin = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < menu.size(); ++r) {
    if (dist[r] - best <= kTieTolerance) {
      out.indices.push_back(r);
    } else {
      out.margin = std::min(out.margin, dist[r] - best);
    }
  }
  return out;
}

std::vector<std::size_t> nearest_report(std::span<const double> point, const ReportMenu& menu) {
  return nearest_report_detail(point, menu).indices;
}

std::vector<std::size_t> nearest_report(const SimplexPoint& u, const ReportMenu& menu) {
  return nearest_report_detail(u.coords(), menu).indices;
}

SimplexPoint anchored_utility(const SimplexPoint& u, const AnchorParams& params) {
  if (u.dim() != params.w().dim()) throw InvalidInput("utility and anchor dimensions differ");
  return SimplexPoint(anchored_combination<double>(u.coords(), params.w().coords(), params.alpha()));
}

ReportMenu anchor_menu(const ReportMenu& menu, const AnchorParams& params) {
  if (menu.dim() != params.w().dim()) throw InvalidInput("menu and anchor dimensions differ");
  if (!(params.alpha() < 1.0)) throw InvalidInput("anchor weight alpha must be < 1");
  std::vector<Vector> images;
  images.reserve(menu.size());
  for (const auto& r : menu.positions()) {
    images.push_back(anchor_transform<double>(r, params.w().coords(), params.alpha()));
  }
  return menu.with_positions(std::move(images), true);
}

ReportMenu unanchor_menu(const ReportMenu& menu, const AnchorParams& params) {
  if (menu.dim() != params.w().dim()) throw InvalidInput("menu and anchor dimensions differ");
  std::vector<Vector> preimages;
  preimages.reserve(menu.size());
  for (const auto& s : menu.positions()) {
    preimages.push_back(unanchor_transform<double>(s, params.w().coords(), params.alpha()));
  }
  return menu.with_positions(std::move(preimages), false);
}

bool alignment_predicate(std::span<const double> s, std::span<const double> t,
                         const SimplexPoint& u, const AnchorParams& params) {
  const auto w = params.w().coords();
  return squared_distance(u.coords(), s) <= squared_distance(u.coords(), t) && dot(w, s) >= dot(w, t);
}

std::vector<std::size_t> best_aligned_reports(const SimplexPoint& w, const ReportMenu& menu) {
  if (w.dim() != menu.dim()) throw InvalidInput("anchor and menu dimensions differ");
  Vector score(menu.size());
  for (std::size_t r = 0; r < menu.size(); ++r) score[r] = dot(w.coords(), menu.position(r));
  const double best = *std::max_element(score.begin(), score.end());
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < menu.size(); ++r) {
    if (best - score[r] <= kTieTolerance) out.push_back(r);
  }
  return out;
}

}  // namespace anchorvote

#include "eec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace eec {

namespace {

// Continued fraction for the incomplete beta function, modified Lentz method.
// https://en.wikipedia.org/wiki/Beta_function#Incomplete_beta_function
double incomplete_beta_cf(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  constexpr int max_terms = 200000;

  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_terms; ++m) {
    double m2 = 2.0 * m;
    double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double mean_of(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("incomplete beta needs x in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  // The continued fraction converges fast for x below the mean; use the
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) on the other side.
  if (x < (a + 1.0) / (a + b + 2.0)) return front * incomplete_beta_cf(x, a, b) / a;
  return 1.0 - front * incomplete_beta_cf(1.0 - x, b, a) / b;
}

double student_t_two_tailed_p(double t, double df) {
  if (!(df >= 1.0)) throw std::invalid_argument("degrees of freedom must be >= 1");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  // P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2); even in t by construction.
  return regularized_incomplete_beta(df / (df + t * t), 0.5 * df, 0.5);
}

double bonferroni_threshold(double alpha, int n_assessments) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (n_assessments < 1) throw std::invalid_argument("assessment count must be >= 1");
  return alpha / static_cast<double>(n_assessments);
}

TestResult paired_t_test(std::span<const double> deltas, double corrected_alpha) {
  if (deltas.size() < 2) throw std::invalid_argument("paired t test needs at least 2 pairs");
  TestResult r;
  r.n = deltas.size();
  r.degrees_of_freedom = static_cast<double>(r.n - 1);
  // A literally constant sample has sd = 0 regardless of summation rounding.
  bool constant = std::all_of(deltas.begin(), deltas.end(),
                              [&deltas](double d) { return d == deltas.front(); });
  r.mean_delta = constant ? deltas.front() : mean_of(deltas);
  double ss = 0.0;
  for (double d : deltas) {
    double dev = d - r.mean_delta;
    ss += dev * dev;
  }
  double sd = constant ? 0.0 : std::sqrt(ss / r.degrees_of_freedom);
  if (sd == 0.0) {
    // Limit of the t formula as sd -> 0.
    if (r.mean_delta == 0.0) {
      r.t_statistic = 0.0;
      r.p_value = 1.0;
    } else {
      r.t_statistic = std::copysign(std::numeric_limits<double>::infinity(), r.mean_delta);
      r.p_value = 0.0;
    }
  } else {
    r.t_statistic = r.mean_delta / (sd / std::sqrt(static_cast<double>(r.n)));
    r.p_value = student_t_two_tailed_p(r.t_statistic, r.degrees_of_freedom);
  }
  r.significant = r.p_value < corrected_alpha;
  return r;
}

std::vector<PairDelta> compute_deltas(std::span<const ComparisonUnit> units,
                                      const PredictionSet& predictions) {
  std::vector<PairDelta> deltas;
  deltas.reserve(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    const auto& u = units[i];
    double left = 0.0, right = 0.0;
    for (const auto& id : u.left_ids) left += predictions.score(id);
    for (const auto& id : u.right_ids) right += predictions.score(id);
    left /= static_cast<double>(u.left_ids.size());
    right /= static_cast<double>(u.right_ids.size());
    deltas.push_back(PairDelta{i, left - right});
  }
  return deltas;
}

std::vector<double> delta_values(std::span<const PairDelta> deltas) {
  std::vector<double> values;
  values.reserve(deltas.size());
  for (const auto& d : deltas) values.push_back(d.delta);
  return values;
}

BoxStats box_stats(std::span<const double> deltas) {
  if (deltas.empty()) throw std::invalid_argument("box stats need at least one delta");
  std::vector<double> sorted(deltas.begin(), deltas.end());
  std::sort(sorted.begin(), sorted.end());
  auto quartile = [&sorted](double p) {
    double h = p * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
  };
  BoxStats box;
  box.q1 = quartile(0.25);
  box.median = quartile(0.5);
  box.q3 = quartile(0.75);
  double iqr = box.q3 - box.q1;
  double lo_fence = box.q1 - 1.5 * iqr;
  double hi_fence = box.q3 + 1.5 * iqr;
  box.whisker_low = *std::find_if(sorted.begin(), sorted.end(),
                                  [lo_fence](double d) { return d >= lo_fence; });
  box.whisker_high = *std::find_if(sorted.rbegin(), sorted.rend(),
                                   [hi_fence](double d) { return d <= hi_fence; });
  return box;
}

SystemBiasSummary classify_and_summarize(std::string system_id, Task task, Dimension dimension,
                                         std::span<const double> deltas, const TestResult& test) {
  if (deltas.empty() || deltas.size() != test.n)
    throw std::invalid_argument("test result does not match the delta list");
  SystemBiasSummary s;
  s.system_id = std::move(system_id);
  s.task = task;
  s.dimension = dimension;
  s.test = test;
  if (!test.significant)
    s.group = BiasGroup::NotSignificant;
  else
    s.group = test.mean_delta > 0.0 ? BiasGroup::LeftHigher : BiasGroup::RightHigher;

  double pos_sum = 0.0, neg_sum = 0.0;
  std::size_t pos_n = 0, neg_n = 0;
  double lo = deltas[0], hi = deltas[0];
  for (double d : deltas) {
    if (d > 0.0) {
      pos_sum += d;
      ++pos_n;
    } else if (d < 0.0) {
      neg_sum += d;
      ++neg_n;
    }
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (pos_n) s.avg_delta_pos = pos_sum / static_cast<double>(pos_n);
  if (neg_n) s.avg_delta_neg = neg_sum / static_cast<double>(neg_n);
  s.delta_spread = hi - lo;
  s.box = box_stats(deltas);
  return s;
}

std::vector<GroupRow> aggregate_groups(std::span<const SystemBiasSummary> summaries) {
  for (const auto& s : summaries)
    if (s.task != summaries.front().task || s.dimension != summaries.front().dimension)
      throw std::invalid_argument("group aggregation mixes tasks or dimensions");

  auto row_for = [&summaries](const std::string& name, auto&& member) {
    GroupRow row;
    row.group = name;
    double pos_sum = 0.0, neg_sum = 0.0;
    std::size_t pos_n = 0, neg_n = 0;
    for (const auto& s : summaries) {
      if (!member(s)) continue;
      ++row.count;
      if (s.avg_delta_pos) {
        pos_sum += *s.avg_delta_pos;
        ++pos_n;
      }
      if (s.avg_delta_neg) {
        neg_sum += *s.avg_delta_neg;
        ++neg_n;
      }
    }
    if (pos_n) row.mean_delta_pos = pos_sum / static_cast<double>(pos_n);
    if (neg_n) row.mean_delta_neg = neg_sum / static_cast<double>(neg_n);
    return row;
  };

  std::vector<GroupRow> rows;
  for (BiasGroup g : {BiasGroup::NotSignificant, BiasGroup::LeftHigher, BiasGroup::RightHigher})
    rows.push_back(
        row_for(to_string(g), [g](const SystemBiasSummary& s) { return s.group == g; }));
  rows.push_back(row_for("all", [](const SystemBiasSummary&) { return true; }));
  return rows;
}

}  // namespace eec

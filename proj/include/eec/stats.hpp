#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eec/pairing.hpp"
#include "eec/predictions.hpp"
#include "eec/types.hpp"

namespace eec {

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation with the symmetry transformation. Absolute error below 1e-10
// over the t-test's operating range.
double regularized_incomplete_beta(double x, double a, double b);

// Two-tailed tail mass P(|T_df| >= |t|) of Student's t. df >= 1 required.
double student_t_two_tailed_p(double t, double df);

// alpha / n_assessments.
double bonferroni_threshold(double alpha, int n_assessments);

struct TestResult {
  std::size_t n = 0;
  double mean_delta = 0.0;
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
  bool significant = false;
};

// One-sample t test of the deltas against zero mean, the paired two-sample
// formulation. Sample standard deviation (n-1 denominator); two-tailed p.
// Degenerate sd = 0 collapses to the limit: p = 0 when the mean is nonzero,
// p = 1 otherwise. n >= 2 required.
TestResult paired_t_test(std::span<const double> deltas, double corrected_alpha);

// Realized score difference of one comparison unit: mean(left) - mean(right).
struct PairDelta {
  std::size_t unit_index = 0;
  double delta = 0.0;
};

std::vector<PairDelta> compute_deltas(std::span<const ComparisonUnit> units,
                                      const PredictionSet& predictions);

std::vector<double> delta_values(std::span<const PairDelta> deltas);

struct BoxStats {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
};

// Quartiles by linear interpolation between order statistics; whiskers reach
// the outermost data point within 1.5 IQR of the box. n >= 1 required.
BoxStats box_stats(std::span<const double> deltas);

struct SystemBiasSummary {
  std::string system_id;
  Task task = Task::Valence;
  Dimension dimension = Dimension::Gender;
  TestResult test;
  BiasGroup group = BiasGroup::NotSignificant;
  std::optional<double> avg_delta_pos;  // mean over units with delta > 0
  std::optional<double> avg_delta_neg;  // mean over units with delta < 0
  double delta_spread = 0.0;            // max delta - min delta
  BoxStats box;
};

SystemBiasSummary classify_and_summarize(std::string system_id, Task task, Dimension dimension,
                                         std::span<const double> deltas, const TestResult& test);

struct GroupRow {
  std::string group;  // not_significant | left_higher | right_higher | all
  std::size_t count = 0;
  std::optional<double> mean_delta_pos;
  std::optional<double> mean_delta_neg;
};

// The three bias-group rows plus an "all" row; group means average each
// member's avg_delta_pos / avg_delta_neg over the members that have one.
// All summaries must share task and dimension.
std::vector<GroupRow> aggregate_groups(std::span<const SystemBiasSummary> summaries);

}  // namespace eec

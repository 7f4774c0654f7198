#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace knowsearch {

struct Descriptive {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double std = 0.0;  // sample (n - 1); 0 when n == 1
  double min = 0.0;
  double max = 0.0;
};

// Throws EmptyInput.
Descriptive descriptive(std::span<const double> values);

// 1-based ranks with ties sharing the average of their positions.
std::vector<double> midranks(std::span<const double> values);

// Subjects (rows) by treatments (columns); rectangular, row-major.
class PairedMatrix {
 public:
  PairedMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols, 0.0) {}
  // Throws std::invalid_argument for ragged input.
  static PairedMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {cells_.data() + r * cols_, cols_}; }
  std::vector<double> column(std::size_t c) const;

 private:
  std::size_t rows_, cols_;
  std::vector<double> cells_;
};

struct TestReport {
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<double> effect_size;
  double df1 = 0.0;
  double df2 = 0.0;  // F tests only
  std::vector<std::size_t> group_sizes;
};

// Tie-corrected Friedman chi-square with k - 1 df. Effect size is Cohen's f
// from Kendall's W = chi2 / (n (k - 1)), f = sqrt(W / (1 - W)); absent when
// W == 1. Throws DegenerateInput for fewer than 2 rows or columns.
TestReport friedman_test(const PairedMatrix& m);

// Mean within-row rank per treatment.
std::vector<double> mean_ranks(const PairedMatrix& m);

struct PairwiseComparison {
  std::size_t a = 0;
  std::size_t b = 0;
  double mean_rank_a = 0.0;
  double mean_rank_b = 0.0;
  double q = 0.0;  // |Ra - Rb| / sqrt(k (k + 1) / (12 n))
  double p_value = 1.0;
  std::optional<double> cohens_d;  // pooled, column a minus column b
};

// Nemenyi comparisons for every pair a < b, p from the studentized range
// with k groups and infinite df.
std::vector<PairwiseComparison> nemenyi_posthoc(const PairedMatrix& m);

// Tie-corrected H, chi-square with g - 1 df.
TestReport kruskal_wallis(std::span<const std::vector<double>> groups);

// Brown-Forsythe: one-way ANOVA on absolute deviations from group medians.
TestReport variance_homogeneity(std::span<const std::vector<double>> groups);

// (mean a - mean b) / pooled sample std. Throws DegenerateInput for sizes
// below 2, ZeroVariance when the pooled std is 0.
double cohens_d(std::span<const double> a, std::span<const double> b);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares. Throws DegenerateInput for mismatched or short
// input, ConstantX when x has no spread.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace knowsearch

#include "knowsearch/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "knowsearch/distributions.hpp"
#include "knowsearch/errors.hpp"

namespace knowsearch {

namespace {

double mean_of(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double sample_variance(std::span<const double> v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

// Sum over tie groups of t^3 - t.
double tie_term(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  double sum = 0.0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const double t = static_cast<double>(j - i);
    sum += t * t * t - t;
    i = j;
  }
  return sum;
}

void check_groups(std::span<const std::vector<double>> groups, std::size_t min_size) {
  if (groups.size() < 2) throw DegenerateInput("need at least two groups");
  for (const auto& g : groups) {
    if (g.size() < min_size) throw DegenerateInput("group has fewer than " + std::to_string(min_size) + " values");
  }
}

}  // namespace

Descriptive descriptive(std::span<const double> values) {
  if (values.empty()) throw EmptyInput();
  Descriptive d;
  d.n = values.size();
  d.mean = mean_of(values);
  d.median = median_of({values.begin(), values.end()});
  d.std = d.n > 1 ? std::sqrt(sample_variance(values)) : 0.0;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  d.min = *lo;
  d.max = *hi;
  return d;
}

std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + 1 + j);  // average of positions i+1 .. j
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = r;
    i = j;
  }
  return ranks;
}

PairedMatrix PairedMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  PairedMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged paired matrix");
    std::copy(rows[r].begin(), rows[r].end(), m.cells_.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return m;
}

std::vector<double> PairedMatrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

std::vector<double> mean_ranks(const PairedMatrix& m) {
  std::vector<double> sums(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto ranks = midranks(m.row(r));
    for (std::size_t c = 0; c < m.cols(); ++c) sums[c] += ranks[c];
  }
  for (auto& s : sums) s /= static_cast<double>(m.rows());
  return sums;
}

TestReport friedman_test(const PairedMatrix& m) {
  if (m.rows() < 2 || m.cols() < 2) throw DegenerateInput("Friedman test needs at least 2 subjects and 2 treatments");
  const auto n = static_cast<double>(m.rows());
  const auto k = static_cast<double>(m.cols());

  std::vector<double> rank_sums(m.cols(), 0.0);
  double ties = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto ranks = midranks(m.row(r));
    for (std::size_t c = 0; c < m.cols(); ++c) rank_sums[c] += ranks[c];
    ties += tie_term(m.row(r));
  }
  double ss = 0.0;
  for (double rs : rank_sums) ss += rs * rs;

  TestReport rep;
  rep.df1 = k - 1.0;
  rep.group_sizes.assign(m.cols(), m.rows());
  const double denom = 1.0 - ties / (n * (k * k * k - k));
  if (denom <= 0.0) {
    rep.statistic = 0.0;
    rep.p_value = 1.0;
    rep.effect_size = 0.0;
    return rep;
  }
  const double chi2 = std::max(0.0, (12.0 / (n * k * (k + 1.0)) * ss - 3.0 * n * (k + 1.0)) / denom);
  rep.statistic = chi2;
  rep.p_value = dist::chi_square_sf(chi2, k - 1.0);
  const double w = chi2 / (n * (k - 1.0));
  if (w < 1.0) rep.effect_size = std::sqrt(w / (1.0 - w));
  return rep;
}

std::vector<PairwiseComparison> nemenyi_posthoc(const PairedMatrix& m) {
  if (m.rows() < 2 || m.cols() < 2) throw DegenerateInput("Nemenyi test needs at least 2 subjects and 2 treatments");
  const auto n = static_cast<double>(m.rows());
  const auto k = static_cast<double>(m.cols());
  const auto ranks = mean_ranks(m);
  const double se = std::sqrt(k * (k + 1.0) / (12.0 * n));

  std::vector<PairwiseComparison> out;
  for (std::size_t a = 0; a < m.cols(); ++a) {
    for (std::size_t b = a + 1; b < m.cols(); ++b) {
      PairwiseComparison pc;
      pc.a = a;
      pc.b = b;
      pc.mean_rank_a = ranks[a];
      pc.mean_rank_b = ranks[b];
      pc.q = std::abs(ranks[a] - ranks[b]) / se;
      pc.p_value = dist::studentized_range_sf(pc.q, static_cast<int>(m.cols()));
      try {
        const auto ca = m.column(a), cb = m.column(b);
        pc.cohens_d = cohens_d(ca, cb);
      } catch (const StatsError&) {
        pc.cohens_d.reset();
      }
      out.push_back(pc);
    }
  }
  return out;
}

TestReport kruskal_wallis(std::span<const std::vector<double>> groups) {
  check_groups(groups, 1);
  std::vector<double> pooled;
  for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
  const auto n_total = static_cast<double>(pooled.size());
  const auto ranks = midranks(pooled);

  TestReport rep;
  rep.df1 = static_cast<double>(groups.size()) - 1.0;
  double sum = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double rs = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) rs += ranks[offset + i];
    sum += rs * rs / static_cast<double>(g.size());
    offset += g.size();
    rep.group_sizes.push_back(g.size());
  }
  const double denom = 1.0 - tie_term(pooled) / (n_total * n_total * n_total - n_total);
  if (denom <= 0.0) {
    rep.statistic = 0.0;
    rep.p_value = 1.0;
    return rep;
  }
  const double h = std::max(0.0, (12.0 / (n_total * (n_total + 1.0)) * sum - 3.0 * (n_total + 1.0)) / denom);
  rep.statistic = h;
  rep.p_value = dist::chi_square_sf(h, rep.df1);
  return rep;
}

TestReport variance_homogeneity(std::span<const std::vector<double>> groups) {
  check_groups(groups, 2);
  std::vector<std::vector<double>> dev;
  std::size_t n_total = 0;
  for (const auto& g : groups) {
    const double med = median_of(g);
    auto& d = dev.emplace_back();
    for (double x : g) d.push_back(std::abs(x - med));
    n_total += g.size();
  }
  double grand = 0.0;
  for (const auto& d : dev) grand += std::accumulate(d.begin(), d.end(), 0.0);
  grand /= static_cast<double>(n_total);

  double between = 0.0, within = 0.0;
  TestReport rep;
  for (const auto& d : dev) {
    const double m = mean_of(d);
    between += static_cast<double>(d.size()) * (m - grand) * (m - grand);
    for (double z : d) within += (z - m) * (z - m);
    rep.group_sizes.push_back(d.size());
  }
  rep.df1 = static_cast<double>(groups.size()) - 1.0;
  rep.df2 = static_cast<double>(n_total - groups.size());
  if (within == 0.0) {
    rep.statistic = between == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    rep.p_value = between == 0.0 ? 1.0 : 0.0;
    return rep;
  }
  rep.statistic = (between / rep.df1) / (within / rep.df2);
  rep.p_value = dist::f_sf(rep.statistic, rep.df1, rep.df2);
  return rep;
}

double cohens_d(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw DegenerateInput("Cohen's d needs at least 2 values per sample");
  const auto na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double pooled =
      std::sqrt(((na - 1.0) * sample_variance(a) + (nb - 1.0) * sample_variance(b)) / (na + nb - 2.0));
  if (pooled == 0.0) throw ZeroVariance();
  return (mean_of(a) - mean_of(b)) / pooled;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DegenerateInput("linear fit needs two equal-length samples of size >= 2");
  const double mx = mean_of(x), my = mean_of(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConstantX();
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

}  // namespace knowsearch

#pragma once

namespace knowsearch::dist {

// Regularized lower/upper incomplete gamma functions P(a, x), Q(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double beta_i(double x, double a, double b);

double normal_cdf(double z);

// Upper tail probabilities.
double chi_square_sf(double x, double df);
double f_sf(double x, double df1, double df2);

// Distribution of the range of k iid standard normals (studentized range
// with infinite degrees of freedom), by numeric integration.
double studentized_range_cdf(double q, int k);
double studentized_range_sf(double q, int k);

}  // namespace knowsearch::dist

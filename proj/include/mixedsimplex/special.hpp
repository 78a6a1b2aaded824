#pragma once

#include <span>
#include <vector>

namespace mixedsimplex {

double normal_pdf(double x, double mean = 0.0, double sigma = 1.0);
double normal_cdf(double x);

/// Gamma function; exact for integer arguments up to 23.
double gamma_fn(double x);
double log_factorial(int n);
double log_binomial(int n, int k);

double logsumexp(std::span<const double> v);
/// 0 log 0 := 0.
double xlogx(double x);

}  // namespace mixedsimplex

#pragma once

// Thin wrappers over Boost.Math so the rest of the library never touches
// Boost headers directly.

namespace ivlingam::detail {

double normal_cdf(double z);
double normal_sf(double z);
double normal_quantile(double p);
double chi_squared_sf(double x, double df);
double f_sf(double x, double df1, double df2);
double student_t_sf(double x, double df);

}  // namespace ivlingam::detail

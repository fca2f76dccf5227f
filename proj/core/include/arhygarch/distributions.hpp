#pragma once

#include "arhygarch/rng.hpp"

namespace arhyg {

/// Log-density at z of the unit-variance Student-t with nu > 2 degrees of
/// freedom:  -A(nu) - log(pi (nu-2))/2 - (nu+1)/2 * log(1 + z^2/(nu-2)),
/// A(nu) = lgamma(nu/2) - lgamma((nu+1)/2).
double std_t_logpdf(double z, double nu);

/// Log-density at u of N(0, sigma2).
double normal_logpdf(double u, double sigma2);

/// Draw from the unit-variance Student-t: standard t(nu) scaled by
/// sqrt((nu-2)/nu), t(nu) itself formed as normal / sqrt(chi2(nu)/nu).
double std_t_sample(RngStream& rng, double nu);

/// Draw from N(0, sigma2).
double normal_sample(RngStream& rng, double sigma2);

/// Gamma(shape, 1) draw by Marsaglia-Tsang squeeze; shape >= 1 required here
/// (the chi-square shapes used by the t sampler satisfy nu/2 > 1).
double gamma_sample(RngStream& rng, double shape);

/// Chi-square draw with real-valued nu > 2 degrees of freedom.
double chisq_sample(RngStream& rng, double nu);

}  // namespace arhyg

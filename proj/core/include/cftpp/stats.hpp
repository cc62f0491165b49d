#pragma once

#include <span>
#include <vector>

namespace cftpp::stats {

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // unbiased, n >= 2

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile, p in (0,1). Accurate to near machine precision
/// (rational approximation plus one Halley refinement).
double normal_quantile(double p);

/// Regularized lower/upper incomplete gamma functions P(a,x), Q(a,x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

/// Survival function of the chi-squared distribution.
double chi_squared_sf(double statistic, double dof);

/// Kolmogorov distribution survival function Q(t) = 2 sum (-1)^{k-1} e^{-2k^2t^2}.
double kolmogorov_sf(double t);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test (asymptotic p-value).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// One-sample KS test against a CDF evaluated at the sample points.
template <typename Cdf>
KsResult ks_one_sample(std::vector<double> xs, Cdf&& cdf);

/// Two-sided z-test p-value for a difference in means.
double two_sample_z_pvalue(double mean_a, double var_a, std::size_t n_a,
                           double mean_b, double var_b, std::size_t n_b);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

namespace detail {
KsResult ks_finish(double d, double n_effective);
void sort_in_place(std::vector<double>& xs);
}  // namespace detail

template <typename Cdf>
KsResult ks_one_sample(std::vector<double> xs, Cdf&& cdf) {
    detail::sort_in_place(xs);
    const std::size_t n = xs.size();
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(xs[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, f - lo, hi - f});
    }
    return detail::ks_finish(d, static_cast<double>(n));
}

}  // namespace cftpp::stats

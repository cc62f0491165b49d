#include "cftpp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cftpp::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) {
        throw std::invalid_argument("mean: empty input");
    }
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    if (xs.size() < 2) {
        throw std::invalid_argument("variance: need at least two samples");
    }
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return acc / static_cast<double>(xs.size() - 1);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace {

// Acklam's rational approximation for the normal quantile.
double normal_quantile_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p must lie in (0,1)");
    }
    double x = normal_quantile_approx(p);
    // One Halley step against the exact CDF.
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

namespace {

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 1000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_continued_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) {
        throw std::invalid_argument("regularized_gamma_p: invalid arguments");
    }
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) {
        throw std::invalid_argument("regularized_gamma_q: invalid arguments");
    }
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_continued_fraction(a, x);
}

double chi_squared_sf(double statistic, double dof) {
    if (statistic <= 0.0) return 1.0;
    return regularized_gamma_q(dof / 2.0, statistic / 2.0);
}

double kolmogorov_sf(double t) {
    if (t <= 0.0) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace detail {

void sort_in_place(std::vector<double>& xs) { std::sort(xs.begin(), xs.end()); }

KsResult ks_finish(double d, double n_effective) {
    const double sqrt_n = std::sqrt(n_effective);
    // Stephens' small-sample correction.
    const double t = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    return KsResult{d, kolmogorov_sf(t)};
}

}  // namespace detail

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_two_sample: empty sample");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < m && j < n) {
        const double x = std::min(a[i], b[j]);
        while (i < m && a[i] <= x) ++i;
        while (j < n && b[j] <= x) ++j;
        const double fa = static_cast<double>(i) / m;
        const double fb = static_cast<double>(j) / n;
        d = std::max(d, std::abs(fa - fb));
    }
    const double n_eff = static_cast<double>(m) * n / static_cast<double>(m + n);
    return detail::ks_finish(d, n_eff);
}

double two_sample_z_pvalue(double mean_a, double var_a, std::size_t n_a,
                           double mean_b, double var_b, std::size_t n_b) {
    const double se = std::sqrt(var_a / n_a + var_b / n_b);
    if (se == 0.0) {
        return mean_a == mean_b ? 1.0 : 0.0;
    }
    const double z = (mean_a - mean_b) / se;
    return 2.0 * (1.0 - normal_cdf(std::abs(z)));
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw std::invalid_argument("pearson_correlation: size mismatch");
    }
    const double ma = mean(a);
    const double mb = mean(b);
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace cftpp::stats

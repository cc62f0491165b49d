#include <doctest.h>

#include <cmath>
#include <vector>

#include "cftpp/random.hpp"
#include "cftpp/stats.hpp"

using namespace cftpp;

TEST_SUITE("stats") {

TEST_CASE("normal cdf and quantile invert each other") {
    for (double p : {0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999}) {
        CHECK(stats::normal_cdf(stats::normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
    }
    CHECK(stats::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(stats::normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-6));
    CHECK_THROWS_AS((void)stats::normal_quantile(0.0), std::invalid_argument);
}

TEST_CASE("regularized gamma matches known chi-squared values") {
    // Chi-squared sf with 2 dof is exp(-x/2).
    for (double x : {0.5, 1.0, 3.0, 10.0}) {
        CHECK(stats::chi_squared_sf(x, 2.0) == doctest::Approx(std::exp(-x / 2.0)).epsilon(1e-10));
    }
    // P(a, x) + Q(a, x) = 1.
    for (double a : {0.5, 3.0, 17.5}) {
        for (double x : {0.2, 2.0, 25.0}) {
            CHECK(stats::regularized_gamma_p(a, x) + stats::regularized_gamma_q(a, x) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("kolmogorov sf endpoints") {
    CHECK(stats::kolmogorov_sf(0.0) == 1.0);
    CHECK(stats::kolmogorov_sf(10.0) < 1e-12);
    // Known value: Q(1.0) ~ 0.26999967.
    CHECK(stats::kolmogorov_sf(1.0) == doctest::Approx(0.2699996717).epsilon(1e-6));
}

TEST_CASE("two-sample KS accepts same-law samples and rejects shifted ones") {
    rng::Stream a = rng::Stream::root(5).child(1, 0);
    rng::Stream b = rng::Stream::root(5).child(1, 1);
    std::vector<double> xs(5000);
    std::vector<double> ys(5000);
    for (auto& x : xs) x = a.uniform();
    for (auto& y : ys) y = b.uniform();
    CHECK(stats::ks_two_sample(xs, ys).p_value > 0.001);

    for (auto& y : ys) y += 0.2;
    CHECK(stats::ks_two_sample(xs, ys).p_value < 1e-6);
}

TEST_CASE("z test on equal and unequal means") {
    CHECK(stats::two_sample_z_pvalue(0.0, 1.0, 10000, 0.0, 1.0, 10000) == doctest::Approx(1.0));
    CHECK(stats::two_sample_z_pvalue(0.0, 1.0, 10000, 1.0, 1.0, 10000) < 1e-12);
}

}  // TEST_SUITE

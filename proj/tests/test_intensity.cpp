#include <doctest.h>

#include <cmath>

#include "cftpp/intensity.hpp"
#include "cftpp/random.hpp"

using namespace cftpp;

TEST_SUITE("intensity") {

TEST_CASE("constant evaluates to its rate everywhere") {
    const IntensityModel model(ConstantIntensity{2.0});
    CHECK(model.evaluate(7.0) == 2.0);
    CHECK(model.upper_bound(10.0) == 2.0);
}

TEST_CASE("rbf kernel peak equals amplitude") {
    const IntensityModel model(
        RbfMixtureIntensity{{RbfComponent{1.0, 1.0, 3.0}}, RbfForm::gaussian});
    CHECK(model.evaluate(3.0) == doctest::Approx(1.0));
    CHECK(model.upper_bound(10.0) == doctest::Approx(1.0));
}

TEST_CASE("offspring branch kernel decays from the parent") {
    const IntensityModel model(
        BranchKernel{BranchKind::offspring, 2.0, HawkesParams{0.0, 1.0, 1.0}});
    CHECK(model.evaluate(3.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(model.evaluate(1.0) == 0.0);
    CHECK(model.upper_bound(10.0) == 1.0);
}

TEST_CASE("background branch kernel is the baseline") {
    const IntensityModel model(
        BranchKernel{BranchKind::background, 0.0, HawkesParams{1.5, 1.0, 1.0}});
    CHECK(model.evaluate(0.0) == 1.5);
    CHECK(model.evaluate(9.0) == 1.5);
}

TEST_CASE("sir edge kernel window is half open") {
    const SirEdgeKernel kernel(0.25, 1.0, 4.0);
    const IntensityModel model(kernel);
    CHECK(model.evaluate(0.5) == 0.0);
    CHECK(model.evaluate(1.0) == 0.25);
    CHECK(model.evaluate(3.999) == 0.25);
    CHECK(model.evaluate(4.0) == 0.0);
    CHECK(model.upper_bound(5.0) == 0.25);
}

TEST_CASE("sir edge kernel rate switch") {
    const SirEdgeKernel kernel(0.25, 1.0, 4.0, 0.0, 2.5);
    const IntensityModel model(kernel);
    CHECK(model.evaluate(2.0) == 0.25);
    CHECK(model.evaluate(2.5) == 0.0);
    CHECK(model.evaluate(3.0) == 0.0);
}

TEST_CASE("upper bound dominates evaluation on a randomized grid") {
    rng::Stream stream = rng::Stream::root(99).child(1, 0);
    for (int trial = 0; trial < 20; ++trial) {
        RbfMixtureIntensity mixture;
        const int k = 1 + static_cast<int>(stream.uniform() * 4);
        for (int j = 0; j < k; ++j) {
            mixture.components.push_back(RbfComponent{stream.uniform() * 3.0,
                                                      stream.uniform() * 2.0,
                                                      stream.uniform() * 8.0});
        }
        const IntensityModel model(mixture);
        const double horizon = 10.0;
        const double bound = model.upper_bound(horizon);
        for (int g = 0; g <= 10000; ++g) {
            const double t = horizon * g / 10000.0;
            CHECK(model.evaluate(t) <= bound + 1e-12);
        }
    }
}

TEST_CASE("hawkes total intensity superposes branch kernels") {
    const HawkesParams params{1.0, 1.0, 1.0};
    const EventSequence history({1.0}, 10.0);
    CHECK(hawkes_total_intensity(params, history, 2.0) ==
          doctest::Approx(1.0 + std::exp(-1.0)));
    CHECK(hawkes_total_intensity(params, EventSequence({}, 10.0), 2.0) == 1.0);

    // Superposition identity against explicit branch kernels.
    const EventSequence longer({0.5, 1.2, 3.7}, 10.0);
    const double t = 5.0;
    double total = IntensityModel(BranchKernel{BranchKind::background, 0.0, params})
                       .evaluate(t);
    for (double ti : longer.times) {
        total += IntensityModel(BranchKernel{BranchKind::offspring, ti, params})
                     .evaluate(t);
    }
    CHECK(hawkes_total_intensity(params, longer, t) ==
          doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("invalid parameters are rejected at construction") {
    CHECK_THROWS_AS(IntensityModel(ConstantIntensity{-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(
        IntensityModel(RbfMixtureIntensity{{RbfComponent{-0.1, 1.0, 0.0}}}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        IntensityModel(BranchKernel{BranchKind::offspring, 0.0, HawkesParams{1.0, 1.0, 0.0}}),
        std::invalid_argument);
}

}  // TEST_SUITE

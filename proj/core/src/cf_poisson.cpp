#include "cftpp/cf_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cftpp {

EventSequence sample_plausible_rejections(const IntensityFn& lambda_m,
                                          const EventSequence& observed,
                                          double lambda_max, double horizon,
                                          rng::Stream& stream) {
    const IntensityFn complement = [&lambda_m, lambda_max](double t) {
        const double value = lambda_m(t);
        if (value > lambda_max * (1.0 + 1e-9)) {
            throw std::domain_error("sample_plausible_rejections: dominating rate violated");
        }
        return std::max(lambda_max - value, 0.0);
    };
    ThinningRecord run = lewis_sample(complement, lambda_max, horizon, stream);

    std::vector<double> times = std::move(run.accepted.times);
    double previous = -1.0;
    for (double& t : times) {
        while (observed.contains(t) || t <= previous) {
            t = std::nextafter(t, std::numeric_limits<double>::infinity());
        }
        previous = t;
    }
    // A nudge past the horizon is possible only if a candidate equals it.
    while (!times.empty() && times.back() > horizon) times.pop_back();
    return EventSequence(std::move(times), horizon);
}

EventSequence counterfactual_poisson(const IntensityFn& lambda_m,
                                     const IntensityFn& lambda_cf,
                                     const EventSequence& observed,
                                     double lambda_max, double horizon,
                                     const scm::CounterfactualMode& mode,
                                     rng::Stream& stream) {
    if (observed.horizon != horizon) {
        throw std::invalid_argument("counterfactual_poisson: observed horizon mismatch");
    }
    EventSequence rejected =
        sample_plausible_rejections(lambda_m, observed, lambda_max, horizon, stream);
    const ThinningRecord record{observed, std::move(rejected), lambda_max};
    return counterfactual_acceptance(lambda_m, lambda_cf, record, mode, stream);
}

}  // namespace cftpp

#include "cftpp/thinning.hpp"

#include <cmath>
#include <stdexcept>

namespace cftpp {

namespace {

double checked_rate(const IntensityFn& intensity, double t, double lambda_max) {
    const double value = intensity(t);
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw std::domain_error("thinning: intensity must be finite and nonnegative");
    }
    if (value > lambda_max * (1.0 + 1e-9)) {
        throw std::domain_error("thinning: dominating rate violated");
    }
    return value;
}

}  // namespace

ThinningRecord lewis_sample(const IntensityFn& intensity, double lambda_max,
                            double horizon, rng::Stream& stream) {
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("lewis_sample: horizon must be positive");
    }
    if (lambda_max < 0.0) {
        throw std::invalid_argument("lewis_sample: lambda_max must be nonnegative");
    }
    std::vector<double> accepted;
    std::vector<double> rejected;
    double s = 0.0;
    while (lambda_max > 0.0) {
        s += -std::log(stream.uniform()) / lambda_max;
        if (s > horizon) break;
        const double rate = checked_rate(intensity, s, lambda_max);
        if (stream.uniform() <= rate / lambda_max) {
            accepted.push_back(s);
        } else {
            rejected.push_back(s);
        }
    }
    return ThinningRecord{EventSequence(std::move(accepted), horizon),
                          EventSequence(std::move(rejected), horizon),
                          lambda_max == 0.0 ? 1.0 : lambda_max};
}

EventSequence counterfactual_acceptance(const IntensityFn& lambda_m,
                                        const IntensityFn& lambda_cf,
                                        const ThinningRecord& record,
                                        const scm::CounterfactualMode& mode,
                                        rng::Stream& stream) {
    const double horizon = record.accepted.horizon;
    if (record.rejected.horizon != horizon) {
        throw std::invalid_argument("counterfactual_acceptance: horizons differ");
    }
    const double lambda_max = record.lambda_max;
    const std::vector<double>& acc = record.accepted.times;
    const std::vector<double>& rej = record.rejected.times;

    std::vector<double> out;
    out.reserve(acc.size());
    std::size_t ia = 0;
    std::size_t ir = 0;
    while (ia < acc.size() || ir < rej.size()) {
        bool take_accepted;
        if (ia == acc.size()) {
            take_accepted = false;
        } else if (ir == rej.size()) {
            take_accepted = true;
        } else {
            take_accepted = acc[ia] < rej[ir];
        }
        const double t = take_accepted ? acc[ia++] : rej[ir++];
        const double m_t = checked_rate(lambda_m, t, lambda_max);
        const double cf_t = checked_rate(lambda_cf, t, lambda_max);
        if (scm::counterfactual_sample(take_accepted, m_t, cf_t, lambda_max, mode,
                                       stream)) {
            out.push_back(t);
        }
    }
    return EventSequence(std::move(out), horizon);
}

}  // namespace cftpp

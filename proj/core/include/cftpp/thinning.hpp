#pragma once

#include "cftpp/event_sequence.hpp"
#include "cftpp/gumbel_scm.hpp"
#include "cftpp/intensity.hpp"
#include "cftpp/random.hpp"

namespace cftpp {

/// Paired accepted/rejected candidate sets from one thinning run under a
/// known dominating rate. The record is the unit the counterfactual pass
/// abduces from.
struct ThinningRecord {
    EventSequence accepted;
    EventSequence rejected;
    double lambda_max = 1.0;
};

/// Samples candidate times from a homogeneous process at lambda_max via
/// exponential gaps and accepts each with probability
/// intensity(t) / lambda_max. Two uniforms are consumed per candidate.
/// Throws std::domain_error if the intensity exceeds lambda_max at a
/// candidate time.
ThinningRecord lewis_sample(const IntensityFn& intensity, double lambda_max,
                            double horizon, rng::Stream& stream);

/// Re-decides every candidate in the record under the counterfactual
/// intensity via the per-decision SCM and returns the accepted times.
EventSequence counterfactual_acceptance(const IntensityFn& lambda_m,
                                        const IntensityFn& lambda_cf,
                                        const ThinningRecord& record,
                                        const scm::CounterfactualMode& mode,
                                        rng::Stream& stream);

}  // namespace cftpp

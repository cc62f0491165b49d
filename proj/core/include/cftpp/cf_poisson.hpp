#pragma once

#include "cftpp/thinning.hpp"

namespace cftpp {

/// Samples a plausible rejected-candidate set for an observed sequence: a
/// draw from an inhomogeneous process with rate lambda_max - lambda_m(t) on
/// [0, horizon]. A sampled time colliding exactly with an observed time is
/// nudged up by the smallest representable increment so the merged candidate
/// set stays strictly increasing.
EventSequence sample_plausible_rejections(const IntensityFn& lambda_m,
                                          const EventSequence& observed,
                                          double lambda_max, double horizon,
                                          rng::Stream& stream);

/// Counterfactual sampling from an observed inhomogeneous-process sequence:
/// merges the observed events with freshly sampled plausible rejections and
/// re-decides every candidate under lambda_cf via the per-decision SCM.
EventSequence counterfactual_poisson(const IntensityFn& lambda_m,
                                     const IntensityFn& lambda_cf,
                                     const EventSequence& observed,
                                     double lambda_max, double horizon,
                                     const scm::CounterfactualMode& mode,
                                     rng::Stream& stream);

}  // namespace cftpp

#pragma once

#include "cftpp/cf_poisson.hpp"

namespace cftpp {

/// Cause of each event in a sequence: index of the triggering earlier event,
/// or -1 for the background process.
struct BranchAssignment {
    std::vector<int> parent;
};

struct HawkesRealization {
    EventSequence events;
    std::vector<int> parent;  // parallel to events.times; -1 = background
    bool truncated = false;
};

/// Provenance of a counterfactual event relative to the observed sequence.
enum class CfOrigin { kept, background_new, offspring_of_kept, offspring_of_new };

struct HawkesCounterfactual {
    EventSequence events;
    std::vector<CfOrigin> origins;  // parallel to events.times
    bool truncated = false;
};

struct HawkesOptions {
    scm::CounterfactualMode mode = scm::CounterfactualMode::exact();
    std::size_t event_cap = 100000;
};

/// Samples a linear Hawkes realization via its branching decomposition:
/// background events at rate mu, then offspring of each event at rate
/// alpha * exp(-omega (t - t_parent)), processed in chronological order.
/// Requires lambda_max >= max(mu, alpha).
HawkesRealization sample_hawkes(const HawkesParams& params, double lambda_max,
                                double horizon, rng::Stream& stream,
                                std::size_t event_cap = 100000);

/// Assigns each observed event a cause: background, or an earlier event k,
/// with probability proportional to the branch intensity at the event time.
BranchAssignment assign(const EventSequence& observed, const HawkesParams& params_m,
                        rng::Stream& stream);

/// Counterfactual Hawkes sampling from an observed sequence: assigns
/// parentage under params_m, runs the per-branch Poisson counterfactual on the
/// background and on each surviving event's offspring branch in chronological
/// order, then recursively samples fresh offspring of counterfactual-only
/// events under params_cf. Requires
/// lambda_max >= max(mu_m, mu_cf, alpha_m, alpha_cf).
HawkesCounterfactual counterfactual_hawkes(const HawkesParams& params_m,
                                           const HawkesParams& params_cf,
                                           const EventSequence& observed,
                                           double lambda_max, double horizon,
                                           const HawkesOptions& options,
                                           rng::Stream& stream);

const char* to_string(CfOrigin origin);

}  // namespace cftpp

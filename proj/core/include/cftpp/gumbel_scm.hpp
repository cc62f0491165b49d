#pragma once

#include "cftpp/random.hpp"

namespace cftpp::scm {

/// One recorded thinning decision: candidate time, the accept flag drawn
/// under the factual intensity, and the dominating rate in force.
struct ThinningDecision {
    double t = 0.0;
    bool accepted = false;
    double lambda_obs = 0.0;
    double lambda_max = 1.0;
};

/// Gumbel noise pair abduced from a decision. By construction the argmax of
/// log p(x | lambda_obs) + u_x over x in {0,1} recovers the observed flag.
struct PosteriorNoise {
    double u0 = 0.0;
    double u1 = 0.0;
};

/// Acceptance probability lambda / lambda_max. Throws if lambda_max <= 0 or
/// lambda exceeds lambda_max.
double thinning_prob(double lambda, double lambda_max);

/// Draws the accept flag as the argmax of log p(x) + Gumbel noise. Marginally
/// Bernoulli(lambda / lambda_max). Score ties resolve to accept.
bool sample_factual(double lambda, double lambda_max, rng::Stream& stream);

/// Samples the noise posterior given an observed decision, by top-down
/// truncated-Gumbel construction. Throws std::domain_error if the observation
/// has zero likelihood (accepted with lambda_obs = 0, or rejected with
/// lambda_obs = lambda_max).
PosteriorNoise abduct_noise(const ThinningDecision& decision, rng::Stream& stream);

/// Re-runs the decision with fixed noise under a (counterfactual) intensity.
bool argmax_with_noise(double lambda, double lambda_max, const PosteriorNoise& noise);

/// Closed-form counterfactual acceptance probability
/// P(X' = 1 | X = x_obs, lambda_obs; do(lambda = lambda_cf)):
///   x_obs = 0: 0 if lambda_cf <= lambda_obs,
///              else (lambda_cf - lambda_obs) / (lambda_max - lambda_obs);
///   x_obs = 1: 1 if lambda_cf >= lambda_obs, else lambda_cf / lambda_obs.
double counterfactual_prob_exact(bool x_obs, double lambda_obs, double lambda_cf,
                                 double lambda_max);

/// How counterfactual flags are drawn: from the closed form, or by averaging
/// argmax indicators over noise_samples posterior draws (the Monte-Carlo
/// estimator) and then drawing a Bernoulli of the estimate.
struct CounterfactualMode {
    enum class Kind { exact, monte_carlo };
    Kind kind = Kind::exact;
    int noise_samples = 100;

    static CounterfactualMode exact() { return {}; }
    static CounterfactualMode monte_carlo(int k) {
        return {Kind::monte_carlo, k};
    }
};

/// Draws the counterfactual accept flag for one decision.
bool counterfactual_sample(bool x_obs, double lambda_obs, double lambda_cf,
                           double lambda_max, const CounterfactualMode& mode,
                           rng::Stream& stream);

}  // namespace cftpp::scm

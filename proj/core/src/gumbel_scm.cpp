#include "cftpp/gumbel_scm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cftpp::scm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack for intensities computed in floating point landing a hair above the
// dominating rate.
constexpr double kBoundSlack = 1.0 + 1e-9;

double checked_prob(double lambda, double lambda_max) {
    if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
        throw std::invalid_argument("thinning: lambda_max must be positive and finite");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("thinning: lambda must be finite and nonnegative");
    }
    if (lambda > lambda_max * kBoundSlack) {
        throw std::domain_error("thinning: intensity exceeds dominating rate");
    }
    return std::min(lambda / lambda_max, 1.0);
}

double log_or_neg_inf(double p) { return p > 0.0 ? std::log(p) : -kInf; }

double log_add_exp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(-std::abs(a - b)));
}

/// Gumbel(loc) truncated to be <= bound, via inverse CDF.
double truncated_gumbel(double loc, double bound, double u) {
    return loc - log_add_exp(loc - bound, std::log(-std::log(u)));
}

}  // namespace

double thinning_prob(double lambda, double lambda_max) {
    return checked_prob(lambda, lambda_max);
}

bool sample_factual(double lambda, double lambda_max, rng::Stream& stream) {
    const double p = checked_prob(lambda, lambda_max);
    const double score1 = log_or_neg_inf(p) + stream.gumbel();
    const double score0 = log_or_neg_inf(1.0 - p) + stream.gumbel();
    return score1 >= score0;
}

PosteriorNoise abduct_noise(const ThinningDecision& decision, rng::Stream& stream) {
    const double p = checked_prob(decision.lambda_obs, decision.lambda_max);
    const double p_obs = decision.accepted ? p : 1.0 - p;
    if (p_obs <= 0.0) {
        throw std::domain_error("abduct_noise: observation has zero likelihood");
    }
    const double loc_obs = std::log(p_obs);
    const double loc_other = log_or_neg_inf(1.0 - p_obs);

    // The max of the two scores is Gumbel(log(p + (1-p))) = Gumbel(0) and is
    // attained by the observed outcome; the other score is a Gumbel at its own
    // location truncated above at the max.
    const double max_score = stream.gumbel();
    const double u_trunc = stream.uniform();

    const double noise_obs = max_score - loc_obs;
    double noise_other;
    if (loc_other == -kInf) {
        // The losing outcome had probability zero, so the observation carries
        // no information about its noise: the posterior is the prior.
        noise_other = -std::log(-std::log(u_trunc));
    } else {
        noise_other = truncated_gumbel(loc_other, max_score, u_trunc) - loc_other;
    }

    return decision.accepted ? PosteriorNoise{noise_other, noise_obs}
                             : PosteriorNoise{noise_obs, noise_other};
}

bool argmax_with_noise(double lambda, double lambda_max, const PosteriorNoise& noise) {
    const double p = checked_prob(lambda, lambda_max);
    const double score1 = log_or_neg_inf(p) + noise.u1;
    const double score0 = log_or_neg_inf(1.0 - p) + noise.u0;
    return score1 >= score0;
}

double counterfactual_prob_exact(bool x_obs, double lambda_obs, double lambda_cf,
                                 double lambda_max) {
    checked_prob(lambda_obs, lambda_max);
    checked_prob(lambda_cf, lambda_max);
    lambda_obs = std::min(lambda_obs, lambda_max);
    lambda_cf = std::min(lambda_cf, lambda_max);
    if (x_obs) {
        if (lambda_cf >= lambda_obs) return 1.0;
        return lambda_cf / lambda_obs;
    }
    if (lambda_cf <= lambda_obs) return 0.0;
    return (lambda_cf - lambda_obs) / (lambda_max - lambda_obs);
}

bool counterfactual_sample(bool x_obs, double lambda_obs, double lambda_cf,
                           double lambda_max, const CounterfactualMode& mode,
                           rng::Stream& stream) {
    double p_flip;
    if (mode.kind == CounterfactualMode::Kind::exact) {
        p_flip = counterfactual_prob_exact(x_obs, lambda_obs, lambda_cf, lambda_max);
    } else {
        if (mode.noise_samples < 1) {
            throw std::invalid_argument("counterfactual_sample: noise_samples must be >= 1");
        }
        const ThinningDecision decision{0.0, x_obs, lambda_obs, lambda_max};
        long accepted = 0;
        for (int k = 0; k < mode.noise_samples; ++k) {
            const PosteriorNoise noise = abduct_noise(decision, stream);
            accepted += argmax_with_noise(lambda_cf, lambda_max, noise) ? 1 : 0;
        }
        p_flip = static_cast<double>(accepted) / mode.noise_samples;
    }
    return stream.uniform() < p_flip;
}

}  // namespace cftpp::scm

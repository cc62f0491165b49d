#pragma once

#include <functional>
#include <limits>
#include <variant>
#include <vector>

#include "cftpp/event_sequence.hpp"

namespace cftpp {

/// Evaluatable rate function; samplers only need pointwise evaluation.
using IntensityFn = std::function<double(double)>;

/// Homogeneous rate.
struct ConstantIntensity {
    double rate = 0.0;
};

struct RbfComponent {
    double phi = 0.0;    // amplitude
    double alpha = 0.0;  // width parameter
    double tau = 0.0;    // center
};

/// gaussian: phi * exp(-alpha (t - tau)^2); literal: phi * exp(-alpha (t - tau)).
enum class RbfForm { gaussian, literal };

/// Weighted combination of bump kernels.
struct RbfMixtureIntensity {
    std::vector<RbfComponent> components;
    RbfForm form = RbfForm::gaussian;
};

/// Linear self-exciting process parameters with exponential triggering
/// kernel g(t) = exp(-omega t) for t >= 0.
struct HawkesParams {
    double mu = 0.0;
    double alpha = 0.0;
    double omega = 1.0;
};

enum class BranchKind { background, offspring };

/// One branch of the self-exciting superposition: the background rate mu, or
/// the offspring rate alpha * g(t - parent_time) of an earlier event.
struct BranchKernel {
    BranchKind kind = BranchKind::background;
    double parent_time = 0.0;
    HawkesParams params;
};

/// Per-edge infection kernel: rate beta while the source is infectious,
/// zero elsewhere. The window is half-open: an instant exactly at
/// infectious_end is no longer infectious. An optional rate switch at
/// switch_time (to rate_after) models interventions that take effect
/// mid-outbreak.
struct SirEdgeKernel {
    double beta = 0.0;
    double infectious_start = 0.0;
    double infectious_end = 0.0;
    double rate_after = 0.0;
    double switch_time = std::numeric_limits<double>::infinity();

    SirEdgeKernel() = default;
    SirEdgeKernel(double beta_in, double start, double end)
        : beta(beta_in), infectious_start(start), infectious_end(end),
          rate_after(beta_in) {}
    SirEdgeKernel(double beta_in, double start, double end, double after,
                  double switch_at)
        : beta(beta_in), infectious_start(start), infectious_end(end),
          rate_after(after), switch_time(switch_at) {}
};

/// Value-semantic wrapper over the supported intensity families.
class IntensityModel {
public:
    using Variant = std::variant<ConstantIntensity, RbfMixtureIntensity,
                                 BranchKernel, SirEdgeKernel>;

    IntensityModel(ConstantIntensity m);      // NOLINT(google-explicit-constructor)
    IntensityModel(RbfMixtureIntensity m);    // NOLINT(google-explicit-constructor)
    IntensityModel(BranchKernel m);           // NOLINT(google-explicit-constructor)
    IntensityModel(SirEdgeKernel m);          // NOLINT(google-explicit-constructor)

    double evaluate(double t) const;

    /// Constant bound dominating evaluate() on [0, horizon].
    double upper_bound(double horizon) const;

    /// Evaluation as a plain callable for the samplers.
    IntensityFn fn() const;

    const Variant& value() const { return model_; }

private:
    Variant model_;
};

/// mu + alpha * sum_{t_i < t} exp(-omega (t - t_i)). History must be sorted.
double hawkes_total_intensity(const HawkesParams& params,
                              const EventSequence& history, double t);

}  // namespace cftpp

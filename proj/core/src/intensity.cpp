#include "cftpp/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cftpp {

namespace {

void require_finite_nonnegative(double v, const char* what) {
    if (!(std::isfinite(v) && v >= 0.0)) {
        throw std::invalid_argument(std::string(what) + " must be finite and nonnegative");
    }
}

void validate(const ConstantIntensity& m) {
    require_finite_nonnegative(m.rate, "ConstantIntensity.rate");
}

void validate(const RbfMixtureIntensity& m) {
    for (const RbfComponent& c : m.components) {
        require_finite_nonnegative(c.phi, "RbfComponent.phi");
        require_finite_nonnegative(c.alpha, "RbfComponent.alpha");
        require_finite_nonnegative(c.tau, "RbfComponent.tau");
    }
}

void validate_params(const HawkesParams& p) {
    require_finite_nonnegative(p.mu, "HawkesParams.mu");
    require_finite_nonnegative(p.alpha, "HawkesParams.alpha");
    if (!(std::isfinite(p.omega) && p.omega > 0.0)) {
        throw std::invalid_argument("HawkesParams.omega must be positive");
    }
}

void validate(const BranchKernel& m) {
    validate_params(m.params);
    if (m.kind == BranchKind::offspring) {
        require_finite_nonnegative(m.parent_time, "BranchKernel.parent_time");
    }
}

void validate(const SirEdgeKernel& m) {
    require_finite_nonnegative(m.beta, "SirEdgeKernel.beta");
    require_finite_nonnegative(m.rate_after, "SirEdgeKernel.rate_after");
    if (!(m.infectious_end >= m.infectious_start)) {
        throw std::invalid_argument("SirEdgeKernel: infectious_end before infectious_start");
    }
}

double evaluate_model(const ConstantIntensity& m, double /*t*/) { return m.rate; }

double evaluate_model(const RbfMixtureIntensity& m, double t) {
    double total = 0.0;
    for (const RbfComponent& c : m.components) {
        const double dt = t - c.tau;
        const double arg = m.form == RbfForm::gaussian ? c.alpha * dt * dt
                                                       : c.alpha * dt;
        total += c.phi * std::exp(-arg);
    }
    return total;
}

double evaluate_model(const BranchKernel& m, double t) {
    if (m.kind == BranchKind::background) {
        return m.params.mu;
    }
    if (t < m.parent_time) {
        return 0.0;
    }
    return m.params.alpha * std::exp(-m.params.omega * (t - m.parent_time));
}

double evaluate_model(const SirEdgeKernel& m, double t) {
    if (t < m.infectious_start || t >= m.infectious_end) {
        return 0.0;
    }
    return t < m.switch_time ? m.beta : m.rate_after;
}

double bound_model(const ConstantIntensity& m, double /*horizon*/) { return m.rate; }

double bound_model(const RbfMixtureIntensity& m, double horizon) {
    if (m.form == RbfForm::gaussian) {
        // Each component peaks at its amplitude; the sum of peaks dominates.
        double total = 0.0;
        for (const RbfComponent& c : m.components) total += c.phi;
        return total;
    }
    // The literal form phi * exp(-alpha (t - tau)) is decreasing in t, so the
    // maximum on [0, horizon] is at t = 0.
    double total = 0.0;
    for (const RbfComponent& c : m.components) {
        const double at_zero = c.phi * std::exp(c.alpha * c.tau);
        if (!std::isfinite(at_zero)) {
            throw std::domain_error("upper_bound: literal-form component overflows at t=0");
        }
        total += at_zero;
    }
    (void)horizon;
    return total;
}

double bound_model(const BranchKernel& m, double /*horizon*/) {
    return m.kind == BranchKind::background ? m.params.mu : m.params.alpha;
}

double bound_model(const SirEdgeKernel& m, double /*horizon*/) {
    return std::max(m.beta, m.rate_after);
}

}  // namespace

IntensityModel::IntensityModel(ConstantIntensity m) : model_(std::move(m)) {
    validate(std::get<ConstantIntensity>(model_));
}
IntensityModel::IntensityModel(RbfMixtureIntensity m) : model_(std::move(m)) {
    validate(std::get<RbfMixtureIntensity>(model_));
}
IntensityModel::IntensityModel(BranchKernel m) : model_(std::move(m)) {
    validate(std::get<BranchKernel>(model_));
}
IntensityModel::IntensityModel(SirEdgeKernel m) : model_(std::move(m)) {
    validate(std::get<SirEdgeKernel>(model_));
}

double IntensityModel::evaluate(double t) const {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("evaluate: t must be nonnegative");
    }
    return std::visit([t](const auto& m) { return evaluate_model(m, t); }, model_);
}

double IntensityModel::upper_bound(double horizon) const {
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("upper_bound: horizon must be positive");
    }
    return std::visit([horizon](const auto& m) { return bound_model(m, horizon); },
                      model_);
}

IntensityFn IntensityModel::fn() const {
    return [model = model_](double t) {
        return std::visit([t](const auto& m) { return evaluate_model(m, t); }, model);
    };
}

double hawkes_total_intensity(const HawkesParams& params,
                              const EventSequence& history, double t) {
    validate_params(params);
    if (!std::is_sorted(history.times.begin(), history.times.end())) {
        throw std::invalid_argument("hawkes_total_intensity: unsorted history");
    }
    double total = params.mu;
    for (double ti : history.times) {
        if (ti >= t) break;
        total += params.alpha * std::exp(-params.omega * (t - ti));
    }
    return total;
}

}  // namespace cftpp

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cftpp/hawkes.hpp"
#include "cftpp/intensity.hpp"
#include "cftpp/sir.hpp"

namespace cftpp::experiments {

/// Factual SIR study inputs: the network blueprint plus seed placement.
struct SirScenario {
    sir::Geography geography;
    sir::SbmProbabilities probs;
    std::vector<std::pair<std::string, int>> seeds;  // (district id, count)
    sir::SirParams params;
};

/// How the counterfactual process is derived from the factual one.
struct InterventionSpec {
    enum class Kind {
        none,                 // identity
        rbf_amplitude_shift,  // phi'_i = max(phi_i + eps, 0), eps ~ N(0, sigma)
        hawkes_alpha_shift,   // alpha' = max(alpha + eps, 0)
        explicit_poisson,
        explicit_hawkes,
        sir
    };
    Kind kind = Kind::none;
    double sigma = 0.5;
    int component = -1;  // rbf component to shift; -1 picks one at random
    bool per_realization = false;
    std::optional<IntensityModel> poisson_cf;
    std::optional<HawkesParams> hawkes_cf;
    std::optional<sir::Intervention> sir_intervention;
};

struct GroupingSpec {
    enum class Kind { tercile, explicit_bins };
    Kind kind = Kind::tercile;
    std::vector<double> edges;  // internal right-closed boundaries
};

struct ScenarioConfig {
    std::variant<IntensityModel, HawkesParams, SirScenario> factual =
        IntensityModel(ConstantIntensity{0.0});
    InterventionSpec intervention;
    double horizon = 5.0;
    int n_observed = 1000;
    int n_counterfactual = 100;
    std::uint64_t seed = 0;
    GroupingSpec grouping;
    int time_grid_points = 200;
    scm::CounterfactualMode mode = scm::CounterfactualMode::exact();
    bool share_rejections = false;
    std::size_t event_cap = 100000;
    int threads = 1;

    void validate() const;
};

struct GroupSummary {
    std::string name;
    double count_low = 0.0;   // observed-count range covered by the group
    double count_high = 0.0;
    std::vector<std::size_t> members;  // factual realization indices
    double mean_observed_final = 0.0;
    double mean_cf_final = 0.0;
    double relative_change_final = 0.0;
    std::vector<double> mean_factual;  // curves over the time grid
    std::vector<double> mean_cf;
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<double> rel_diff;
};

struct ScenarioResult {
    std::vector<double> time_grid;
    std::vector<GroupSummary> groups;
    std::vector<std::size_t> observed_counts;           // per factual realization
    std::vector<std::vector<double>> observed_times;    // point-process kinds
    std::vector<std::vector<std::size_t>> cf_final_counts;  // [factual][replicate]
    std::size_t truncated_realizations = 0;
    // SIR extras (empty for point-process kinds).
    std::vector<sir::Outbreak> observed_outbreaks;
    std::vector<std::string> district_ids;
    std::vector<std::size_t> observed_by_district;
    std::vector<double> cf_mean_by_district;
    std::vector<double> cf_lo_by_district;
    std::vector<double> cf_hi_by_district;
    double wall_seconds = 0.0;
};

/// Runs the full factual-sampling / intervention / counterfactual-replication
/// pipeline, groups factual realizations by event count, and aggregates
/// per-group trajectory curves with bootstrap bands. Deterministic for a
/// given config regardless of thread count.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// Percentile bootstrap interval for the mean of `samples`.
std::pair<double, double> bootstrap_ci(std::span<const double> samples,
                                       double level, int n_resamples,
                                       rng::Stream& stream);

}  // namespace cftpp::experiments

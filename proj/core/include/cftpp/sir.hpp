#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "cftpp/gumbel_scm.hpp"
#include "cftpp/random.hpp"

namespace cftpp::sir {

enum class Country { guinea, liberia, sierra_leone };

Country country_from_code(const std::string& code);  // "GN" | "LB" | "SL"
const char* country_code(Country country);

struct District {
    std::string id;
    Country country = Country::guinea;
    double weight = 1.0;
};

struct Geography {
    std::vector<District> districts;
    std::vector<std::pair<std::string, std::string>> contiguity;
    int total_nodes = 8000;

    int district_index(const std::string& id) const;  // -1 when unknown
};

/// Edge probabilities by district relation.
struct SbmProbabilities {
    double within = 1e-2;
    double guinea = 2.15e-3;
    double liberia = 3e-3;
    double sierra_leone = 3.15e-3;
    double cross_country = 1.9e-3;
};

struct ContactNetwork {
    std::vector<int> district_of;             // node -> district index
    std::vector<std::vector<int>> neighbors;  // sorted adjacency lists
    std::vector<std::string> district_ids;
    std::vector<Country> district_country;

    int node_count() const { return static_cast<int>(district_of.size()); }
    bool has_edge(int u, int v) const;
    std::size_t edge_count() const;
};

struct SirParams {
    double beta = 1.0 / 15.3;   // per-edge infection rate, 1/days
    double delta = 1.0 / 11.4;  // recovery rate, 1/days
};

inline constexpr int kInfectorSeed = -1;
inline constexpr int kInfectorNone = -2;
inline constexpr double kNever = std::numeric_limits<double>::infinity();

/// Per-node infection record of one outbreak realization.
struct Outbreak {
    std::vector<double> infection_time;  // kNever when never infected
    std::vector<double> recovery_time;
    std::vector<int> infector;  // node id, kInfectorSeed, or kInfectorNone

    std::size_t node_count() const { return infection_time.size(); }
    std::vector<int> seed_nodes() const;
    std::size_t infected_count() const;
    void validate() const;
};

/// Node counts per district, proportional to weight with largest-remainder
/// rounding so the counts sum to total_nodes.
std::vector<int> allocate_nodes(const Geography& geography);

/// Stochastic block model draw: each unordered node pair is connected
/// independently with the probability given by its district relation
/// (same district / contiguous within a country / contiguous across
/// countries / zero otherwise).
ContactNetwork generate_network(const Geography& geography,
                                const SbmProbabilities& probs,
                                rng::Stream& stream);

/// Discrete-event simulation of the networked SIR process: per-edge
/// exponential infection races at rate beta while the source is infectious,
/// recovery after an Exp(delta) duration.
Outbreak sample_outbreak(const ContactNetwork& network, const SirParams& params,
                         const std::vector<int>& seeds, double horizon,
                         rng::Stream& stream);

/// Counterfactual per-directed-edge infection rates: a base rate, an optional
/// per-target scale (vaccination), and edges whose rate drops to zero from
/// activation_time onward (contact reductions).
struct EdgeRateFn {
    double base = 0.0;
    double activation_time = kNever;
    std::vector<double> inbound_scale;             // empty -> all ones
    std::unordered_set<std::uint64_t> deactivated;  // directed edge keys
    int node_count = 0;

    static std::uint64_t edge_key(int u, int v, int n) {
        return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) + v;
    }
    double rate(int source, int target, double t) const;
    double max_rate() const;
    void deactivate_edge(int u, int v);  // both directions
};

/// Samples a counterfactual outbreak from an observed one. Every directed
/// edge out of a counterfactually infected node is re-decided through the
/// thinning SCM: the observed infection is injected on the edge that caused
/// it, edges that were factually active but silent carry their no-infection
/// evidence, and edges with no factual window sample fresh. Observed recovery
/// durations are reused whenever a node's counterfactual infection time
/// equals its observed one.
Outbreak counterfactual_outbreak(const ContactNetwork& network_m,
                                 const ContactNetwork& network_cf,
                                 const SirParams& params_m,
                                 const EdgeRateFn& beta_cf,
                                 const Outbreak& observed, double horizon,
                                 const scm::CounterfactualMode& mode,
                                 rng::Stream& stream);

struct ContactReductionGlobal {
    int threshold = 1;        // active-infection count that triggers the measure
    double reduction = 0.0;   // fraction of contacts removed
};

struct DistrictIsolation {
    int threshold = 1;
    double within_reduction = 0.5;
    bool cross_isolation = true;
};

struct Vaccination {
    double coverage = 0.0;  // fraction of nodes vaccinated (from time 0)
    double efficacy = 0.0;  // fractional reduction of inbound rate
};

using Intervention =
    std::variant<ContactReductionGlobal, DistrictIsolation, Vaccination>;

struct InterventionPlan {
    ContactNetwork network_cf;
    EdgeRateFn beta_cf;
    double activation_time = kNever;
};

/// First time the active-infection count of the observed outbreak reaches
/// the threshold; kNever if it never does.
double activation_time_for_threshold(const Outbreak& observed, int threshold);

/// Translates an intervention into a counterfactual network and edge-rate
/// function. Threshold-based variants activate at the observed trajectory's
/// crossing time (pre-activation intensities are identical, so the
/// counterfactual coincides with the observation up to that time).
InterventionPlan apply_intervention(const Intervention& intervention,
                                    const Outbreak& observed,
                                    const ContactNetwork& network,
                                    const SirParams& params, rng::Stream& stream);

struct R0Estimate {
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct R0PerCountry {
    std::array<R0Estimate, 3> by_country;  // indexed by Country
    const R0Estimate& of(Country c) const {
        return by_country[static_cast<std::size_t>(c)];
    }
};

/// Seeds one uniformly random node per country per run and reports the mean
/// (with a 95% normal CI) of the number of direct secondary infections
/// attributed to each seed. Requires n_runs >= 30.
R0PerCountry estimate_r0(const ContactNetwork& network, const SirParams& params,
                         int n_runs, double horizon, rng::Stream& stream);

struct CalibrationTargets {
    double guinea = 1.71;
    double liberia = 1.83;
    double sierra_leone = 2.02;
};

struct CalibrationResult {
    SbmProbabilities best;
    double best_loss = 0.0;
    std::vector<double> losses;  // per grid candidate
};

/// Exhaustive search over candidate probabilities minimizing the summed
/// squared distance of per-country R0 means to the targets.
CalibrationResult calibrate(const Geography& geography,
                            const CalibrationTargets& targets,
                            const std::vector<SbmProbabilities>& grid,
                            const SirParams& params, int n_runs, double horizon,
                            rng::Stream& stream);

/// Resolves (district id, count) seed specifications to node ids, drawing
/// uniformly within each district.
std::vector<int> resolve_seeds(const ContactNetwork& network,
                               const std::vector<std::pair<std::string, int>>& spec,
                               rng::Stream& stream);

}  // namespace cftpp::sir

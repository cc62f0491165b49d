#include "cftpp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cftpp/stats.hpp"

namespace cftpp::experiments {

namespace {

constexpr std::uint32_t kFactualLabel = 30;
constexpr std::uint32_t kInterventionLabel = 31;
constexpr std::uint32_t kReplicateLabel = 32;
constexpr std::uint32_t kSharedRejectionLabel = 33;
constexpr std::uint32_t kNetworkLabel = 34;
constexpr std::uint32_t kPlanLabel = 35;
constexpr std::uint32_t kBootstrapLabel = 36;
constexpr std::uint32_t kSeedResolveLabel = 37;

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    const int workers = std::max(1, threads);
    if (workers == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (!failed.load()) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                try {
                    body(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> make_time_grid(double horizon, int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int g = 0; g < points; ++g) {
        grid[static_cast<std::size_t>(g)] =
            horizon * static_cast<double>(g) / static_cast<double>(points - 1);
    }
    return grid;
}

std::vector<double> step_curve(const std::vector<double>& times,
                               const std::vector<double>& grid) {
    std::vector<double> curve(grid.size(), 0.0);
    std::size_t k = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        while (k < times.size() && times[k] <= grid[g]) ++k;
        curve[g] = static_cast<double>(k);
    }
    return curve;
}

std::vector<double> outbreak_curve(const sir::Outbreak& outbreak,
                                   const std::vector<double>& grid) {
    std::vector<double> times;
    for (double t : outbreak.infection_time) {
        if (t < sir::kNever) times.push_back(t);
    }
    std::sort(times.begin(), times.end());
    return step_curve(times, grid);
}

double type1_quantile(std::vector<double> xs, double p) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, n);
    return xs[rank - 1];
}

struct Buckets {
    std::vector<double> edges;  // right-closed internal boundaries
    std::vector<std::string> names;
};

Buckets make_buckets(const GroupingSpec& grouping,
                     const std::vector<std::size_t>& counts) {
    Buckets buckets;
    if (grouping.kind == GroupingSpec::Kind::explicit_bins) {
        buckets.edges = grouping.edges;
        for (std::size_t i = 0; i <= buckets.edges.size(); ++i) {
            buckets.names.push_back("g" + std::to_string(i));
        }
        return buckets;
    }
    std::vector<double> values(counts.begin(), counts.end());
    const double q1 = type1_quantile(values, 1.0 / 3.0);
    const double q2 = type1_quantile(values, 2.0 / 3.0);
    buckets.edges = {q1, q2};
    buckets.names = {"low", "medium", "high"};
    return buckets;
}

std::size_t bucket_of(double count, const std::vector<double>& edges) {
    std::size_t b = 0;
    while (b < edges.size() && count > edges[b]) ++b;
    return b;
}

std::vector<double> quantile_pair_sorted(std::vector<double>& xs, double q) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    const auto pick = [&](double p) {
        const std::size_t idx = std::min(
            n - 1, static_cast<std::size_t>(std::llround(p * static_cast<double>(n - 1))));
        return xs[idx];
    };
    return {pick((1.0 - q) / 2.0), pick(1.0 - (1.0 - q) / 2.0)};
}

}  // namespace

void ScenarioConfig::validate() const {
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("scenario: horizon must be positive");
    }
    if (n_observed < 1 || n_counterfactual < 1) {
        throw std::invalid_argument("scenario: budgets must be >= 1");
    }
    if (time_grid_points < 2) {
        throw std::invalid_argument("scenario: time grid needs >= 2 points");
    }
}

std::pair<double, double> bootstrap_ci(std::span<const double> samples,
                                       double level, int n_resamples,
                                       rng::Stream& stream) {
    if (samples.empty()) {
        throw std::invalid_argument("bootstrap_ci: empty input");
    }
    if (level < 0.0 || level >= 1.0 || n_resamples < 1) {
        throw std::invalid_argument("bootstrap_ci: invalid level or resample count");
    }
    const std::size_t n = samples.size();
    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(n_resamples));
    for (int r = 0; r < n_resamples; ++r) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto idx = std::min<std::size_t>(
                n - 1, static_cast<std::size_t>(stream.uniform() * n));
            acc += samples[idx];
        }
        means.push_back(acc / static_cast<double>(n));
    }
    const auto bounds = quantile_pair_sorted(means, level);
    return {bounds[0], bounds[1]};
}

namespace {

struct SampledWorld {
    // One entry per factual realization.
    std::vector<std::vector<double>> factual_curves;
    std::vector<std::vector<double>> cf_mean_curves;
    std::vector<std::vector<double>> replicate_curves;  // kept when n_observed == 1
    std::vector<std::size_t> observed_counts;
    std::vector<std::vector<double>> observed_times;
    std::vector<std::vector<std::size_t>> cf_final_counts;
    std::atomic<std::size_t> truncated{0};
    // SIR extras.
    std::vector<sir::Outbreak> observed_outbreaks;
    std::vector<std::string> district_ids;
    std::vector<std::size_t> observed_by_district;
    std::vector<std::vector<double>> cf_by_district;  // per replicate (n_observed == 1)
};

HawkesParams shifted_alpha(const HawkesParams& base, double epsilon) {
    HawkesParams out = base;
    out.alpha = std::max(base.alpha + epsilon, 0.0);
    return out;
}

RbfMixtureIntensity shifted_amplitude(const RbfMixtureIntensity& base,
                                      std::size_t component, double epsilon) {
    RbfMixtureIntensity out = base;
    out.components[component].phi =
        std::max(base.components[component].phi + epsilon, 0.0);
    return out;
}

/// Counterfactual intensity for one realization of a Poisson scenario.
IntensityModel poisson_counterfactual(const IntensityModel& factual,
                                      const InterventionSpec& spec,
                                      rng::Stream eps_stream) {
    switch (spec.kind) {
        case InterventionSpec::Kind::none:
            return factual;
        case InterventionSpec::Kind::explicit_poisson:
            if (!spec.poisson_cf) {
                throw std::invalid_argument("intervention: missing explicit counterfactual intensity");
            }
            return *spec.poisson_cf;
        case InterventionSpec::Kind::rbf_amplitude_shift: {
            const auto* rbf = std::get_if<RbfMixtureIntensity>(&factual.value());
            if (rbf == nullptr) {
                throw std::invalid_argument("intervention: amplitude shift needs an RBF intensity");
            }
            if (rbf->components.empty()) {
                throw std::invalid_argument("intervention: RBF intensity has no components");
            }
            std::size_t component;
            if (spec.component >= 0) {
                component = static_cast<std::size_t>(spec.component);
                if (component >= rbf->components.size()) {
                    throw std::invalid_argument("intervention: component index out of range");
                }
            } else {
                component = std::min<std::size_t>(
                    rbf->components.size() - 1,
                    static_cast<std::size_t>(eps_stream.uniform() *
                                             rbf->components.size()));
            }
            const double epsilon = eps_stream.normal(spec.sigma);
            return IntensityModel(shifted_amplitude(*rbf, component, epsilon));
        }
        default:
            throw std::invalid_argument("intervention: not applicable to a Poisson scenario");
    }
}

HawkesParams hawkes_counterfactual(const HawkesParams& factual,
                                   const InterventionSpec& spec,
                                   rng::Stream eps_stream) {
    switch (spec.kind) {
        case InterventionSpec::Kind::none:
            return factual;
        case InterventionSpec::Kind::explicit_hawkes:
            if (!spec.hawkes_cf) {
                throw std::invalid_argument("intervention: missing explicit counterfactual parameters");
            }
            return *spec.hawkes_cf;
        case InterventionSpec::Kind::hawkes_alpha_shift:
            return shifted_alpha(factual, eps_stream.normal(spec.sigma));
        default:
            throw std::invalid_argument("intervention: not applicable to a Hawkes scenario");
    }
}

void run_poisson(const ScenarioConfig& config, const IntensityModel& factual,
                 const std::vector<double>& grid, SampledWorld& world) {
    const double horizon = config.horizon;
    const int n_obs = config.n_observed;
    const int n_cf = config.n_counterfactual;
    rng::Stream root = rng::Stream::root(config.seed);

    const double bound_m = factual.upper_bound(horizon);
    const IntensityFn fn_m = factual.fn();

    // One intervention draw per scenario unless requested per realization.
    std::optional<IntensityModel> scenario_cf;
    if (!config.intervention.per_realization) {
        scenario_cf = poisson_counterfactual(factual, config.intervention,
                                             root.child(kInterventionLabel, 0));
    }

    parallel_for(static_cast<std::size_t>(n_obs), config.threads, [&](std::size_t f) {
        rng::Stream f_stream = root.child(kFactualLabel, f);
        const ThinningRecord record =
            lewis_sample(fn_m, bound_m, horizon, f_stream);
        const EventSequence observed = record.accepted;
        world.observed_times[f] = observed.times;
        world.observed_counts[f] = observed.size();
        world.factual_curves[f] = step_curve(observed.times, grid);

        const IntensityModel cf_model =
            config.intervention.per_realization
                ? poisson_counterfactual(factual, config.intervention,
                                         root.child(kInterventionLabel, f + 1))
                : *scenario_cf;
        const IntensityFn fn_cf = cf_model.fn();
        const double lambda_max = std::max(bound_m, cf_model.upper_bound(horizon));

        std::optional<ThinningRecord> shared;
        if (config.share_rejections) {
            rng::Stream shared_stream = root.child(kSharedRejectionLabel, f);
            EventSequence rejections = sample_plausible_rejections(
                fn_m, observed, lambda_max, horizon, shared_stream);
            shared = ThinningRecord{observed, std::move(rejections), lambda_max};
        }

        std::vector<double> mean_curve(grid.size(), 0.0);
        world.cf_final_counts[f].resize(static_cast<std::size_t>(n_cf));
        for (int r = 0; r < n_cf; ++r) {
            rng::Stream rep = root.child(kReplicateLabel, f).child(kReplicateLabel,
                                                                   static_cast<std::uint64_t>(r));
            EventSequence cf_events =
                config.share_rejections
                    ? counterfactual_acceptance(fn_m, fn_cf, *shared, config.mode, rep)
                    : counterfactual_poisson(fn_m, fn_cf, observed, lambda_max,
                                             horizon, config.mode, rep);
            const std::vector<double> curve = step_curve(cf_events.times, grid);
            for (std::size_t g = 0; g < grid.size(); ++g) mean_curve[g] += curve[g];
            world.cf_final_counts[f][static_cast<std::size_t>(r)] = cf_events.size();
            if (n_obs == 1) world.replicate_curves[static_cast<std::size_t>(r)] = curve;
        }
        for (double& v : mean_curve) v /= n_cf;
        world.cf_mean_curves[f] = std::move(mean_curve);
    });
}

void run_hawkes(const ScenarioConfig& config, const HawkesParams& factual,
                const std::vector<double>& grid, SampledWorld& world) {
    const double horizon = config.horizon;
    const int n_obs = config.n_observed;
    const int n_cf = config.n_counterfactual;
    rng::Stream root = rng::Stream::root(config.seed);

    std::optional<HawkesParams> scenario_cf;
    if (!config.intervention.per_realization) {
        scenario_cf = hawkes_counterfactual(factual, config.intervention,
                                            root.child(kInterventionLabel, 0));
    }

    parallel_for(static_cast<std::size_t>(n_obs), config.threads, [&](std::size_t f) {
        rng::Stream f_stream = root.child(kFactualLabel, f);
        const double factual_bound = std::max(factual.mu, factual.alpha);
        const HawkesRealization realization = sample_hawkes(
            factual, factual_bound, horizon, f_stream, config.event_cap);
        if (realization.truncated) world.truncated.fetch_add(1);
        const EventSequence& observed = realization.events;
        world.observed_times[f] = observed.times;
        world.observed_counts[f] = observed.size();
        world.factual_curves[f] = step_curve(observed.times, grid);

        const HawkesParams cf_params =
            config.intervention.per_realization
                ? hawkes_counterfactual(factual, config.intervention,
                                        root.child(kInterventionLabel, f + 1))
                : *scenario_cf;
        const double lambda_max = std::max({factual.mu, factual.alpha,
                                            cf_params.mu, cf_params.alpha});
        HawkesOptions options;
        options.mode = config.mode;
        options.event_cap = config.event_cap;

        std::vector<double> mean_curve(grid.size(), 0.0);
        world.cf_final_counts[f].resize(static_cast<std::size_t>(n_cf));
        for (int r = 0; r < n_cf; ++r) {
            rng::Stream rep = root.child(kReplicateLabel, f).child(kReplicateLabel,
                                                                   static_cast<std::uint64_t>(r));
            const HawkesCounterfactual cf = counterfactual_hawkes(
                factual, cf_params, observed, lambda_max, horizon, options, rep);
            if (cf.truncated) world.truncated.fetch_add(1);
            const std::vector<double> curve = step_curve(cf.events.times, grid);
            for (std::size_t g = 0; g < grid.size(); ++g) mean_curve[g] += curve[g];
            world.cf_final_counts[f][static_cast<std::size_t>(r)] = cf.events.size();
            if (n_obs == 1) world.replicate_curves[static_cast<std::size_t>(r)] = curve;
        }
        for (double& v : mean_curve) v /= n_cf;
        world.cf_mean_curves[f] = std::move(mean_curve);
    });
}

void run_sir(const ScenarioConfig& config, const SirScenario& scenario,
             const std::vector<double>& grid, SampledWorld& world) {
    if (config.intervention.kind != InterventionSpec::Kind::none &&
        config.intervention.kind != InterventionSpec::Kind::sir) {
        throw std::invalid_argument("intervention: not applicable to a SIR scenario");
    }
    const double horizon = config.horizon;
    const int n_obs = config.n_observed;
    const int n_cf = config.n_counterfactual;
    rng::Stream root = rng::Stream::root(config.seed);

    rng::Stream net_stream = root.child(kNetworkLabel, 0);
    const sir::ContactNetwork network =
        sir::generate_network(scenario.geography, scenario.probs, net_stream);
    world.district_ids = network.district_ids;
    world.observed_by_district.assign(network.district_ids.size(), 0);
    world.observed_outbreaks.resize(static_cast<std::size_t>(n_obs));

    parallel_for(static_cast<std::size_t>(n_obs), config.threads, [&](std::size_t f) {
        rng::Stream f_stream = root.child(kFactualLabel, f);
        rng::Stream seed_stream = f_stream.child(kSeedResolveLabel, 0);
        const std::vector<int> seeds =
            sir::resolve_seeds(network, scenario.seeds, seed_stream);
        const sir::Outbreak observed = sir::sample_outbreak(
            network, scenario.params, seeds, horizon, f_stream);
        world.observed_outbreaks[f] = observed;
        world.observed_counts[f] = observed.infected_count();
        world.factual_curves[f] = outbreak_curve(observed, grid);

        sir::InterventionPlan plan{network, sir::EdgeRateFn{scenario.params.beta},
                                   sir::kNever};
        plan.beta_cf.node_count = network.node_count();
        if (config.intervention.kind == InterventionSpec::Kind::sir) {
            rng::Stream plan_stream = root.child(kPlanLabel, f);
            plan = sir::apply_intervention(*config.intervention.sir_intervention,
                                           observed, network, scenario.params,
                                           plan_stream);
        }

        std::vector<double> mean_curve(grid.size(), 0.0);
        world.cf_final_counts[f].resize(static_cast<std::size_t>(n_cf));
        for (int r = 0; r < n_cf; ++r) {
            rng::Stream rep = root.child(kReplicateLabel, f).child(kReplicateLabel,
                                                                   static_cast<std::uint64_t>(r));
            const sir::Outbreak cf = sir::counterfactual_outbreak(
                network, plan.network_cf, scenario.params, plan.beta_cf, observed,
                horizon, config.mode, rep);
            const std::vector<double> curve = outbreak_curve(cf, grid);
            for (std::size_t g = 0; g < grid.size(); ++g) mean_curve[g] += curve[g];
            world.cf_final_counts[f][static_cast<std::size_t>(r)] = cf.infected_count();
            if (n_obs == 1) {
                world.replicate_curves[static_cast<std::size_t>(r)] = curve;
                std::vector<double> per_district(network.district_ids.size(), 0.0);
                for (std::size_t v = 0; v < cf.node_count(); ++v) {
                    if (cf.infection_time[v] < sir::kNever) {
                        per_district[static_cast<std::size_t>(
                            network.district_of[v])] += 1.0;
                    }
                }
                world.cf_by_district[static_cast<std::size_t>(r)] = per_district;
            }
        }
        for (double& v : mean_curve) v /= n_cf;
        world.cf_mean_curves[f] = std::move(mean_curve);
        if (f == 0) {
            for (std::size_t v = 0; v < observed.node_count(); ++v) {
                if (observed.infection_time[v] < sir::kNever) {
                    ++world.observed_by_district[static_cast<std::size_t>(
                        network.district_of[v])];
                }
            }
        }
    });
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();

    ScenarioResult result;
    result.time_grid = make_time_grid(config.horizon, config.time_grid_points);

    SampledWorld world;
    const std::size_t n_obs = static_cast<std::size_t>(config.n_observed);
    world.factual_curves.resize(n_obs);
    world.cf_mean_curves.resize(n_obs);
    world.observed_counts.resize(n_obs);
    world.observed_times.resize(n_obs);
    world.cf_final_counts.resize(n_obs);
    if (config.n_observed == 1) {
        world.replicate_curves.resize(static_cast<std::size_t>(config.n_counterfactual));
        world.cf_by_district.resize(static_cast<std::size_t>(config.n_counterfactual));
    }

    if (const auto* poisson = std::get_if<IntensityModel>(&config.factual)) {
        run_poisson(config, *poisson, result.time_grid, world);
    } else if (const auto* hawkes = std::get_if<HawkesParams>(&config.factual)) {
        run_hawkes(config, *hawkes, result.time_grid, world);
    } else {
        run_sir(config, std::get<SirScenario>(config.factual), result.time_grid, world);
    }

    // Grouping and aggregation.
    const Buckets buckets = make_buckets(config.grouping, world.observed_counts);
    const std::size_t n_groups = buckets.names.size();
    std::vector<GroupSummary> groups(n_groups);
    for (std::size_t b = 0; b < n_groups; ++b) {
        groups[b].name = buckets.names[b];
    }
    for (std::size_t f = 0; f < n_obs; ++f) {
        const std::size_t b =
            bucket_of(static_cast<double>(world.observed_counts[f]), buckets.edges);
        groups[b].members.push_back(f);
    }

    rng::Stream root = rng::Stream::root(config.seed);
    const std::size_t n_grid = result.time_grid.size();
    for (std::size_t b = 0; b < n_groups; ++b) {
        GroupSummary& group = groups[b];
        if (group.members.empty()) continue;
        group.count_low = std::numeric_limits<double>::infinity();
        group.count_high = 0.0;
        group.mean_factual.assign(n_grid, 0.0);
        group.mean_cf.assign(n_grid, 0.0);
        for (std::size_t f : group.members) {
            group.count_low = std::min(group.count_low,
                                       static_cast<double>(world.observed_counts[f]));
            group.count_high = std::max(group.count_high,
                                        static_cast<double>(world.observed_counts[f]));
            for (std::size_t g = 0; g < n_grid; ++g) {
                group.mean_factual[g] += world.factual_curves[f][g];
                group.mean_cf[g] += world.cf_mean_curves[f][g];
            }
        }
        const double size = static_cast<double>(group.members.size());
        for (std::size_t g = 0; g < n_grid; ++g) {
            group.mean_factual[g] /= size;
            group.mean_cf[g] /= size;
        }
        group.mean_observed_final = group.mean_factual.back();
        group.mean_cf_final = group.mean_cf.back();
        group.relative_change_final =
            group.mean_observed_final > 0.0
                ? (group.mean_cf_final - group.mean_observed_final) /
                      group.mean_observed_final
                : 0.0;
        group.rel_diff.assign(n_grid, 0.0);
        for (std::size_t g = 0; g < n_grid; ++g) {
            group.rel_diff[g] =
                group.mean_factual[g] > 0.0
                    ? (group.mean_cf[g] - group.mean_factual[g]) / group.mean_factual[g]
                    : 0.0;
        }

        // Bootstrap bands: over factual members (cluster bootstrap), or over
        // replicates when the group is a single observation.
        const std::vector<std::vector<double>>* units = nullptr;
        std::vector<std::vector<double>> member_curves;
        if (group.members.size() > 1 || world.replicate_curves.empty()) {
            member_curves.reserve(group.members.size());
            for (std::size_t f : group.members) {
                member_curves.push_back(world.cf_mean_curves[f]);
            }
            units = &member_curves;
        } else {
            units = &world.replicate_curves;
        }
        rng::Stream boot = root.child(kBootstrapLabel, b);
        const std::size_t n_units = units->size();
        const int n_resamples = 1000;
        std::vector<std::vector<double>> resampled(static_cast<std::size_t>(n_resamples),
                                                   std::vector<double>(n_grid, 0.0));
        for (int rs = 0; rs < n_resamples; ++rs) {
            auto& acc = resampled[static_cast<std::size_t>(rs)];
            for (std::size_t u = 0; u < n_units; ++u) {
                const auto idx = std::min<std::size_t>(
                    n_units - 1, static_cast<std::size_t>(boot.uniform() * n_units));
                const std::vector<double>& curve = (*units)[idx];
                for (std::size_t g = 0; g < n_grid; ++g) acc[g] += curve[g];
            }
            for (double& v : acc) v /= static_cast<double>(n_units);
        }
        group.lo.assign(n_grid, 0.0);
        group.hi.assign(n_grid, 0.0);
        std::vector<double> column(static_cast<std::size_t>(n_resamples));
        for (std::size_t g = 0; g < n_grid; ++g) {
            for (int rs = 0; rs < n_resamples; ++rs) {
                column[static_cast<std::size_t>(rs)] =
                    resampled[static_cast<std::size_t>(rs)][g];
            }
            const auto bounds = quantile_pair_sorted(column, 0.95);
            group.lo[g] = bounds[0];
            group.hi[g] = bounds[1];
        }
    }

    result.groups = std::move(groups);
    result.observed_counts = std::move(world.observed_counts);
    result.observed_times = std::move(world.observed_times);
    result.cf_final_counts = std::move(world.cf_final_counts);
    result.truncated_realizations = world.truncated.load();
    result.observed_outbreaks = std::move(world.observed_outbreaks);
    result.district_ids = std::move(world.district_ids);
    result.observed_by_district = std::move(world.observed_by_district);

    if (!result.district_ids.empty() && config.n_observed == 1 &&
        !world.cf_by_district.empty()) {
        const std::size_t n_districts = result.district_ids.size();
        result.cf_mean_by_district.assign(n_districts, 0.0);
        result.cf_lo_by_district.assign(n_districts, 0.0);
        result.cf_hi_by_district.assign(n_districts, 0.0);
        rng::Stream boot = root.child(kBootstrapLabel, 1000);
        for (std::size_t d = 0; d < n_districts; ++d) {
            std::vector<double> samples;
            samples.reserve(world.cf_by_district.size());
            for (const auto& row : world.cf_by_district) {
                samples.push_back(row[d]);
            }
            result.cf_mean_by_district[d] = stats::mean(samples);
            const auto ci = bootstrap_ci(samples, 0.95, 1000, boot);
            result.cf_lo_by_district[d] = ci.first;
            result.cf_hi_by_district[d] = ci.second;
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    result.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    return result;
}

}  // namespace cftpp::experiments

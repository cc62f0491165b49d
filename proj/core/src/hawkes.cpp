#include "cftpp/hawkes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace cftpp {

namespace {

constexpr std::uint32_t kAssignLabel = 1;
constexpr std::uint32_t kBranchLabel = 2;  // index 0 = background, 1 + j = event j
constexpr std::uint32_t kFreshLabel = 3;   // index = discovery id of a new event

IntensityFn background_fn(double mu) {
    return [mu](double) { return mu; };
}

IntensityFn offspring_fn(const HawkesParams& params, double parent_time) {
    return [alpha = params.alpha, omega = params.omega, parent_time](double t) {
        return t < parent_time ? 0.0 : alpha * std::exp(-omega * (t - parent_time));
    };
}

struct Pending {
    double time;
    std::size_t id;
    bool operator>(const Pending& other) const {
        return time != other.time ? time > other.time : id > other.id;
    }
};

using PendingQueue =
    std::priority_queue<Pending, std::vector<Pending>, std::greater<Pending>>;

}  // namespace

HawkesRealization sample_hawkes(const HawkesParams& params, double lambda_max,
                                double horizon, rng::Stream& stream,
                                std::size_t event_cap) {
    if (lambda_max < std::max(params.mu, params.alpha)) {
        throw std::domain_error("sample_hawkes: dominating rate below branch kernel peak");
    }
    std::vector<double> time_of;
    std::vector<int> parent_of;
    PendingQueue queue;

    const ThinningRecord background = lewis_sample(
        background_fn(params.mu), lambda_max, horizon, stream.child(kBranchLabel, 0));
    for (double t : background.accepted.times) {
        queue.push(Pending{t, time_of.size()});
        time_of.push_back(t);
        parent_of.push_back(-1);
    }

    bool truncated = false;
    while (!queue.empty()) {
        if (time_of.size() >= event_cap) {
            truncated = true;
            break;
        }
        const Pending current = queue.top();
        queue.pop();
        const ThinningRecord offspring =
            lewis_sample(offspring_fn(params, current.time), lambda_max, horizon,
                         stream.child(kBranchLabel, current.id + 1));
        for (double t : offspring.accepted.times) {
            queue.push(Pending{t, time_of.size()});
            time_of.push_back(t);
            parent_of.push_back(static_cast<int>(current.id));
        }
    }

    // Sort by time, remap parent references, and separate exact ties.
    std::vector<std::size_t> order(time_of.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return time_of[a] != time_of[b] ? time_of[a] < time_of[b] : a < b;
    });
    std::vector<int> rank(time_of.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        rank[order[pos]] = static_cast<int>(pos);
    }
    std::vector<double> times(order.size());
    std::vector<int> parent(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        times[pos] = time_of[order[pos]];
        const int p = parent_of[order[pos]];
        parent[pos] = p < 0 ? -1 : rank[static_cast<std::size_t>(p)];
    }
    for (std::size_t pos = 1; pos < times.size(); ++pos) {
        while (times[pos] <= times[pos - 1]) {
            times[pos] = std::nextafter(times[pos - 1],
                                        std::numeric_limits<double>::infinity());
        }
    }
    while (!times.empty() && times.back() > horizon) {
        times.pop_back();
        parent.pop_back();
    }
    return HawkesRealization{EventSequence(std::move(times), horizon),
                             std::move(parent), truncated};
}

BranchAssignment assign(const EventSequence& observed, const HawkesParams& params_m,
                        rng::Stream& stream) {
    observed.validate();
    rng::Stream assign_stream = stream.child(kAssignLabel, 0);
    const std::vector<double>& times = observed.times;
    std::vector<int> parent(times.size(), -1);
    for (std::size_t i = 0; i < times.size(); ++i) {
        double total = params_m.mu;
        for (std::size_t k = 0; k < i; ++k) {
            total += params_m.alpha *
                     std::exp(-params_m.omega * (times[i] - times[k]));
        }
        if (!(total > 0.0)) {
            throw std::domain_error("assign: zero total intensity at an observed event");
        }
        const double u = assign_stream.uniform() * total;
        double acc = params_m.mu;
        int cause = -1;
        for (std::size_t k = 0; k < i && u > acc; ++k) {
            acc += params_m.alpha *
                   std::exp(-params_m.omega * (times[i] - times[k]));
            cause = static_cast<int>(k);
        }
        // If u lands beyond the accumulated mass (roundoff), the last
        // candidate keeps the assignment.
        parent[i] = (u <= params_m.mu) ? -1 : cause;
    }
    return BranchAssignment{std::move(parent)};
}

const char* to_string(CfOrigin origin) {
    switch (origin) {
        case CfOrigin::kept: return "kept";
        case CfOrigin::background_new: return "background_new";
        case CfOrigin::offspring_of_kept: return "offspring_of_kept";
        case CfOrigin::offspring_of_new: return "offspring_of_new";
    }
    return "unknown";
}

HawkesCounterfactual counterfactual_hawkes(const HawkesParams& params_m,
                                           const HawkesParams& params_cf,
                                           const EventSequence& observed,
                                           double lambda_max, double horizon,
                                           const HawkesOptions& options,
                                           rng::Stream& stream) {
    const double needed = std::max({params_m.mu, params_cf.mu, params_m.alpha,
                                    params_cf.alpha});
    if (lambda_max < needed) {
        throw std::domain_error(
            "counterfactual_hawkes: dominating rate below branch kernel peaks");
    }
    observed.validate();
    const std::vector<double>& obs = observed.times;
    const std::size_t n = obs.size();

    const BranchAssignment assignment = assign(observed, params_m, stream);
    std::vector<std::vector<double>> children(n);
    std::vector<double> background_children;
    for (std::size_t i = 0; i < n; ++i) {
        const int p = assignment.parent[i];
        if (p < 0) {
            background_children.push_back(obs[i]);
        } else {
            children[static_cast<std::size_t>(p)].push_back(obs[i]);
        }
    }

    std::vector<std::pair<double, CfOrigin>> results;
    std::vector<bool> kept(n, false);
    PendingQueue fresh_queue;
    std::size_t fresh_ids = 0;
    bool truncated = false;

    const auto observed_index = [&](double t) -> int {
        const auto it = std::lower_bound(obs.begin(), obs.end(), t);
        if (it != obs.end() && *it == t) {
            return static_cast<int>(it - obs.begin());
        }
        return -1;
    };

    const auto add_branch_output = [&](const EventSequence& out, CfOrigin new_origin) {
        for (double t : out.times) {
            const int idx = observed_index(t);
            if (idx >= 0) {
                kept[static_cast<std::size_t>(idx)] = true;
                results.emplace_back(t, CfOrigin::kept);
            } else {
                results.emplace_back(t, new_origin);
                fresh_queue.push(Pending{t, fresh_ids});
                ++fresh_ids;
            }
        }
    };

    // Background branch.
    {
        rng::Stream branch_stream = stream.child(kBranchLabel, 0);
        const EventSequence branch_obs(std::move(background_children), horizon);
        const EventSequence out = counterfactual_poisson(
            background_fn(params_m.mu), background_fn(params_cf.mu), branch_obs,
            lambda_max, horizon, options.mode, branch_stream);
        add_branch_output(out, CfOrigin::background_new);
    }

    // Offspring branches of observed events that survive into the
    // counterfactual, in chronological order. An event's own fate is settled
    // by its parent's branch, which was processed earlier.
    for (std::size_t j = 0; j < n; ++j) {
        if (!kept[j]) continue;
        rng::Stream branch_stream = stream.child(kBranchLabel, j + 1);
        const EventSequence branch_obs(std::move(children[j]), horizon);
        const EventSequence out = counterfactual_poisson(
            offspring_fn(params_m, obs[j]), offspring_fn(params_cf, obs[j]),
            branch_obs, lambda_max, horizon, options.mode, branch_stream);
        add_branch_output(out, CfOrigin::offspring_of_kept);
    }

    // Counterfactual-only events trigger entirely new offspring processes.
    while (!fresh_queue.empty()) {
        if (results.size() >= options.event_cap) {
            truncated = true;
            break;
        }
        const Pending current = fresh_queue.top();
        fresh_queue.pop();
        const ThinningRecord offspring =
            lewis_sample(offspring_fn(params_cf, current.time), lambda_max, horizon,
                         stream.child(kFreshLabel, current.id));
        for (double t : offspring.accepted.times) {
            results.emplace_back(t, CfOrigin::offspring_of_new);
            fresh_queue.push(Pending{t, fresh_ids});
            ++fresh_ids;
        }
    }

    std::sort(results.begin(), results.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> times;
    std::vector<CfOrigin> origins;
    times.reserve(results.size());
    origins.reserve(results.size());
    for (auto& [t, origin] : results) {
        double value = t;
        while (!times.empty() && value <= times.back()) {
            value = std::nextafter(value, std::numeric_limits<double>::infinity());
        }
        if (value > horizon) continue;
        times.push_back(value);
        origins.push_back(origin);
    }
    return HawkesCounterfactual{EventSequence(std::move(times), horizon),
                                std::move(origins), truncated};
}

}  // namespace cftpp

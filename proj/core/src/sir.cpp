#include "cftpp/sir.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "cftpp/cf_poisson.hpp"
#include "cftpp/stats.hpp"

namespace cftpp::sir {

namespace {

// Stream path labels used inside this module.
constexpr std::uint32_t kSbmBlockLabel = 10;
constexpr std::uint32_t kRecoveryLabel = 11;
constexpr std::uint32_t kCandidateLabel = 12;
constexpr std::uint32_t kEdgeCfLabel = 13;
constexpr std::uint32_t kCfRecoveryLabel = 14;
constexpr std::uint32_t kInterventionLabel = 15;
constexpr std::uint32_t kR0RunLabel = 16;
constexpr std::uint32_t kR0SeedLabel = 17;
constexpr std::uint32_t kR0SimLabel = 18;
constexpr std::uint32_t kCalibNetLabel = 19;
constexpr std::uint32_t kCalibR0Label = 20;
constexpr std::uint32_t kSeedPickLabel = 21;

struct Candidate {
    double time;
    int source;
    int target;
    bool operator>(const Candidate& other) const {
        if (time != other.time) return time > other.time;
        if (source != other.source) return source > other.source;
        return target > other.target;
    }
};

using CandidateQueue =
    std::priority_queue<Candidate, std::vector<Candidate>, std::greater<Candidate>>;

/// Number of skipped trials before the next success of a Bernoulli(p) scan.
std::uint64_t geometric_skip(double p, rng::Stream& stream) {
    if (p >= 1.0) return 0;
    const double u = stream.uniform();
    const double skip = std::floor(std::log(u) / std::log1p(-p));
    if (skip > 1e18) return static_cast<std::uint64_t>(1e18);
    return static_cast<std::uint64_t>(skip);
}

}  // namespace

Country country_from_code(const std::string& code) {
    if (code == "GN") return Country::guinea;
    if (code == "LB") return Country::liberia;
    if (code == "SL") return Country::sierra_leone;
    throw std::invalid_argument("unknown country code: " + code);
}

const char* country_code(Country country) {
    switch (country) {
        case Country::guinea: return "GN";
        case Country::liberia: return "LB";
        case Country::sierra_leone: return "SL";
    }
    return "??";
}

int Geography::district_index(const std::string& id) const {
    for (std::size_t i = 0; i < districts.size(); ++i) {
        if (districts[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

bool ContactNetwork::has_edge(int u, int v) const {
    const std::vector<int>& adj = neighbors[static_cast<std::size_t>(u)];
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::size_t ContactNetwork::edge_count() const {
    std::size_t total = 0;
    for (const auto& adj : neighbors) total += adj.size();
    return total / 2;
}

std::vector<int> Outbreak::seed_nodes() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < infector.size(); ++i) {
        if (infector[i] == kInfectorSeed) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::size_t Outbreak::infected_count() const {
    std::size_t total = 0;
    for (double t : infection_time) {
        if (t < kNever) ++total;
    }
    return total;
}

void Outbreak::validate() const {
    const std::size_t n = infection_time.size();
    if (recovery_time.size() != n || infector.size() != n) {
        throw std::invalid_argument("Outbreak: field sizes differ");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const bool infected = infection_time[i] < kNever;
        if (!infected) {
            if (infector[i] != kInfectorNone) {
                throw std::invalid_argument("Outbreak: uninfected node has an infector");
            }
            continue;
        }
        if (!(recovery_time[i] > infection_time[i])) {
            throw std::invalid_argument("Outbreak: recovery not after infection");
        }
        if (infector[i] == kInfectorNone) {
            throw std::invalid_argument("Outbreak: infected node lacks attribution");
        }
        if (infector[i] == kInfectorSeed) {
            if (infection_time[i] != 0.0) {
                throw std::invalid_argument("Outbreak: seed infected after time zero");
            }
            continue;
        }
        const int k = infector[i];
        if (k < 0 || static_cast<std::size_t>(k) >= n) {
            throw std::invalid_argument("Outbreak: infector out of range");
        }
        if (!(infection_time[k] <= infection_time[i] &&
              infection_time[i] < recovery_time[k])) {
            throw std::invalid_argument("Outbreak: infector not infectious at infection time");
        }
    }
}

std::vector<int> allocate_nodes(const Geography& geography) {
    if (geography.districts.empty() || geography.total_nodes <= 0) {
        throw std::invalid_argument("allocate_nodes: empty geography");
    }
    double total_weight = 0.0;
    for (const District& d : geography.districts) {
        if (!(d.weight > 0.0)) {
            throw std::invalid_argument("allocate_nodes: weights must be positive");
        }
        total_weight += d.weight;
    }
    const std::size_t k = geography.districts.size();
    std::vector<int> counts(k, 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    remainders.reserve(k);
    int assigned = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double quota =
            geography.districts[i].weight / total_weight * geography.total_nodes;
        counts[i] = static_cast<int>(std::floor(quota));
        assigned += counts[i];
        remainders.emplace_back(quota - counts[i], i);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    const int leftover = geography.total_nodes - assigned;
    for (int i = 0; i < leftover; ++i) {
        ++counts[remainders[static_cast<std::size_t>(i)].second];
    }
    return counts;
}

namespace {

double pair_probability(const Geography& geography,
                        const std::set<std::pair<int, int>>& contiguous,
                        const SbmProbabilities& probs, int a, int b) {
    if (a == b) return probs.within;
    const auto key = std::minmax(a, b);
    if (!contiguous.count({key.first, key.second})) return 0.0;
    const Country ca = geography.districts[static_cast<std::size_t>(a)].country;
    const Country cb = geography.districts[static_cast<std::size_t>(b)].country;
    if (ca != cb) return probs.cross_country;
    switch (ca) {
        case Country::guinea: return probs.guinea;
        case Country::liberia: return probs.liberia;
        case Country::sierra_leone: return probs.sierra_leone;
    }
    return 0.0;
}

/// Maps a linear index over the upper-triangular pairs of n items to (i, j).
std::pair<int, int> triangular_pair(std::uint64_t index, int n) {
    // Row offsets: off(i) = i*n - i(i+1)/2; binary-search the row.
    int lo = 0;
    int hi = n - 1;
    const auto row_offset = [n](int i) {
        return static_cast<std::uint64_t>(i) * n -
               static_cast<std::uint64_t>(i) * (i + 1) / 2;
    };
    while (lo < hi) {
        const int mid = (lo + hi + 1) / 2;
        if (row_offset(mid) <= index) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    const int i = lo;
    const int j = i + 1 + static_cast<int>(index - row_offset(i));
    return {i, j};
}

}  // namespace

ContactNetwork generate_network(const Geography& geography,
                                const SbmProbabilities& probs,
                                rng::Stream& stream) {
    const std::vector<int> counts = allocate_nodes(geography);
    const std::size_t k = geography.districts.size();
    std::vector<int> start(k, 0);
    for (std::size_t d = 1; d < k; ++d) {
        start[d] = start[d - 1] + counts[d - 1];
    }
    const int n = geography.total_nodes;

    ContactNetwork net;
    net.district_of.resize(static_cast<std::size_t>(n));
    for (std::size_t d = 0; d < k; ++d) {
        for (int i = 0; i < counts[d]; ++i) {
            net.district_of[static_cast<std::size_t>(start[d] + i)] =
                static_cast<int>(d);
        }
        net.district_ids.push_back(geography.districts[d].id);
        net.district_country.push_back(geography.districts[d].country);
    }

    std::set<std::pair<int, int>> contiguous;
    for (const auto& [ida, idb] : geography.contiguity) {
        const int a = geography.district_index(ida);
        const int b = geography.district_index(idb);
        if (a < 0 || b < 0) {
            throw std::invalid_argument("generate_network: contiguity names unknown district");
        }
        if (a == b) {
            throw std::invalid_argument("generate_network: district contiguous with itself");
        }
        const auto key = std::minmax(a, b);
        contiguous.insert({key.first, key.second});
    }

    net.neighbors.assign(static_cast<std::size_t>(n), {});
    std::uint64_t block_index = 0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b, ++block_index) {
            const double p = pair_probability(geography, contiguous, probs,
                                              static_cast<int>(a), static_cast<int>(b));
            if (!(p >= 0.0 && p <= 1.0)) {
                throw std::invalid_argument("generate_network: probability outside [0,1]");
            }
            if (p == 0.0) continue;
            const std::uint64_t na = static_cast<std::uint64_t>(counts[a]);
            const std::uint64_t nb = static_cast<std::uint64_t>(counts[b]);
            const std::uint64_t pairs = a == b ? na * (na - 1) / 2 : na * nb;
            if (pairs == 0) continue;
            rng::Stream block = stream.child(kSbmBlockLabel, block_index);
            std::uint64_t idx = 0;
            while (true) {
                const std::uint64_t skip = geometric_skip(p, block);
                if (skip >= pairs - idx) break;
                idx += skip;
                int u;
                int v;
                if (a == b) {
                    const auto [i, j] = triangular_pair(idx, counts[a]);
                    u = start[a] + i;
                    v = start[a] + j;
                } else {
                    u = start[a] + static_cast<int>(idx / nb);
                    v = start[b] + static_cast<int>(idx % nb);
                }
                net.neighbors[static_cast<std::size_t>(u)].push_back(v);
                net.neighbors[static_cast<std::size_t>(v)].push_back(u);
                ++idx;
                if (idx >= pairs) break;
            }
        }
    }
    for (auto& adj : net.neighbors) {
        std::sort(adj.begin(), adj.end());
    }
    return net;
}

Outbreak sample_outbreak(const ContactNetwork& network, const SirParams& params,
                         const std::vector<int>& seeds, double horizon,
                         rng::Stream& stream) {
    const int n = network.node_count();
    if (seeds.empty()) {
        throw std::invalid_argument("sample_outbreak: seed set is empty");
    }
    for (int s : seeds) {
        if (s < 0 || s >= n) {
            throw std::invalid_argument("sample_outbreak: seed not in network");
        }
    }
    Outbreak out;
    out.infection_time.assign(static_cast<std::size_t>(n), kNever);
    out.recovery_time.assign(static_cast<std::size_t>(n), kNever);
    out.infector.assign(static_cast<std::size_t>(n), kInfectorNone);

    CandidateQueue queue;
    const auto infect = [&](int node, double t, int why) {
        out.infection_time[static_cast<std::size_t>(node)] = t;
        out.infector[static_cast<std::size_t>(node)] = why;
        rng::Stream recovery =
            stream.child(kRecoveryLabel, static_cast<std::uint64_t>(node));
        const double until =
            t + recovery.exponential(params.delta);
        out.recovery_time[static_cast<std::size_t>(node)] = until;
        if (params.beta <= 0.0) return;
        for (int j : network.neighbors[static_cast<std::size_t>(node)]) {
            rng::Stream edge = stream.child(
                kCandidateLabel,
                EdgeRateFn::edge_key(node, j, n));
            const double tc = t + edge.exponential(params.beta);
            if (tc < until && tc <= horizon) {
                queue.push(Candidate{tc, node, j});
            }
        }
    };

    for (int s : seeds) {
        if (out.infection_time[static_cast<std::size_t>(s)] == kNever) {
            infect(s, 0.0, kInfectorSeed);
        }
    }
    while (!queue.empty()) {
        const Candidate c = queue.top();
        queue.pop();
        if (out.infection_time[static_cast<std::size_t>(c.target)] == kNever) {
            infect(c.target, c.time, c.source);
        }
    }
    return out;
}

double EdgeRateFn::rate(int source, int target, double t) const {
    double r = base;
    if (!inbound_scale.empty()) {
        r *= inbound_scale[static_cast<std::size_t>(target)];
    }
    if (t >= activation_time && !deactivated.empty() &&
        deactivated.count(edge_key(source, target, node_count))) {
        return 0.0;
    }
    return r;
}

double EdgeRateFn::max_rate() const {
    double scale = 1.0;
    if (!inbound_scale.empty()) {
        scale = *std::max_element(inbound_scale.begin(), inbound_scale.end());
    }
    return base * scale;
}

void EdgeRateFn::deactivate_edge(int u, int v) {
    deactivated.insert(edge_key(u, v, node_count));
    deactivated.insert(edge_key(v, u, node_count));
}

Outbreak counterfactual_outbreak(const ContactNetwork& network_m,
                                 const ContactNetwork& network_cf,
                                 const SirParams& params_m,
                                 const EdgeRateFn& beta_cf,
                                 const Outbreak& observed, double horizon,
                                 const scm::CounterfactualMode& mode,
                                 rng::Stream& stream) {
    const int n = network_cf.node_count();
    if (network_m.node_count() != n ||
        observed.node_count() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("counterfactual_outbreak: size mismatch");
    }
    const double beta_max = std::max(params_m.beta, beta_cf.max_rate());

    Outbreak out;
    out.infection_time.assign(static_cast<std::size_t>(n), kNever);
    out.recovery_time.assign(static_cast<std::size_t>(n), kNever);
    out.infector.assign(static_cast<std::size_t>(n), kInfectorNone);

    std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                        std::greater<>>
        queue;
    std::vector<bool> processed(static_cast<std::size_t>(n), false);
    std::vector<std::optional<rng::Stream>> recovery_streams(
        static_cast<std::size_t>(n));

    for (std::size_t i = 0; i < observed.node_count(); ++i) {
        if (observed.infector[i] == kInfectorSeed) {
            out.infection_time[i] = observed.infection_time[i];
            out.recovery_time[i] = observed.recovery_time[i];
            out.infector[i] = kInfectorSeed;
            queue.push({out.infection_time[i], static_cast<int>(i)});
        }
    }
    if (beta_max <= 0.0) return out;

    while (!queue.empty()) {
        const auto [t_i, i] = queue.top();
        queue.pop();
        const std::size_t si = static_cast<std::size_t>(i);
        if (processed[si] || t_i != out.infection_time[si]) continue;
        processed[si] = true;

        const double cf_start = out.infection_time[si];
        const double cf_end = out.recovery_time[si];
        const bool factual = observed.infection_time[si] < kNever;
        const double obs_start = observed.infection_time[si];
        const double obs_end = observed.recovery_time[si];

        for (int j : network_cf.neighbors[si]) {
            const std::size_t sj = static_cast<std::size_t>(j);
            if (observed.infector[sj] == kInfectorSeed) continue;

            const IntensityFn gamma_cf = [&beta_cf, i, j, cf_start,
                                          cf_end](double t) {
                if (t < cf_start || t >= cf_end) return 0.0;
                return beta_cf.rate(i, j, t);
            };

            bool inject = false;
            double m_start = kNever;
            double m_end = kNever;
            if (factual && network_m.has_edge(i, j)) {
                m_start = obs_start;
                if (observed.infector[sj] == i) {
                    inject = true;
                    m_end = obs_end;
                } else {
                    // The factual edge was silent only while j was still
                    // susceptible; beyond that the edge noise is unobserved.
                    m_end = std::min(obs_end, observed.infection_time[sj]);
                }
            }
            const double beta_m = params_m.beta;
            const IntensityFn gamma_m = [beta_m, m_start, m_end](double t) {
                return (t >= m_start && t < m_end) ? beta_m : 0.0;
            };

            std::vector<double> injected_times;
            if (inject) injected_times.push_back(observed.infection_time[sj]);
            const EventSequence injected(std::move(injected_times), horizon);

            rng::Stream edge_stream =
                stream.child(kEdgeCfLabel, EdgeRateFn::edge_key(i, j, n));
            const EventSequence cf_events =
                counterfactual_poisson(gamma_m, gamma_cf, injected, beta_max,
                                       horizon, mode, edge_stream);
            if (cf_events.empty()) continue;
            const double cand = cf_events.times.front();
            if (cand < out.infection_time[sj]) {
                out.infection_time[sj] = cand;
                out.infector[sj] = i;
                if (cand == observed.infection_time[sj]) {
                    out.recovery_time[sj] = observed.recovery_time[sj];
                } else {
                    if (!recovery_streams[sj]) {
                        recovery_streams[sj] = stream.child(
                            kCfRecoveryLabel, static_cast<std::uint64_t>(j));
                    }
                    out.recovery_time[sj] =
                        cand + recovery_streams[sj]->exponential(params_m.delta);
                }
                queue.push({cand, j});
            }
        }
    }
    return out;
}

double activation_time_for_threshold(const Outbreak& observed, int threshold) {
    if (threshold < 1) {
        throw std::invalid_argument("activation threshold must be >= 1");
    }
    std::vector<std::pair<double, int>> deltas;  // recoveries sort first at ties
    for (std::size_t i = 0; i < observed.node_count(); ++i) {
        if (observed.infection_time[i] < kNever) {
            deltas.emplace_back(observed.infection_time[i], +1);
            if (observed.recovery_time[i] < kNever) {
                deltas.emplace_back(observed.recovery_time[i], -1);
            }
        }
    }
    std::sort(deltas.begin(), deltas.end());
    int active = 0;
    for (const auto& [t, d] : deltas) {
        active += d;
        if (active >= threshold) return t;
    }
    return kNever;
}

namespace {

int highest_incidence_district(const Outbreak& observed,
                               const ContactNetwork& network, double at) {
    std::map<std::string, std::pair<int, int>> by_id;  // id -> (count, index)
    for (std::size_t d = 0; d < network.district_ids.size(); ++d) {
        by_id[network.district_ids[d]] = {0, static_cast<int>(d)};
    }
    for (std::size_t i = 0; i < observed.node_count(); ++i) {
        if (observed.infection_time[i] <= at && at < observed.recovery_time[i]) {
            ++by_id[network.district_ids[static_cast<std::size_t>(
                          network.district_of[i])]]
                  .first;
        }
    }
    int best_index = 0;
    int best_count = -1;
    for (const auto& [id, entry] : by_id) {  // ids ascending: ties break by id
        if (entry.first > best_count) {
            best_count = entry.first;
            best_index = entry.second;
        }
    }
    return best_index;
}

}  // namespace

InterventionPlan apply_intervention(const Intervention& intervention,
                                    const Outbreak& observed,
                                    const ContactNetwork& network,
                                    const SirParams& params, rng::Stream& stream) {
    const int n = network.node_count();
    InterventionPlan plan{network, EdgeRateFn{params.beta}, kNever};
    plan.beta_cf.node_count = n;
    rng::Stream pick = stream.child(kInterventionLabel, 0);

    if (const auto* global = std::get_if<ContactReductionGlobal>(&intervention)) {
        if (global->reduction < 0.0 || global->reduction > 1.0) {
            throw std::invalid_argument("contact reduction fraction outside [0,1]");
        }
        const double at = activation_time_for_threshold(observed, global->threshold);
        plan.activation_time = at;
        if (at == kNever || global->reduction == 0.0) return plan;
        plan.beta_cf.activation_time = at;
        for (int u = 0; u < n; ++u) {
            for (int v : network.neighbors[static_cast<std::size_t>(u)]) {
                if (v <= u) continue;
                if (pick.uniform() < global->reduction) {
                    plan.beta_cf.deactivate_edge(u, v);
                }
            }
        }
        return plan;
    }

    if (const auto* isolation = std::get_if<DistrictIsolation>(&intervention)) {
        if (isolation->within_reduction < 0.0 || isolation->within_reduction > 1.0) {
            throw std::invalid_argument("within-district reduction outside [0,1]");
        }
        const double at =
            activation_time_for_threshold(observed, isolation->threshold);
        plan.activation_time = at;
        if (at == kNever) return plan;
        plan.beta_cf.activation_time = at;
        const int district = highest_incidence_district(observed, network, at);
        for (int u = 0; u < n; ++u) {
            const bool u_in = network.district_of[static_cast<std::size_t>(u)] == district;
            for (int v : network.neighbors[static_cast<std::size_t>(u)]) {
                if (v <= u) continue;
                const bool v_in =
                    network.district_of[static_cast<std::size_t>(v)] == district;
                if (u_in && v_in) {
                    if (pick.uniform() < isolation->within_reduction) {
                        plan.beta_cf.deactivate_edge(u, v);
                    }
                } else if ((u_in || v_in) && isolation->cross_isolation) {
                    plan.beta_cf.deactivate_edge(u, v);
                }
            }
        }
        return plan;
    }

    const auto& vaccination = std::get<Vaccination>(intervention);
    if (vaccination.coverage < 0.0 || vaccination.coverage > 1.0 ||
        vaccination.efficacy < 0.0 || vaccination.efficacy > 1.0) {
        throw std::invalid_argument("vaccination fractions outside [0,1]");
    }
    plan.activation_time = 0.0;
    const int picked = static_cast<int>(
        std::ceil(vaccination.coverage * static_cast<double>(n)));
    if (picked == 0 || vaccination.efficacy == 0.0) return plan;
    // Partial Fisher-Yates draw of `picked` distinct nodes.
    std::vector<int> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    plan.beta_cf.inbound_scale.assign(static_cast<std::size_t>(n), 1.0);
    for (int i = 0; i < picked; ++i) {
        const auto span = static_cast<std::size_t>(n - i);
        const auto offset =
            std::min<std::size_t>(span - 1,
                                  static_cast<std::size_t>(pick.uniform() * span));
        std::swap(ids[static_cast<std::size_t>(i)],
                  ids[static_cast<std::size_t>(i) + offset]);
        plan.beta_cf.inbound_scale[static_cast<std::size_t>(
            ids[static_cast<std::size_t>(i)])] = 1.0 - vaccination.efficacy;
    }
    return plan;
}

R0PerCountry estimate_r0(const ContactNetwork& network, const SirParams& params,
                         int n_runs, double horizon, rng::Stream& stream) {
    if (n_runs < 30) {
        throw std::invalid_argument("estimate_r0: need at least 30 runs");
    }
    std::array<std::vector<int>, 3> country_nodes;
    for (int v = 0; v < network.node_count(); ++v) {
        const Country c =
            network.district_country[static_cast<std::size_t>(
                network.district_of[static_cast<std::size_t>(v)])];
        country_nodes[static_cast<std::size_t>(c)].push_back(v);
    }
    for (const auto& nodes : country_nodes) {
        if (nodes.empty()) {
            throw std::invalid_argument("estimate_r0: a country has no nodes");
        }
    }

    std::array<std::vector<double>, 3> secondary;
    for (int run = 0; run < n_runs; ++run) {
        rng::Stream run_stream = stream.child(kR0RunLabel, static_cast<std::uint64_t>(run));
        std::array<int, 3> seeds{};
        std::vector<int> seed_list;
        for (std::size_t c = 0; c < 3; ++c) {
            rng::Stream pick = run_stream.child(kR0SeedLabel, c);
            const auto& nodes = country_nodes[c];
            const auto idx = std::min<std::size_t>(
                nodes.size() - 1,
                static_cast<std::size_t>(pick.uniform() * nodes.size()));
            seeds[c] = nodes[idx];
            seed_list.push_back(nodes[idx]);
        }
        rng::Stream sim = run_stream.child(kR0SimLabel, 0);
        const Outbreak outbreak =
            sample_outbreak(network, params, seed_list, horizon, sim);
        std::array<int, 3> counts{};
        for (std::size_t j = 0; j < outbreak.node_count(); ++j) {
            for (std::size_t c = 0; c < 3; ++c) {
                if (outbreak.infector[j] == seeds[c]) ++counts[c];
            }
        }
        for (std::size_t c = 0; c < 3; ++c) {
            secondary[c].push_back(static_cast<double>(counts[c]));
        }
    }

    R0PerCountry result;
    for (std::size_t c = 0; c < 3; ++c) {
        const double mean = stats::mean(secondary[c]);
        const double sd = std::sqrt(stats::variance(secondary[c]));
        const double half = 1.96 * sd / std::sqrt(static_cast<double>(n_runs));
        result.by_country[c] = R0Estimate{mean, mean - half, mean + half};
    }
    return result;
}

CalibrationResult calibrate(const Geography& geography,
                            const CalibrationTargets& targets,
                            const std::vector<SbmProbabilities>& grid,
                            const SirParams& params, int n_runs, double horizon,
                            rng::Stream& stream) {
    if (grid.empty()) {
        throw std::invalid_argument("calibrate: empty grid");
    }
    CalibrationResult result;
    result.best = grid.front();
    result.best_loss = kNever;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        rng::Stream net_stream = stream.child(kCalibNetLabel, g);
        const ContactNetwork network = generate_network(geography, grid[g], net_stream);
        rng::Stream r0_stream = stream.child(kCalibR0Label, g);
        const R0PerCountry r0 =
            estimate_r0(network, params, n_runs, horizon, r0_stream);
        const double loss =
            std::pow(r0.of(Country::guinea).mean - targets.guinea, 2) +
            std::pow(r0.of(Country::liberia).mean - targets.liberia, 2) +
            std::pow(r0.of(Country::sierra_leone).mean - targets.sierra_leone, 2);
        result.losses.push_back(loss);
        if (loss < result.best_loss) {
            result.best_loss = loss;
            result.best = grid[g];
        }
    }
    return result;
}

std::vector<int> resolve_seeds(const ContactNetwork& network,
                               const std::vector<std::pair<std::string, int>>& spec,
                               rng::Stream& stream) {
    std::vector<int> seeds;
    rng::Stream pick = stream.child(kSeedPickLabel, 0);
    for (const auto& [district_id, count] : spec) {
        int district = -1;
        for (std::size_t d = 0; d < network.district_ids.size(); ++d) {
            if (network.district_ids[d] == district_id) {
                district = static_cast<int>(d);
                break;
            }
        }
        if (district < 0) {
            throw std::invalid_argument("resolve_seeds: unknown district " + district_id);
        }
        std::vector<int> nodes;
        for (int v = 0; v < network.node_count(); ++v) {
            if (network.district_of[static_cast<std::size_t>(v)] == district) {
                nodes.push_back(v);
            }
        }
        if (nodes.empty() || count < 1) {
            throw std::invalid_argument("resolve_seeds: no nodes available in district");
        }
        for (int c = 0; c < count; ++c) {
            for (int attempt = 0; attempt < 1000; ++attempt) {
                const auto idx = std::min<std::size_t>(
                    nodes.size() - 1,
                    static_cast<std::size_t>(pick.uniform() * nodes.size()));
                const int node = nodes[idx];
                if (std::find(seeds.begin(), seeds.end(), node) == seeds.end()) {
                    seeds.push_back(node);
                    break;
                }
            }
        }
    }
    return seeds;
}

}  // namespace cftpp::sir

#include "cftpp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cftpp::io {

using nlohmann::json;

std::string format_double(double value) {
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buffer, ptr);
}

double parse_double(const std::string& text) {
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) {
        throw std::invalid_argument("parse_double: trailing characters in '" + text + "'");
    }
    return value;
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

json parse_json(const std::string& text, const char* what) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) {
        throw std::invalid_argument(std::string("malformed JSON in ") + what);
    }
    return parsed;
}

}  // namespace

std::string event_sequence_to_csv(const EventSequence& events) {
    std::string out = "t\n";
    for (double t : events.times) {
        out += format_double(t);
        out += '\n';
    }
    return out;
}

EventSequence event_sequence_from_csv(const std::string& text, double horizon) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty() || lines.front() != "t") {
        throw std::invalid_argument("event CSV must start with header 't'");
    }
    std::vector<double> times;
    times.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        times.push_back(parse_double(lines[i]));
    }
    return EventSequence(std::move(times), horizon);
}

std::string event_sequence_to_json(const EventSequence& events) {
    json out = json::array();
    for (double t : events.times) out.push_back(t);
    return out.dump();
}

std::string thinning_record_to_json(const ThinningRecord& record) {
    json out;
    out["accepted"] = json::array();
    for (double t : record.accepted.times) out["accepted"].push_back(t);
    out["rejected"] = json::array();
    for (double t : record.rejected.times) out["rejected"].push_back(t);
    out["lambda_max"] = record.lambda_max;
    return out.dump();
}

ThinningRecord thinning_record_from_json(const std::string& text, double horizon) {
    const json parsed = parse_json(text, "thinning record");
    std::vector<double> accepted = parsed.at("accepted").get<std::vector<double>>();
    std::vector<double> rejected = parsed.at("rejected").get<std::vector<double>>();
    return ThinningRecord{EventSequence(std::move(accepted), horizon),
                          EventSequence(std::move(rejected), horizon),
                          parsed.at("lambda_max").get<double>()};
}

namespace {

IntensityModel intensity_from_json_value(const json& parsed) {
    const std::string kind = parsed.at("kind").get<std::string>();
    if (kind == "constant") {
        return IntensityModel(ConstantIntensity{parsed.at("rate").get<double>()});
    }
    if (kind == "rbf") {
        RbfMixtureIntensity mixture;
        for (const json& c : parsed.at("components")) {
            mixture.components.push_back(RbfComponent{c.at("phi").get<double>(),
                                                      c.at("alpha").get<double>(),
                                                      c.at("tau").get<double>()});
        }
        if (parsed.contains("rbf_form")) {
            const std::string form = parsed.at("rbf_form").get<std::string>();
            if (form == "literal") {
                mixture.form = RbfForm::literal;
            } else if (form != "gaussian") {
                throw std::invalid_argument("rbf_form must be 'gaussian' or 'literal'");
            }
        }
        return IntensityModel(std::move(mixture));
    }
    throw std::invalid_argument("unknown intensity kind: " + kind);
}

HawkesParams hawkes_params_from_json_value(const json& parsed) {
    return HawkesParams{parsed.at("mu").get<double>(),
                        parsed.at("alpha").get<double>(),
                        parsed.at("omega").get<double>()};
}

}  // namespace

IntensityModel intensity_from_json(const std::string& text) {
    return intensity_from_json_value(parse_json(text, "intensity config"));
}

HawkesParams hawkes_params_from_json(const std::string& text) {
    const json parsed = parse_json(text, "hawkes config");
    return hawkes_params_from_json_value(parsed);
}

std::string intensity_to_json(const IntensityModel& model) {
    json out;
    if (const auto* constant = std::get_if<ConstantIntensity>(&model.value())) {
        out["kind"] = "constant";
        out["rate"] = constant->rate;
    } else if (const auto* rbf = std::get_if<RbfMixtureIntensity>(&model.value())) {
        out["kind"] = "rbf";
        out["components"] = json::array();
        for (const RbfComponent& c : rbf->components) {
            out["components"].push_back({{"phi", c.phi}, {"alpha", c.alpha}, {"tau", c.tau}});
        }
        out["rbf_form"] = rbf->form == RbfForm::gaussian ? "gaussian" : "literal";
    } else {
        throw std::invalid_argument("intensity_to_json: unsupported intensity kind");
    }
    return out.dump();
}

sir::Geography geography_from_json(const std::string& text) {
    const json parsed = parse_json(text, "geography");
    sir::Geography geography;
    for (const json& d : parsed.at("districts")) {
        geography.districts.push_back(
            sir::District{d.at("id").get<std::string>(),
                          sir::country_from_code(d.at("country").get<std::string>()),
                          d.at("weight").get<double>()});
    }
    for (const json& pair : parsed.at("contiguity")) {
        if (!pair.is_array() || pair.size() != 2) {
            throw std::invalid_argument("geography: contiguity entries must be id pairs");
        }
        geography.contiguity.emplace_back(pair[0].get<std::string>(),
                                          pair[1].get<std::string>());
    }
    geography.total_nodes = parsed.value("total_nodes", 8000);
    return geography;
}

std::string geography_to_json(const sir::Geography& geography) {
    json out;
    out["districts"] = json::array();
    for (const sir::District& d : geography.districts) {
        out["districts"].push_back({{"id", d.id},
                                    {"country", sir::country_code(d.country)},
                                    {"weight", d.weight}});
    }
    out["contiguity"] = json::array();
    for (const auto& [a, b] : geography.contiguity) {
        out["contiguity"].push_back({a, b});
    }
    out["total_nodes"] = geography.total_nodes;
    return out.dump(2);
}

namespace {

sir::SbmProbabilities sbm_from_json_value(const json& parsed) {
    sir::SbmProbabilities probs;
    probs.within = parsed.at("within").get<double>();
    probs.guinea = parsed.at("guinea").get<double>();
    probs.liberia = parsed.at("liberia").get<double>();
    probs.sierra_leone = parsed.at("sierra_leone").get<double>();
    probs.cross_country = parsed.at("cross_country").get<double>();
    return probs;
}

}  // namespace

sir::SbmProbabilities sbm_probabilities_from_json(const std::string& text) {
    return sbm_from_json_value(parse_json(text, "SBM probabilities"));
}

std::string sbm_probabilities_to_json(const sir::SbmProbabilities& probs) {
    json out;
    out["within"] = probs.within;
    out["guinea"] = probs.guinea;
    out["liberia"] = probs.liberia;
    out["sierra_leone"] = probs.sierra_leone;
    out["cross_country"] = probs.cross_country;
    return out.dump(2);
}

std::vector<sir::SbmProbabilities> sbm_grid_from_json(const std::string& text) {
    const json parsed = parse_json(text, "SBM grid");
    if (!parsed.is_array()) {
        throw std::invalid_argument("SBM grid must be a JSON array");
    }
    std::vector<sir::SbmProbabilities> grid;
    for (const json& entry : parsed) grid.push_back(sbm_from_json_value(entry));
    return grid;
}

namespace {

sir::Intervention intervention_from_json_value(const json& parsed) {
    const std::string type = parsed.at("type").get<std::string>();
    if (type == "contact_reduction") {
        return sir::ContactReductionGlobal{parsed.at("threshold").get<int>(),
                                           parsed.at("reduction").get<double>()};
    }
    if (type == "district_isolation") {
        return sir::DistrictIsolation{parsed.at("threshold").get<int>(),
                                      parsed.at("within_reduction").get<double>(),
                                      parsed.value("cross_isolation", true)};
    }
    if (type == "vaccination") {
        return sir::Vaccination{parsed.at("coverage").get<double>(),
                                parsed.at("efficacy").get<double>()};
    }
    throw std::invalid_argument("unknown intervention type: " + type);
}

}  // namespace

sir::Intervention intervention_from_json(const std::string& text) {
    return intervention_from_json_value(parse_json(text, "intervention"));
}

std::vector<std::pair<std::string, int>> seed_spec_from_json(const std::string& text) {
    const json parsed = parse_json(text, "seed spec");
    std::vector<std::pair<std::string, int>> spec;
    for (const json& entry : parsed) {
        spec.emplace_back(entry.at("district").get<std::string>(),
                          entry.at("count").get<int>());
    }
    return spec;
}

std::string outbreak_to_csv(const sir::Outbreak& outbreak,
                            const sir::ContactNetwork& network) {
    std::string out = "node,district,infection_time,recovery_time,infector\n";
    for (std::size_t i = 0; i < outbreak.node_count(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += network.district_ids[static_cast<std::size_t>(
            network.district_of[i])];
        out += ',';
        out += format_double(outbreak.infection_time[i]);
        out += ',';
        out += format_double(outbreak.recovery_time[i]);
        out += ',';
        if (outbreak.infector[i] == sir::kInfectorSeed) {
            out += "seed";
        } else if (outbreak.infector[i] != sir::kInfectorNone) {
            out += std::to_string(outbreak.infector[i]);
        }
        out += '\n';
    }
    return out;
}

sir::Outbreak outbreak_from_csv(const std::string& text) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty() ||
        lines.front() != "node,district,infection_time,recovery_time,infector") {
        throw std::invalid_argument("outbreak CSV has an unexpected header");
    }
    sir::Outbreak outbreak;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv_row(lines[i]);
        if (fields.size() != 5) {
            throw std::invalid_argument("outbreak CSV row has wrong field count");
        }
        const std::size_t node = static_cast<std::size_t>(std::stoul(fields[0]));
        if (node != i - 1) {
            throw std::invalid_argument("outbreak CSV rows must be ordered by node id");
        }
        outbreak.infection_time.push_back(parse_double(fields[2]));
        outbreak.recovery_time.push_back(parse_double(fields[3]));
        if (fields[4] == "seed") {
            outbreak.infector.push_back(sir::kInfectorSeed);
        } else if (fields[4].empty()) {
            outbreak.infector.push_back(sir::kInfectorNone);
        } else {
            outbreak.infector.push_back(std::stoi(fields[4]));
        }
    }
    outbreak.validate();
    return outbreak;
}

std::string network_edges_to_csv(const sir::ContactNetwork& network) {
    std::string out = "u,v\n";
    for (int u = 0; u < network.node_count(); ++u) {
        for (int v : network.neighbors[static_cast<std::size_t>(u)]) {
            if (v > u) {
                out += std::to_string(u);
                out += ',';
                out += std::to_string(v);
                out += '\n';
            }
        }
    }
    return out;
}

sir::ContactNetwork network_from_csv(const std::string& edge_text,
                                     const std::vector<std::string>& node_districts) {
    const std::vector<std::string> lines = split_lines(edge_text);
    if (lines.empty() || lines.front() != "u,v") {
        throw std::invalid_argument("network CSV has an unexpected header");
    }
    sir::ContactNetwork network;
    const int n = static_cast<int>(node_districts.size());
    network.district_of.resize(node_districts.size());
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < node_districts.size(); ++i) {
        const auto it = std::find(ids.begin(), ids.end(), node_districts[i]);
        if (it == ids.end()) {
            network.district_of[i] = static_cast<int>(ids.size());
            ids.push_back(node_districts[i]);
        } else {
            network.district_of[i] = static_cast<int>(it - ids.begin());
        }
    }
    network.district_ids = ids;
    // Country recoverable from the id prefix used by the bundled geography.
    for (const std::string& id : ids) {
        if (id.rfind("GN", 0) == 0) {
            network.district_country.push_back(sir::Country::guinea);
        } else if (id.rfind("LB", 0) == 0) {
            network.district_country.push_back(sir::Country::liberia);
        } else if (id.rfind("SL", 0) == 0) {
            network.district_country.push_back(sir::Country::sierra_leone);
        } else {
            network.district_country.push_back(sir::Country::guinea);
        }
    }
    network.neighbors.assign(node_districts.size(), {});
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv_row(lines[i]);
        if (fields.size() != 2) {
            throw std::invalid_argument("network CSV row has wrong field count");
        }
        const int u = std::stoi(fields[0]);
        const int v = std::stoi(fields[1]);
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
            throw std::invalid_argument("network CSV edge references invalid nodes");
        }
        network.neighbors[static_cast<std::size_t>(u)].push_back(v);
        network.neighbors[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& adj : network.neighbors) std::sort(adj.begin(), adj.end());
    return network;
}

std::vector<std::string> districts_from_outbreak_csv(const std::string& text) {
    const std::vector<std::string> lines = split_lines(text);
    std::vector<std::string> districts;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv_row(lines[i]);
        if (fields.size() != 5) {
            throw std::invalid_argument("outbreak CSV row has wrong field count");
        }
        districts.push_back(fields[1]);
    }
    return districts;
}

experiments::ScenarioConfig scenario_from_json(const std::string& text,
                                               const std::filesystem::path& base_dir) {
    const json parsed = parse_json(text, "scenario config");
    experiments::ScenarioConfig config;

    const json& factual = parsed.at("factual");
    const std::string kind = factual.at("kind").get<std::string>();
    if (kind == "constant" || kind == "rbf") {
        config.factual = intensity_from_json_value(factual);
    } else if (kind == "hawkes") {
        config.factual = hawkes_params_from_json_value(factual);
    } else if (kind == "sir") {
        experiments::SirScenario scenario;
        if (factual.contains("geography_file")) {
            scenario.geography = geography_from_json(read_file(
                base_dir / factual.at("geography_file").get<std::string>()));
        } else {
            scenario.geography =
                geography_from_json(factual.at("geography").dump());
        }
        if (factual.contains("probs_file")) {
            scenario.probs = sbm_probabilities_from_json(read_file(
                base_dir / factual.at("probs_file").get<std::string>()));
        } else if (factual.contains("probs")) {
            scenario.probs = sbm_from_json_value(factual.at("probs"));
        }
        if (factual.contains("seeds_file")) {
            scenario.seeds = seed_spec_from_json(read_file(
                base_dir / factual.at("seeds_file").get<std::string>()));
        } else {
            scenario.seeds = seed_spec_from_json(factual.at("seeds").dump());
        }
        scenario.params.beta = factual.value("beta", scenario.params.beta);
        scenario.params.delta = factual.value("delta", scenario.params.delta);
        config.factual = std::move(scenario);
    } else {
        throw std::invalid_argument("scenario: unknown factual kind " + kind);
    }

    if (parsed.contains("intervention")) {
        const json& spec = parsed.at("intervention");
        const std::string type = spec.at("type").get<std::string>();
        experiments::InterventionSpec intervention;
        if (type == "none") {
            intervention.kind = experiments::InterventionSpec::Kind::none;
        } else if (type == "rbf_amplitude_shift") {
            intervention.kind =
                experiments::InterventionSpec::Kind::rbf_amplitude_shift;
            intervention.sigma = spec.value("sigma", 0.5);
            intervention.component = spec.value("component", -1);
            intervention.per_realization = spec.value("epsilon_per_realization", false);
        } else if (type == "hawkes_alpha_shift") {
            intervention.kind = experiments::InterventionSpec::Kind::hawkes_alpha_shift;
            intervention.sigma = spec.value("sigma", 0.5);
            intervention.per_realization = spec.value("epsilon_per_realization", false);
        } else if (type == "explicit") {
            const json& cf = spec.at("counterfactual");
            if (cf.at("kind").get<std::string>() == "hawkes") {
                intervention.kind = experiments::InterventionSpec::Kind::explicit_hawkes;
                intervention.hawkes_cf = hawkes_params_from_json_value(cf);
            } else {
                intervention.kind = experiments::InterventionSpec::Kind::explicit_poisson;
                intervention.poisson_cf = intensity_from_json_value(cf);
            }
        } else {
            intervention.kind = experiments::InterventionSpec::Kind::sir;
            intervention.sir_intervention = intervention_from_json_value(spec);
        }
        config.intervention = std::move(intervention);
    }

    config.horizon = parsed.at("horizon").get<double>();
    config.n_observed = parsed.value("n_observed", 1000);
    config.n_counterfactual = parsed.value("n_counterfactual", 100);
    config.seed = parsed.at("seed").get<std::uint64_t>();
    config.time_grid_points = parsed.value("time_grid_points", 200);
    config.share_rejections = parsed.value("share_rejections", false);
    config.event_cap = parsed.value("event_cap", std::size_t{100000});
    config.threads = parsed.value("threads", 1);

    if (parsed.contains("grouping")) {
        const json& grouping = parsed.at("grouping");
        if (grouping.is_string() && grouping.get<std::string>() == "tercile") {
            config.grouping.kind = experiments::GroupingSpec::Kind::tercile;
        } else if (grouping.is_object() && grouping.contains("edges")) {
            config.grouping.kind = experiments::GroupingSpec::Kind::explicit_bins;
            config.grouping.edges = grouping.at("edges").get<std::vector<double>>();
        } else {
            throw std::invalid_argument("scenario: grouping must be 'tercile' or {edges:[...]}");
        }
    }

    const std::string mode = parsed.value("cf_mode", std::string("exact"));
    if (mode == "exact") {
        config.mode = scm::CounterfactualMode::exact();
    } else if (mode == "montecarlo") {
        config.mode = scm::CounterfactualMode::monte_carlo(
            parsed.value("cf_noise_samples", 100));
    } else {
        throw std::invalid_argument("scenario: cf_mode must be 'exact' or 'montecarlo'");
    }
    return config;
}

std::string scenario_result_summary_csv(const experiments::ScenarioResult& result) {
    std::string out = "group,t,mean_factual,mean_cf,lo,hi,rel_diff\n";
    for (const experiments::GroupSummary& group : result.groups) {
        if (group.members.empty()) continue;
        for (std::size_t g = 0; g < result.time_grid.size(); ++g) {
            out += group.name;
            out += ',';
            out += format_double(result.time_grid[g]);
            out += ',';
            out += format_double(group.mean_factual[g]);
            out += ',';
            out += format_double(group.mean_cf[g]);
            out += ',';
            out += format_double(group.lo[g]);
            out += ',';
            out += format_double(group.hi[g]);
            out += ',';
            out += format_double(group.rel_diff[g]);
            out += '\n';
        }
    }
    return out;
}

std::string scenario_result_meta_json(const experiments::ScenarioResult& result,
                                      const std::string& config_echo,
                                      std::uint64_t seed) {
    json meta;
    meta["config"] = json::parse(config_echo, nullptr, false);
    if (meta["config"].is_discarded()) meta["config"] = config_echo;
    meta["seed"] = seed;
    meta["truncated_realizations"] = result.truncated_realizations;
    meta["wall_seconds"] = result.wall_seconds;
    json groups = json::array();
    for (const experiments::GroupSummary& group : result.groups) {
        groups.push_back({{"name", group.name},
                          {"members", group.members.size()},
                          {"count_low", group.count_low},
                          {"count_high", group.count_high},
                          {"mean_observed", group.mean_observed_final},
                          {"mean_cf", group.mean_cf_final},
                          {"relative_change", group.relative_change_final}});
    }
    meta["groups"] = groups;
    return meta.dump(2);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content,
                bool force) {
    if (!force && std::filesystem::exists(path)) {
        throw std::runtime_error("refusing to overwrite " + path.string() +
                                 " (use --force)");
    }
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path.string());
    }
    out << content;
}

}  // namespace cftpp::io

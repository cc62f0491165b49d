#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cftpp/experiments.hpp"
#include "cftpp/hawkes.hpp"
#include "cftpp/sir.hpp"
#include "cftpp/thinning.hpp"

namespace cftpp::io {

/// Shortest round-trip decimal rendering of a double ("inf" for infinity).
std::string format_double(double value);
double parse_double(const std::string& text);

// Event sequences: CSV with header `t`, one time per row; JSON arrays.
std::string event_sequence_to_csv(const EventSequence& events);
EventSequence event_sequence_from_csv(const std::string& text, double horizon);
std::string event_sequence_to_json(const EventSequence& events);

// Thinning records: {"accepted":[...],"rejected":[...],"lambda_max":..}.
std::string thinning_record_to_json(const ThinningRecord& record);
ThinningRecord thinning_record_from_json(const std::string& text, double horizon);

// Intensity configs: {"kind":"constant","rate":..},
// {"kind":"rbf","components":[{"phi":..,"alpha":..,"tau":..}]},
// {"kind":"hawkes","mu":..,"alpha":..,"omega":..}.
IntensityModel intensity_from_json(const std::string& text);
HawkesParams hawkes_params_from_json(const std::string& text);
std::string intensity_to_json(const IntensityModel& model);

// Geography: {"districts":[{"id","country","weight"}],
//             "contiguity":[[id,id],...], "total_nodes":8000}.
sir::Geography geography_from_json(const std::string& text);
std::string geography_to_json(const sir::Geography& geography);

sir::SbmProbabilities sbm_probabilities_from_json(const std::string& text);
std::string sbm_probabilities_to_json(const sir::SbmProbabilities& probs);

std::vector<sir::SbmProbabilities> sbm_grid_from_json(const std::string& text);

sir::Intervention intervention_from_json(const std::string& text);

// Seed specifications: [{"district":"GN-01","count":2}, ...].
std::vector<std::pair<std::string, int>> seed_spec_from_json(const std::string& text);

// Outbreak CSV: node,district,infection_time,recovery_time,infector
// (infector is a node id, "seed", or empty for never-infected nodes).
std::string outbreak_to_csv(const sir::Outbreak& outbreak,
                            const sir::ContactNetwork& network);
sir::Outbreak outbreak_from_csv(const std::string& text);

// Network CSV: header u,v, one undirected edge per row.
std::string network_edges_to_csv(const sir::ContactNetwork& network);
/// Rebuilds adjacency from an edge CSV; district labels come from the
/// outbreak CSV's district column, via districts_of_nodes.
sir::ContactNetwork network_from_csv(const std::string& edge_text,
                                     const std::vector<std::string>& node_districts);

/// District labels per node from the outbreak CSV (column 2).
std::vector<std::string> districts_from_outbreak_csv(const std::string& text);

// Scenario configs (JSON). Paths inside the config resolve relative to
// `base_dir`.
experiments::ScenarioConfig scenario_from_json(const std::string& text,
                                               const std::filesystem::path& base_dir);

std::string scenario_result_summary_csv(const experiments::ScenarioResult& result);
std::string scenario_result_meta_json(const experiments::ScenarioResult& result,
                                      const std::string& config_echo,
                                      std::uint64_t seed);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content,
                bool force);

}  // namespace cftpp::io

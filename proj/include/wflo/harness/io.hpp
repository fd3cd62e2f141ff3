#ifndef WFLO_HARNESS_IO_HPP_
#define WFLO_HARNESS_IO_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "wflo/harness/analysis.hpp"
#include "wflo/harness/experiment.hpp"

namespace wflo::harness {

using OrderedJson = nlohmann::ordered_json;

// Doubles as %.17g, keys in insertion order, NaN and infinities as null.
// Same value in, same bytes out.
std::string dump_json(const OrderedJson& value, int indent = 2);
std::string format_double(double v);

OrderedJson to_ordered_json(const RunRecord& record);
OrderedJson records_to_json(std::span<const RunRecord> records);
std::vector<RunRecord> records_from_json(const nlohmann::json& doc);

// One row per run; the history is left out.
std::string records_csv(std::span<const RunRecord> records);

// l_grid rows of l_grid comma-separated values.
std::string heatmap_csv(const HeatmapResult& heatmap);
OrderedJson heatmap_json(const HeatmapResult& heatmap);

OrderedJson scaling_json(const ScalingFit& fit);
OrderedJson optimal_json(std::span<const Layout> layouts, double power_kw);
OrderedJson box_stats_json(const BoxStats& stats);

// Creates parent directories as needed; throws std::runtime_error on
// failure.
void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Sample values from a file: a records.json array (powers of successful
// runs), a JSON array of numbers, or whitespace-separated numbers.
std::vector<double> read_values(const std::filesystem::path& path);

}  // namespace wflo::harness

#endif  // WFLO_HARNESS_IO_HPP_

#ifndef SENTINEL_REPORT_HPP
#define SENTINEL_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "sentinel/grammar.hpp"
#include "sentinel/immune.hpp"

namespace sentinel {

using Report = nlohmann::ordered_json;

/// Monitor report for the immune engine. `stage_lengths` (samples per stage,
/// optional) adds per-stage activation counts; windows are attributed to the
/// stage holding their first sample.
Report immune_report(const DetectorSet& ds, const ImmuneMonitorResult& result,
                     const std::string& input_label,
                     const std::vector<std::size_t>& stage_lengths = {});

/// Monitor report for the grammar engine. Per-stage means only use words lying
/// entirely inside a stage.
Report grammar_report(const Grammar& grammar, const LanguageMonitorResult& result,
                      const LanguageMonitorConfig& mcfg, const EditCosts& costs,
                      const std::string& input_label,
                      const std::vector<std::size_t>& stage_lengths = {});

/// `window_index,detector_id,distance`
std::string immune_events_csv(const ImmuneMonitorResult& result);
/// `segment_index,distance,fault`, one row per word.
std::string grammar_events_csv(const LanguageMonitorResult& result,
                               const LanguageMonitorConfig& mcfg);

/// Human-readable rendering of a report.
std::string render_text(const nlohmann::json& report);
/// `x,y` trace: activations (window, detector) or word distances (segment, distance).
std::string render_plot_csv(const nlohmann::json& report);

/// Lengths of the runs of equal consecutive values; used to recover load
/// stages from a piecewise-constant input column.
std::vector<std::size_t> constant_runs(const std::vector<double>& values);

}  // namespace sentinel

#endif  // SENTINEL_REPORT_HPP

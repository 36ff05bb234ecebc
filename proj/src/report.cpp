#include "sentinel/report.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sentinel/format.hpp"
#include "sentinel/io.hpp"

namespace sentinel {

namespace {

using nlohmann::ordered_json;

std::vector<std::size_t> stage_starts(const std::vector<std::size_t>& lengths) {
  std::vector<std::size_t> starts(lengths.size() + 1, 0);
  std::partial_sum(lengths.begin(), lengths.end(), starts.begin() + 1);
  return starts;
}

ordered_json clamps_json(const ClampCounter& c) {
  return {{"below", c.below}, {"above", c.above}};
}

std::string verdict(bool abnormal) { return abnormal ? "fault" : "normal"; }

}  // namespace

Report immune_report(const DetectorSet& ds, const ImmuneMonitorResult& result,
                     const std::string& input_label,
                     const std::vector<std::size_t>& stage_lengths) {
  ordered_json events = ordered_json::array();
  for (const auto& e : result.events)
    events.push_back({{"window_index", e.window_index},
                      {"detector_id", e.detector_id},
                      {"distance", e.distance}});

  ordered_json summary{
      {"windows", result.windows},
      {"total_events", result.events.size()},
      {"first_detection",
       result.events.empty() ? ordered_json(nullptr) : ordered_json(result.events.front().window_index)},
      {"active_detectors",
       std::count_if(result.histogram.begin(), result.histogram.end(),
                     [](std::size_t n) { return n > 0; })},
      {"histogram", result.histogram},
      {"clamped", clamps_json(result.clamps)},
  };
  if (!stage_lengths.empty()) {
    const auto starts = stage_starts(stage_lengths);
    std::vector<std::size_t> per_stage(stage_lengths.size(), 0);
    for (const auto& e : result.events) {
      const auto it = std::upper_bound(starts.begin(), starts.end(), e.window_index);
      const auto stage = static_cast<std::size_t>(it - starts.begin()) - 1;
      if (stage < per_stage.size()) ++per_stage[stage];
    }
    summary["stage_events"] = per_stage;
  }

  Report r{
      {"engine", "immune"},
      {"input", input_label},
      {"config",
       {{"encoding", to_json(ds.cfg)},
        {"params",
         {{"d", ds.params.detectors},
          {"md", ds.params.md},
          {"seed", ds.params.seed},
          {"max_attempts", ds.params.attempt_budget()}}},
        {"threshold", ds.threshold()},
        {"self_size", ds.self_size},
        {"stage_lengths", stage_lengths}}},
      {"results", {{"events", std::move(events)}}},
      {"summary", std::move(summary)},
      {"verdict", verdict(result.abnormal())},
  };
  return round_numbers(r);
}

Report grammar_report(const Grammar& grammar, const LanguageMonitorResult& result,
                      const LanguageMonitorConfig& mcfg, const EditCosts& costs,
                      const std::string& input_label,
                      const std::vector<std::size_t>& stage_lengths) {
  std::vector<std::size_t> fault_segments;
  for (const auto& f : result.faults) fault_segments.push_back(f.segment_index);

  ordered_json summary{
      {"segments", result.distances.size()},
      {"total_events", result.faults.size()},
      {"first_detection",
       result.faults.empty() ? ordered_json(nullptr) : ordered_json(result.faults.front().segment_index)},
      {"fault_segments", fault_segments},
      {"max_distance", result.distances.empty()
                           ? 0.0
                           : *std::max_element(result.distances.begin(), result.distances.end())},
      {"unknown_predictions",
       std::count(result.predicted.begin(), result.predicted.end(), kUnknownSymbol)},
      {"clamped",
       {{"input", clamps_json(result.codified.input_clamps)},
        {"output", clamps_json(result.codified.output_clamps)}}},
  };
  if (!stage_lengths.empty()) {
    const auto starts = stage_starts(stage_lengths);
    ordered_json means = ordered_json::array();
    ordered_json maxima = ordered_json::array();
    ordered_json faults = ordered_json::array();
    for (std::size_t s = 0; s < stage_lengths.size(); ++s) {
      double sum = 0.0, peak = 0.0;
      std::size_t n = 0, over = 0;
      for (std::size_t k = 0; k < result.distances.size(); ++k) {
        const std::size_t begin = k * mcfg.word_length;
        if (begin < starts[s] || begin + mcfg.word_length > starts[s + 1]) continue;
        sum += result.distances[k];
        peak = std::max(peak, result.distances[k]);
        over += result.distances[k] > mcfg.threshold ? 1 : 0;
        ++n;
      }
      means.push_back(n ? ordered_json(sum / static_cast<double>(n)) : ordered_json(nullptr));
      maxima.push_back(n ? ordered_json(peak) : ordered_json(nullptr));
      faults.push_back(over);
    }
    summary["stage_mean_distance"] = std::move(means);
    summary["stage_max_distance"] = std::move(maxima);
    summary["stage_faults"] = std::move(faults);
  }

  const Alphabets alphabets = grammar.alphabets();
  Report r{
      {"engine", "grammar"},
      {"input", input_label},
      {"config",
       {{"input_cfg", to_json(grammar.input_cfg())},
        {"output_cfg", to_json(grammar.output_cfg())},
        {"max_depth", grammar.max_depth()},
        {"productions", grammar.size()},
        {"terminals", alphabets.terminals.size()},
        {"nonterminals", alphabets.nonterminals.size()},
        {"word_length", mcfg.word_length},
        {"threshold", mcfg.threshold},
        {"costs",
         {{"substitute", costs.substitute}, {"insert", costs.insert}, {"delete", costs.remove}}},
        {"stage_lengths", stage_lengths}}},
      {"results", {{"distances", result.distances}}},
      {"summary", std::move(summary)},
      {"verdict", verdict(result.abnormal())},
  };
  return round_numbers(r);
}

std::string immune_events_csv(const ImmuneMonitorResult& result) {
  std::ostringstream out;
  out << "window_index,detector_id,distance\n";
  for (const auto& e : result.events)
    out << e.window_index << ',' << e.detector_id << ',' << format_number(e.distance) << '\n';
  return out.str();
}

std::string grammar_events_csv(const LanguageMonitorResult& result,
                               const LanguageMonitorConfig& mcfg) {
  std::ostringstream out;
  out << "segment_index,distance,fault\n";
  for (std::size_t k = 0; k < result.distances.size(); ++k)
    out << k << ',' << format_number(result.distances[k]) << ','
        << (result.distances[k] > mcfg.threshold ? 1 : 0) << '\n';
  return out.str();
}

std::string render_text(const nlohmann::json& report) {
  const std::string engine = report.at("engine").get<std::string>();
  const auto& summary = report.at("summary");
  const auto& config = report.at("config");
  std::ostringstream out;
  out << "engine:   " << engine << '\n'
      << "input:    " << report.value("input", std::string{}) << '\n'
      << "verdict:  " << report.at("verdict").get<std::string>() << '\n';

  auto first = [&] {
    const auto& f = summary.at("first_detection");
    return f.is_null() ? std::string("none") : f.dump();
  };

  if (engine == "immune") {
    const auto& enc = config.at("encoding");
    const auto& params = config.at("params");
    out << "encoding: bits=" << enc.at("bits") << " window=" << enc.at("window")
        << " range=[" << enc.at("v_min") << ", " << enc.at("v_max") << "]"
        << (enc.at("take_abs").get<bool>() ? " abs" : "") << '\n'
        << "detectors: d=" << params.at("d") << " md=" << params.at("md")
        << " seed=" << params.at("seed") << " threshold=" << config.at("threshold") << '\n'
        << "windows:  " << summary.at("windows") << '\n'
        << "events:   " << summary.at("total_events") << " (first at window " << first()
        << ")\n"
        << "active detectors: " << summary.at("active_detectors") << '\n';
    const auto& hist = summary.at("histogram");
    for (std::size_t i = 0; i < hist.size(); ++i)
      if (hist[i].get<std::size_t>() > 0)
        out << "  detector " << i << ": " << hist[i] << '\n';
    if (summary.contains("stage_events")) {
      const auto& st = summary.at("stage_events");
      for (std::size_t i = 0; i < st.size(); ++i)
        out << "stage " << i << ": " << st[i] << " events\n";
    }
  } else {
    out << "grammar:  max_depth=" << config.at("max_depth")
        << " productions=" << config.at("productions") << " terminals=" << config.at("terminals")
        << " nonterminals=" << config.at("nonterminals") << '\n'
        << "words:    " << summary.at("segments") << " of " << config.at("word_length")
        << " symbols, threshold " << config.at("threshold") << '\n'
        << "faults:   " << summary.at("total_events") << " (first at segment " << first()
        << ")\n"
        << "max distance: " << summary.at("max_distance") << '\n';
    if (summary.contains("stage_mean_distance")) {
      const auto& means = summary.at("stage_mean_distance");
      const auto& faults = summary.at("stage_faults");
      for (std::size_t i = 0; i < means.size(); ++i)
        out << "stage " << i << ": mean distance " << (means[i].is_null() ? "n/a" : means[i].dump())
            << ", " << faults[i] << " faulty words\n";
    }
  }
  return out.str();
}

std::string render_plot_csv(const nlohmann::json& report) {
  std::ostringstream out;
  out << "x,y\n";
  if (report.at("engine").get<std::string>() == "immune") {
    for (const auto& e : report.at("results").at("events"))
      out << e.at("window_index") << ',' << e.at("detector_id") << '\n';
  } else {
    const auto& d = report.at("results").at("distances");
    for (std::size_t k = 0; k < d.size(); ++k)
      out << k << ',' << format_number(d[k].get<double>()) << '\n';
  }
  return out.str();
}

std::vector<std::size_t> constant_runs(const std::vector<double>& values) {
  std::vector<std::size_t> runs;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k == 0 || values[k] != values[k - 1])
      runs.push_back(1);
    else
      ++runs.back();
  }
  return runs;
}

}  // namespace sentinel

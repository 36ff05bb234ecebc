#include "sentinel/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sentinel/format.hpp"

namespace sentinel {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_double(const std::string& field) {
  double v = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

bool is_time_name(const std::string& name) { return name == "time" || name == "t"; }

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

SignalSeries SeriesTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw FormatError("series has no column named '" + name + "'");
  SignalSeries s;
  s.dt = dt;
  s.label = name;
  s.samples = data[static_cast<std::size_t>(it - columns.begin())];
  return s;
}

SeriesTable read_table(const std::filesystem::path& path, std::optional<double> dt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::vector<std::string> names;
  bool has_time = false;
  bool layout_known = false;
  std::vector<double> times;
  std::vector<std::vector<double>> data;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);

    if (!layout_known) {
      layout_known = true;
      if (!parse_double(fields.front())) {
        // Header row.
        has_time = is_time_name(fields.front());
        names.assign(fields.begin() + (has_time ? 1 : 0), fields.end());
        if (names.empty()) throw FormatError("header names no value column");
        data.resize(names.size());
        continue;
      }
      switch (fields.size()) {
        case 1: names = {"value"}; break;
        case 2: names = {"value"}; has_time = true; break;
        case 3: names = {"u", "y"}; has_time = true; break;
        default: throw FormatError("cannot infer the column layout of " + path.string());
      }
      data.resize(names.size());
    }

    const std::size_t expected = names.size() + (has_time ? 1 : 0);
    if (fields.size() != expected)
      throw ParseError(line_no, "expected " + std::to_string(expected) + " fields, found " +
                                    std::to_string(fields.size()));
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto v = parse_double(fields[i]);
      if (!v || !std::isfinite(*v)) throw ParseError(line_no, "not a finite number: '" + fields[i] + "'");
      if (has_time && i == 0)
        times.push_back(*v);
      else
        data[i - (has_time ? 1 : 0)].push_back(*v);
    }
  }

  if (data.empty() || data.front().empty()) throw FormatError(path.string() + " holds no samples");

  SeriesTable table;
  table.columns = std::move(names);
  table.data = std::move(data);
  if (dt) {
    if (!std::isfinite(*dt) || *dt <= 0.0) throw FormatError("dt must be positive");
    table.dt = *dt;
  } else if (has_time) {
    if (times.size() < 2) throw FormatError("cannot infer dt from a single timestamp");
    table.dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(table.dt > 0.0)) throw FormatError("timestamps must increase");
    for (std::size_t k = 1; k < times.size(); ++k)
      if (std::abs((times[k] - times[k - 1]) - table.dt) > 1e-6 * table.dt)
        throw FormatError("timestamps are not uniformly spaced near row " + std::to_string(k + 1));
  } else {
    throw FormatError(path.string() + " has no time column; supply dt explicitly");
  }
  return table;
}

SignalSeries read_series(const std::filesystem::path& path, std::optional<double> dt) {
  const SeriesTable table = read_table(path, dt);
  if (table.columns.size() != 1)
    throw FormatError(path.string() + " must hold exactly one value column");
  SignalSeries s = table.column(table.columns.front());
  s.label = path.filename().string();
  return s;
}

std::pair<SignalSeries, SignalSeries> read_paired_series(const std::filesystem::path& path,
                                                         std::optional<double> dt) {
  const SeriesTable table = read_table(path, dt);
  return {table.column("u"), table.column("y")};
}

void write_series(const std::filesystem::path& path, const SignalSeries& series) {
  std::ofstream out = open_for_write(path);
  out << "time,value\n";
  for (std::size_t k = 0; k < series.size(); ++k)
    out << format_number(static_cast<double>(k) * series.dt) << ','
        << format_number(series.samples[k]) << '\n';
}

void write_paired_series(const std::filesystem::path& path, const SignalSeries& u,
                         const SignalSeries& y) {
  if (u.size() != y.size()) throw std::invalid_argument("paired series differ in length");
  std::ofstream out = open_for_write(path);
  out << "time,u,y\n";
  for (std::size_t k = 0; k < u.size(); ++k)
    out << format_number(static_cast<double>(k) * u.dt) << ',' << format_number(u.samples[k])
        << ',' << format_number(y.samples[k]) << '\n';
}

nlohmann::ordered_json to_json(const EncodingConfig& cfg) {
  return {{"bits", cfg.bits},
          {"window", cfg.window},
          {"v_min", cfg.v_min},
          {"v_max", cfg.v_max},
          {"take_abs", cfg.take_abs}};
}

EncodingConfig encoding_from_json(const nlohmann::json& j) {
  EncodingConfig cfg{j.at("bits").get<int>(), j.at("window").get<int>(),
                     j.at("v_min").get<double>(), j.at("v_max").get<double>(),
                     j.at("take_abs").get<bool>()};
  cfg.validate();
  return cfg;
}

nlohmann::ordered_json to_json(const DetectorSet& ds) {
  nlohmann::ordered_json detectors = nlohmann::ordered_json::array();
  for (const auto& d : ds.detectors) {
    const auto& lv = d.pattern.levels();
    detectors.push_back(std::vector<int>(lv.data(), lv.data() + lv.size()));
  }
  return {{"encoding", to_json(ds.cfg)},
          {"params",
           {{"d", ds.params.detectors},
            {"md", ds.params.md},
            {"seed", ds.params.seed},
            {"max_attempts", ds.params.attempt_budget()}}},
          {"self_size", ds.self_size},
          {"detectors", std::move(detectors)}};
}

DetectorSet detector_set_from_json(const nlohmann::json& j) {
  DetectorSet ds;
  ds.cfg = encoding_from_json(j.at("encoding"));
  const auto& params = j.at("params");
  ds.params.detectors = params.at("d").get<std::size_t>();
  ds.params.md = params.at("md").get<double>();
  ds.params.seed = params.at("seed").get<std::uint64_t>();
  ds.params.max_attempts = params.value("max_attempts", std::size_t{0});
  ds.self_size = j.value("self_size", std::size_t{0});
  for (const auto& row : j.at("detectors")) {
    const auto levels = row.get<std::vector<int>>();
    LevelVector lv(static_cast<Eigen::Index>(levels.size()));
    for (std::size_t k = 0; k < levels.size(); ++k) {
      if (levels[k] < 0 || levels[k] > ds.cfg.max_level())
        throw FormatError("detector level out of range");
      lv[static_cast<Eigen::Index>(k)] = static_cast<Level>(levels[k]);
    }
    ds.detectors.push_back({ds.detectors.size(), Pattern(std::move(lv), ds.cfg.bits)});
  }
  if (ds.detectors.size() != ds.params.detectors)
    throw FormatError("detector count does not match params.d");
  ds.validate();
  return ds;
}

nlohmann::ordered_json to_json(const Grammar& g) {
  nlohmann::ordered_json productions = nlohmann::ordered_json::array();
  for (const auto& p : g.productions())
    productions.push_back({{"context", p.context},
                           {"nonterminal", p.nonterminal},
                           {"output", p.output},
                           {"count", p.count}});
  return {{"input_cfg", to_json(g.input_cfg())},
          {"output_cfg", to_json(g.output_cfg())},
          {"max_depth", g.max_depth()},
          {"productions", std::move(productions)}};
}

Grammar grammar_from_json(const nlohmann::json& j) {
  Grammar g(encoding_from_json(j.at("input_cfg")), encoding_from_json(j.at("output_cfg")),
            j.at("max_depth").get<std::size_t>());
  for (const auto& p : j.at("productions")) {
    Production prod{p.at("context").get<std::vector<Symbol>>(), p.at("nonterminal").get<Symbol>(),
                    p.at("output").get<Symbol>(), p.at("count").get<std::size_t>()};
    if (prod.depth() > g.max_depth()) throw FormatError("production deeper than max_depth");
    g.add(prod);
  }
  if (!g.closed()) throw FormatError("grammar violates the production closure invariant");
  return g;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out = open_for_write(path);
  out << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_for_write(path);
  out << text;
}

nlohmann::ordered_json round_numbers(const nlohmann::ordered_json& j) {
  if (j.is_number_float()) return round_sig9(j.get<double>());
  if (j.is_array() || j.is_object()) {
    nlohmann::ordered_json out = j;
    for (auto& v : out) v = round_numbers(v);
    return out;
  }
  return j;
}

}  // namespace sentinel

#ifndef SENTINEL_IO_HPP
#define SENTINEL_IO_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sentinel/grammar.hpp"
#include "sentinel/immune.hpp"
#include "sentinel/signals.hpp"

namespace sentinel {

/// A row that does not parse; `line` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid input: empty file, non-uniform timestamps, bad schema.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Columns read from a series CSV. Recognized layouts are `time,value`,
/// `time,u,y` and a bare `value` column (which needs an explicit dt).
struct SeriesTable {
  double dt = 0.0;
  std::vector<std::string> columns;  // value columns, time excluded
  std::vector<std::vector<double>> data;

  SignalSeries column(const std::string& name) const;
};

SeriesTable read_table(const std::filesystem::path& path, std::optional<double> dt = {});

/// Reads the single value column of a `time,value` (or bare value) file.
SignalSeries read_series(const std::filesystem::path& path, std::optional<double> dt = {});

/// Reads the u and y columns of a `time,u,y` file.
std::pair<SignalSeries, SignalSeries> read_paired_series(const std::filesystem::path& path,
                                                         std::optional<double> dt = {});

void write_series(const std::filesystem::path& path, const SignalSeries& series);
void write_paired_series(const std::filesystem::path& path, const SignalSeries& u,
                         const SignalSeries& y);

nlohmann::ordered_json to_json(const EncodingConfig& cfg);
EncodingConfig encoding_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const DetectorSet& ds);
DetectorSet detector_set_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const Grammar& g);
Grammar grammar_from_json(const nlohmann::json& j);

/// Writes UTF-8 JSON with two-space indentation and a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);
nlohmann::json read_json(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

/// Copy of `j` with every floating-point number rounded to 9 significant digits.
nlohmann::ordered_json round_numbers(const nlohmann::ordered_json& j);

}  // namespace sentinel

#endif  // SENTINEL_IO_HPP

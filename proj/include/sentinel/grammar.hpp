#ifndef SENTINEL_GRAMMAR_HPP
#define SENTINEL_GRAMMAR_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sentinel/edit_distance.hpp"
#include "sentinel/encoding.hpp"
#include "sentinel/signals.hpp"

namespace sentinel {

// Terminal symbols are output quantization levels (y_j); non-terminals are
// input quantization levels (U_i). The start symbol S and the wildcard
// non-terminal that closes every production are implicit.

struct Alphabets {
  std::vector<Symbol> terminals;
  std::vector<Symbol> nonterminals;
};

std::string terminal_name(Symbol s);
std::string nonterminal_name(Symbol s);

/// y_1..y_p U_k -> y_1..y_p y_{p+1} (followed by the wildcard).
struct Production {
  std::vector<Symbol> context;
  Symbol nonterminal = 0;
  Symbol output = 0;
  std::size_t count = 1;

  std::size_t depth() const { return context.size(); }
  friend bool operator==(const Production&, const Production&) = default;
};

struct CodifiedSample {
  std::vector<Symbol> nonterminals;
  std::vector<Symbol> terminals;
  ClampCounter input_clamps;
  ClampCounter output_clamps;
};

/// Codifies aligned input/output series into non-terminal and terminal strings.
CodifiedSample codify_series(const SignalSeries& u, const SignalSeries& y,
                             const EncodingConfig& input_cfg, const EncodingConfig& output_cfg);

class Grammar {
 public:
  Grammar() = default;
  Grammar(EncodingConfig input_cfg, EncodingConfig output_cfg, std::size_t max_depth);

  /// One inference pass over an aligned sample; counts accumulate across calls.
  /// A depth-0 production is recorded at every position; depth n+1 only when
  /// the depth-n production at that position existed before the position.
  void learn(std::span<const Symbol> nonterminals, std::span<const Symbol> terminals);

  /// Adds `count` occurrences of a production verbatim (used when loading).
  void add(const Production& p);

  /// Output chosen for an exact context: highest count, then lowest symbol.
  std::optional<Symbol> best_output(std::span<const Symbol> context, Symbol nonterminal) const;

  /// Deepest-context production matching the observed history, or
  /// kUnknownSymbol when none applies.
  Symbol predict_next(std::span<const Symbol> history, Symbol nonterminal) const;

  std::size_t count(std::span<const Symbol> context, Symbol nonterminal, Symbol output) const;

  /// All productions ordered by (nonterminal, context, output).
  std::vector<Production> productions() const;
  std::size_t size() const;
  Alphabets alphabets() const;

  /// Every depth p >= 1 production has its depth p-1 reduction.
  bool closed() const;

  const EncodingConfig& input_cfg() const { return input_cfg_; }
  const EncodingConfig& output_cfg() const { return output_cfg_; }
  std::size_t max_depth() const { return max_depth_; }

  friend bool operator==(const Grammar&, const Grammar&) = default;

 private:
  struct RuleKey {
    Symbol nonterminal;
    std::vector<Symbol> context;
    friend auto operator<=>(const RuleKey&, const RuleKey&) = default;
  };
  using Outputs = std::map<Symbol, std::size_t>;

  const Outputs* find(std::span<const Symbol> context, Symbol nonterminal) const;

  EncodingConfig input_cfg_;
  EncodingConfig output_cfg_;
  std::size_t max_depth_ = 0;
  std::map<RuleKey, Outputs> rules_;
};

Grammar infer_grammar(std::span<const Symbol> nonterminals, std::span<const Symbol> terminals,
                      std::size_t max_depth, const EncodingConfig& input_cfg = {},
                      const EncodingConfig& output_cfg = {});

/// Teacher-forced prediction: position t is predicted from the observed
/// terminals before t.
std::vector<Symbol> predict_word(const Grammar& grammar, std::span<const Symbol> nonterminals,
                                 std::span<const Symbol> observed_terminals);

struct LanguageMonitorConfig {
  std::size_t word_length = 50;
  double threshold = 10.0;

  void validate() const;
};

struct WordFault {
  std::size_t segment_index = 0;
  double distance = 0.0;
};

struct LanguageMonitorResult {
  std::vector<double> distances;  // one per complete word
  std::vector<WordFault> faults;
  CodifiedSample codified;
  std::vector<Symbol> predicted;

  bool abnormal() const { return !faults.empty(); }
};

/// Codifies with the grammar's stored configs, predicts the whole series once,
/// then compares consecutive non-overlapping words of word_length symbols.
LanguageMonitorResult monitor_language(const Grammar& grammar, const SignalSeries& u,
                                       const SignalSeries& y, const LanguageMonitorConfig& mcfg,
                                       const EditCosts& costs = {});

}  // namespace sentinel

#endif  // SENTINEL_GRAMMAR_HPP

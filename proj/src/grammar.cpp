#include "sentinel/grammar.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sentinel {

std::string terminal_name(Symbol s) {
  return s == kUnknownSymbol ? std::string("?") : "y" + std::to_string(s);
}

std::string nonterminal_name(Symbol s) { return "U" + std::to_string(s); }

CodifiedSample codify_series(const SignalSeries& u, const SignalSeries& y,
                             const EncodingConfig& input_cfg, const EncodingConfig& output_cfg) {
  if (u.samples.empty() || y.samples.empty())
    throw std::invalid_argument("cannot codify an empty series");
  if (u.size() != y.size()) throw std::invalid_argument("input and output series differ in length");

  CodifiedSample out;
  for (Level l : codify(u, input_cfg, &out.input_clamps))
    out.nonterminals.push_back(static_cast<Symbol>(l));
  for (Level l : codify(y, output_cfg, &out.output_clamps))
    out.terminals.push_back(static_cast<Symbol>(l));
  return out;
}

Grammar::Grammar(EncodingConfig input_cfg, EncodingConfig output_cfg, std::size_t max_depth)
    : input_cfg_(input_cfg), output_cfg_(output_cfg), max_depth_(max_depth) {}

void Grammar::learn(std::span<const Symbol> nonterminals, std::span<const Symbol> terminals) {
  if (nonterminals.size() != terminals.size())
    throw std::invalid_argument("non-terminal and terminal strings differ in length");

  for (std::size_t t = 0; t < terminals.size(); ++t) {
    const std::size_t deepest = std::min(max_depth_, t);
    for (std::size_t n = 0; n <= deepest; ++n) {
      RuleKey key{nonterminals[t], {terminals.begin() + static_cast<std::ptrdiff_t>(t - n),
                                    terminals.begin() + static_cast<std::ptrdiff_t>(t)}};
      std::size_t& count = rules_[std::move(key)][terminals[t]];
      const bool existed = count > 0;
      ++count;
      if (!existed) break;
    }
  }
}

void Grammar::add(const Production& p) {
  if (p.count == 0) throw std::invalid_argument("production count must be at least 1");
  rules_[RuleKey{p.nonterminal, p.context}][p.output] += p.count;
}

const Grammar::Outputs* Grammar::find(std::span<const Symbol> context, Symbol nonterminal) const {
  const auto it = rules_.find(RuleKey{nonterminal, {context.begin(), context.end()}});
  return it == rules_.end() ? nullptr : &it->second;
}

std::optional<Symbol> Grammar::best_output(std::span<const Symbol> context,
                                           Symbol nonterminal) const {
  const Outputs* outputs = find(context, nonterminal);
  if (!outputs || outputs->empty()) return std::nullopt;
  // std::map iterates in symbol order, so the first maximum wins ties.
  auto best = outputs->begin();
  for (auto it = outputs->begin(); it != outputs->end(); ++it)
    if (it->second > best->second) best = it;
  return best->first;
}

Symbol Grammar::predict_next(std::span<const Symbol> history, Symbol nonterminal) const {
  const std::size_t deepest = std::min(max_depth_, history.size());
  for (std::size_t p = deepest + 1; p-- > 0;) {
    if (auto out = best_output(history.last(p), nonterminal)) return *out;
  }
  return kUnknownSymbol;
}

std::size_t Grammar::count(std::span<const Symbol> context, Symbol nonterminal,
                           Symbol output) const {
  const Outputs* outputs = find(context, nonterminal);
  if (!outputs) return 0;
  const auto it = outputs->find(output);
  return it == outputs->end() ? 0 : it->second;
}

std::vector<Production> Grammar::productions() const {
  std::vector<Production> out;
  for (const auto& [key, outputs] : rules_)
    for (const auto& [symbol, n] : outputs) out.push_back({key.context, key.nonterminal, symbol, n});
  return out;
}

std::size_t Grammar::size() const {
  std::size_t n = 0;
  for (const auto& [key, outputs] : rules_) n += outputs.size();
  return n;
}

Alphabets Grammar::alphabets() const {
  std::set<Symbol> terminals, nonterminals;
  for (const auto& [key, outputs] : rules_) {
    nonterminals.insert(key.nonterminal);
    terminals.insert(key.context.begin(), key.context.end());
    for (const auto& [symbol, n] : outputs) terminals.insert(symbol);
  }
  return {{terminals.begin(), terminals.end()}, {nonterminals.begin(), nonterminals.end()}};
}

bool Grammar::closed() const {
  for (const auto& [key, outputs] : rules_) {
    if (key.context.empty()) continue;
    const std::span<const Symbol> reduced = std::span(key.context).subspan(1);
    for (const auto& [symbol, n] : outputs)
      if (count(reduced, key.nonterminal, symbol) == 0) return false;
  }
  return true;
}

Grammar infer_grammar(std::span<const Symbol> nonterminals, std::span<const Symbol> terminals,
                      std::size_t max_depth, const EncodingConfig& input_cfg,
                      const EncodingConfig& output_cfg) {
  if (terminals.empty()) throw std::invalid_argument("grammar inference needs a non-empty sample");
  Grammar g(input_cfg, output_cfg, max_depth);
  g.learn(nonterminals, terminals);
  return g;
}

std::vector<Symbol> predict_word(const Grammar& grammar, std::span<const Symbol> nonterminals,
                                 std::span<const Symbol> observed_terminals) {
  if (nonterminals.size() != observed_terminals.size())
    throw std::invalid_argument("non-terminal and terminal strings differ in length");
  std::vector<Symbol> predicted(observed_terminals.size());
  for (std::size_t t = 0; t < observed_terminals.size(); ++t)
    predicted[t] = grammar.predict_next(observed_terminals.first(t), nonterminals[t]);
  return predicted;
}

void LanguageMonitorConfig::validate() const {
  if (word_length < 1) throw std::invalid_argument("word length must be at least 1");
  if (!(threshold > 0.0)) throw std::invalid_argument("fault threshold must be positive");
}

LanguageMonitorResult monitor_language(const Grammar& grammar, const SignalSeries& u,
                                       const SignalSeries& y, const LanguageMonitorConfig& mcfg,
                                       const EditCosts& costs) {
  mcfg.validate();
  costs.validate();
  if (u.size() != y.size()) throw std::invalid_argument("input and output series differ in length");
  if (y.size() < mcfg.word_length)
    throw std::invalid_argument("series is shorter than one word");

  LanguageMonitorResult r;
  r.codified = codify_series(u, y, grammar.input_cfg(), grammar.output_cfg());
  r.predicted = predict_word(grammar, r.codified.nonterminals, r.codified.terminals);

  const std::span<const Symbol> observed(r.codified.terminals);
  const std::span<const Symbol> predicted(r.predicted);
  const std::size_t words = observed.size() / mcfg.word_length;
  r.distances.reserve(words);
  for (std::size_t s = 0; s < words; ++s) {
    const std::size_t off = s * mcfg.word_length;
    const double d = edit_distance(observed.subspan(off, mcfg.word_length),
                                   predicted.subspan(off, mcfg.word_length), costs);
    r.distances.push_back(d);
    if (d > mcfg.threshold) r.faults.push_back({s, d});
  }
  return r;
}

}  // namespace sentinel

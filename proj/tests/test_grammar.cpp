#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sentinel/grammar.hpp"

using namespace sentinel;

namespace {

constexpr Symbol a = 0, b = 1;
constexpr Symbol U0 = 0;

oracle::ProductionTable table_of(const Grammar& g) {
  oracle::ProductionTable t;
  for (const auto& p : g.productions())
    t[{p.nonterminal, std::vector<int>(p.context.begin(), p.context.end()), p.output}] = p.count;
  return t;
}

std::vector<Symbol> random_symbols(std::mt19937_64& rng, std::size_t n, int alphabet) {
  std::uniform_int_distribution<int> d(0, alphabet - 1);
  std::vector<Symbol> out(n);
  for (auto& s : out) s = d(rng);
  return out;
}

}  // namespace

TEST_CASE("codify_series") {
  const EncodingConfig in_cfg{2, 1, 0.0, 1.0, false}, out_cfg{3, 1, 0.0, 1.0, false};
  const SignalSeries u{1.0, {0.0, 0.0, 0.0}, "u"}, y{1.0, {1.0, 1.0, 1.0}, "y"};
  const auto c = codify_series(u, y, in_cfg, out_cfg);
  CHECK(c.nonterminals == std::vector<Symbol>{0, 0, 0});
  CHECK(c.terminals == std::vector<Symbol>{7, 7, 7});

  SignalSeries ramp{1.0, {}, "ramp"};
  for (int i = 0; i <= 100; ++i) ramp.samples.push_back(i / 100.0);
  const auto r = codify_series(ramp, ramp, in_cfg, EncodingConfig{1, 1, 0.0, 1.0, false});
  std::set<Symbol> distinct(r.terminals.begin(), r.terminals.end());
  CHECK(distinct == std::set<Symbol>{0, 1});

  CHECK_THROWS_AS(codify_series(SignalSeries{1.0, {}, ""}, SignalSeries{1.0, {}, ""}, in_cfg, out_cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(codify_series(u, SignalSeries{1.0, {1.0}, ""}, in_cfg, out_cfg),
                  std::invalid_argument);
}

TEST_CASE("inference: worked examples") {
  const std::vector<Symbol> one_u{U0}, one_y{a};
  const Grammar g1 = infer_grammar(one_u, one_y, 3);
  CHECK(table_of(g1) == oracle::ProductionTable{{{U0, {}, a}, 1}});

  const std::vector<Symbol> us{U0, U0, U0}, ys{a, b, b};
  Grammar g = infer_grammar(us, ys, 2);
  CHECK(table_of(g) == oracle::ProductionTable{
                           {{U0, {}, a}, 1}, {{U0, {}, b}, 2}, {{U0, {b}, b}, 1}});
  CHECK(g.count(std::vector<Symbol>{a}, U0, b) == 0);

  // A second pass doubles the shared counts and reaches one level deeper.
  g.learn(us, ys);
  CHECK(table_of(g) == oracle::ProductionTable{{{U0, {}, a}, 2},
                                               {{U0, {}, b}, 4},
                                               {{U0, {b}, b}, 2},
                                               {{U0, {a}, b}, 1},
                                               {{U0, {a, b}, b}, 1}});
  CHECK(g.closed());
  CHECK(g.size() == 5);

  CHECK_THROWS_AS(infer_grammar(us, one_y, 2), std::invalid_argument);
  CHECK_THROWS_AS(infer_grammar(std::vector<Symbol>{}, std::vector<Symbol>{}, 2), std::invalid_argument);
}

TEST_CASE("inference matches the snapshot oracle and stays closed") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t depth = trial % 5;
    const int n_alpha = 1 + trial % 3, t_alpha = 2 + trial % 4;
    Grammar g(EncodingConfig{}, EncodingConfig{}, depth);
    oracle::ProductionTable expected;
    for (int pass = 0; pass < 1 + trial % 3; ++pass) {
      const std::size_t len = 1 + rng() % 60;
      const auto nts = random_symbols(rng, len, n_alpha), ts = random_symbols(rng, len, t_alpha);
      g.learn(nts, ts);
      oracle::infer(expected, std::vector<int>(nts.begin(), nts.end()),
                    std::vector<int>(ts.begin(), ts.end()), depth);
    }
    CHECK(table_of(g) == expected);
    CHECK(g.closed());
    for (const auto& p : g.productions()) {
      CHECK(p.depth() <= depth);
      CHECK(p.count >= 1);
      if (p.depth() > 0) {
        const std::vector<Symbol> reduced(p.context.begin() + 1, p.context.end());
        CHECK(g.count(reduced, p.nonterminal, p.output) >= 1);
      }
    }
  }
}

TEST_CASE("closure check catches a missing reduction") {
  Grammar g(EncodingConfig{}, EncodingConfig{}, 2);
  g.add({{a, b}, U0, b, 1});
  g.add({{b}, U0, b, 1});
  CHECK_FALSE(g.closed());
  g.add({{}, U0, b, 1});
  CHECK(g.closed());
  CHECK_THROWS_AS(g.add({{}, U0, b, 0}), std::invalid_argument);
}

TEST_CASE("prediction") {
  const std::vector<Symbol> us{U0, U0, U0}, ys{a, b, b};
  const Grammar g = infer_grammar(us, ys, 2);

  // Empty history: (U0 -> b) count 2 beats (U0 -> a) count 1.
  CHECK(g.predict_next({}, U0) == b);
  CHECK(g.predict_next(std::vector<Symbol>{b}, U0) == b);
  CHECK(g.predict_next(std::vector<Symbol>{a}, U0) == b);  // falls back to depth 0
  CHECK(g.predict_next({}, 9) == kUnknownSymbol);

  const std::vector<Symbol> qn{U0, 9, U0}, qt{a, a, b};
  CHECK(predict_word(g, qn, qt) == std::vector<Symbol>{b, kUnknownSymbol, b});
  CHECK_THROWS_AS(predict_word(g, qn, std::vector<Symbol>{a}), std::invalid_argument);

  // Equal counts break toward the lower symbol.
  Grammar tie(EncodingConfig{}, EncodingConfig{}, 1);
  tie.add({{}, U0, 5, 2});
  tie.add({{}, U0, 3, 2});
  tie.add({{}, U0, 4, 1});
  CHECK(tie.predict_next({}, U0) == 3);

  // The deepest matching context wins even against a larger shallow count.
  Grammar deep(EncodingConfig{}, EncodingConfig{}, 2);
  deep.add({{}, U0, 1, 50});
  deep.add({{}, U0, 2, 1});
  deep.add({{7}, U0, 2, 1});
  CHECK(deep.predict_next(std::vector<Symbol>{3, 7}, U0) == 2);
  CHECK(deep.predict_next(std::vector<Symbol>{3, 6}, U0) == 1);
}

TEST_CASE("alphabets and names") {
  const std::vector<Symbol> us{0, 2, 2}, ys{5, 1, 5};
  const auto al = infer_grammar(us, ys, 1).alphabets();
  CHECK(al.nonterminals == std::vector<Symbol>{0, 2});
  CHECK(al.terminals == std::vector<Symbol>{1, 5});
  CHECK(terminal_name(3) == "y3");
  CHECK(terminal_name(kUnknownSymbol) == "?");
  CHECK(nonterminal_name(2) == "U2");
}

TEST_CASE("deterministic source replays with zero distance") {
  const auto src = fixture::deterministic_source();
  for (std::size_t depth = 1; depth <= 4; ++depth) {
    const auto sample = codify_series(src.u, src.y, src.cfg, src.cfg);
    const Grammar g = infer_grammar(sample.nonterminals, sample.terminals, depth, src.cfg, src.cfg);
    CHECK(g.closed());
    CHECK(predict_word(g, sample.nonterminals, sample.terminals) == sample.terminals);
    const auto r = monitor_language(g, src.u, src.y, {50, 10.0});
    CHECK(r.distances.size() == src.y.size() / 50);
    for (double d : r.distances) CHECK(d == 0.0);
    CHECK_FALSE(r.abnormal());
  }
}

TEST_CASE("language monitor thresholds per word") {
  const EncodingConfig cfg{1, 1, 0.0, 1.0, false};
  Grammar g(cfg, cfg, 0);
  g.add({{}, 0, 0, 1});

  SignalSeries u{1.0, std::vector<double>(120, 0.0), "u"};
  SignalSeries y{1.0, std::vector<double>(120, 0.0), "y"};
  for (std::size_t k = 55; k < 67; ++k) y.samples[k] = 1.0;  // 12 wrong symbols in word 1
  for (std::size_t k = 0; k < 10; ++k) y.samples[k] = 1.0;   // exactly 10 in word 0
  const auto r = monitor_language(g, u, y, {50, 10.0});
  REQUIRE(r.distances.size() == 2);  // trailing 20 samples dropped
  CHECK(r.distances[0] == 10.0);
  CHECK(r.distances[1] == 12.0);
  REQUIRE(r.faults.size() == 1);
  CHECK(r.faults[0].segment_index == 1);
  CHECK(r.faults[0].distance == 12.0);

  // An unseen input level yields the unknown symbol, which always costs.
  u.samples[110] = 1.0;
  const auto r2 = monitor_language(g, u, y, {50, 10.0});
  CHECK(r2.predicted[110] == kUnknownSymbol);
  CHECK(r2.distances[1] == 12.0);
  const auto r3 = monitor_language(g, u, y, {10, 0.5});
  CHECK(r3.distances[11] == 1.0);

  // Weighted substitution.
  const auto r4 = monitor_language(g, u, y, {50, 10.0}, EditCosts{0.5, 1.0, 1.0});
  CHECK(r4.distances[1] == 6.0);

  CHECK_THROWS_AS(monitor_language(g, u, y, {200, 10.0}), std::invalid_argument);
  CHECK_THROWS_AS(monitor_language(g, u, y, {0, 10.0}), std::invalid_argument);
  CHECK_THROWS_AS(monitor_language(g, u, y, {50, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(monitor_language(g, SignalSeries{1.0, {0.0}, ""}, y, {50, 10.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(monitor_language(g, u, y, {50, 10.0}, EditCosts{-1, 1, 1}), std::invalid_argument);
}

TEST_CASE("distances are bounded by the word length") {
  std::mt19937_64 rng(8);
  const EncodingConfig cfg{3, 1, 0.0, 7.0, false};
  const auto src = fixture::deterministic_source(3);
  const auto sample = codify_series(src.u, src.y, cfg, cfg);
  const Grammar g = infer_grammar(sample.nonterminals, sample.terminals, 3, cfg, cfg);
  SignalSeries u{1.0, {}, ""}, y{1.0, {}, ""};
  std::uniform_int_distribution<int> lv(0, 7);
  for (int i = 0; i < 500; ++i) {
    u.samples.push_back(lv(rng));
    y.samples.push_back(lv(rng));
  }
  const auto r = monitor_language(g, u, y, {25, 10.0});
  CHECK(r.predicted.size() == r.codified.terminals.size());
  for (double d : r.distances) {
    CHECK(d >= 0.0);
    CHECK(d <= 25.0);
  }
}

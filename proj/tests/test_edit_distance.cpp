#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "sentinel/edit_distance.hpp"

using namespace sentinel;

namespace {

std::vector<Symbol> symbols(const oracle::Word& w) { return {w.begin(), w.end()}; }

oracle::Word random_word(std::mt19937_64& rng, std::size_t max_len, int alphabet) {
  oracle::Word w(rng() % (max_len + 1));
  for (auto& s : w) s = static_cast<int>(rng() % static_cast<unsigned>(alphabet));
  return w;
}

}  // namespace

TEST_CASE("worked examples") {
  CHECK(edit_distance("abc", "abc") == 0.0);
  CHECK(edit_distance("", "abc") == 3.0);
  CHECK(edit_distance("abc", "") == 3.0);
  CHECK(edit_distance("kitten", "sitting") == 3.0);
  CHECK(edit_distance("flaw", "lawn") == 2.0);
  CHECK(edit_distance("", "") == 0.0);
}

TEST_CASE("exhaustive script search agrees with the DP") {
  const auto words = oracle::all_words(3, 4);
  REQUIRE(words.size() == 121);
  for (const oracle::Costs c : {oracle::Costs{1, 1, 1}, oracle::Costs{1.5, 1, 2}, oracle::Costs{3, 1, 1}}) {
    const EditCosts costs{c.substitute, c.insert, c.remove};
    for (const auto& from : words) {
      const auto reach = oracle::script_search(from, 3, 4, c);
      for (const auto& to : words) {
        const auto lhs = symbols(from), rhs = symbols(to);
        CHECK(edit_distance(lhs, rhs, costs) == reach.at(to));
      }
    }
  }
}

TEST_CASE("DP agrees with the full-matrix recurrence on random pairs") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_word(rng, 10, 4), y = random_word(rng, 10, 4);
    CHECK(edit_distance(symbols(x), symbols(y)) == oracle::wagner_fischer(x, y));
    const oracle::Costs c{0.7, 1.3, 0.4};
    CHECK(edit_distance(symbols(x), symbols(y), EditCosts{0.7, 1.3, 0.4}) ==
          doctest::Approx(oracle::wagner_fischer(x, y, c)).epsilon(1e-12));
  }
}

TEST_CASE("metric properties with unit costs") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 1000; ++i) {
    const auto x = symbols(random_word(rng, 8, 3)), y = symbols(random_word(rng, 8, 3)),
               z = symbols(random_word(rng, 8, 3));
    const double xy = edit_distance(x, y);
    CHECK(xy == edit_distance(y, x));
    CHECK((xy == 0.0) == (x == y));
    CHECK(xy <= edit_distance(x, z) + edit_distance(z, y));
    CHECK(xy <= static_cast<double>(std::max(x.size(), y.size())));
  }
}

TEST_CASE("unknown symbol equals nothing") {
  const std::vector<Symbol> u{kUnknownSymbol}, uu{kUnknownSymbol, 2};
  CHECK(edit_distance(u, u) == 1.0);
  CHECK(edit_distance(uu, std::vector<Symbol>{kUnknownSymbol, 2}) == 1.0);
  CHECK(edit_distance(u, std::vector<Symbol>{0}) == 1.0);
  CHECK(edit_distance(std::vector<Symbol>{}, u) == 1.0);
}

TEST_CASE("costs must be non-negative") {
  CHECK_THROWS_AS(edit_distance("a", "b", EditCosts{-1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(edit_distance("a", "b", EditCosts{1, -1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(edit_distance("a", "b", EditCosts{1, 1, NAN}), std::invalid_argument);
  CHECK(edit_distance("ab", "ba", EditCosts{0, 1, 1}) == 0.0);
}

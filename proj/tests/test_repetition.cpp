#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "powerword/repetition.hpp"

using namespace powerword;

namespace {

std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> as_tuples(const std::vector<Run>& runs) {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
  for (const auto& r : runs) out.emplace_back(r.start, r.length, r.period);
  return out;
}

}  // namespace

TEST_CASE("runs examples") {
  const auto a = maximal_repetitions(Word::parse("0110", 2));
  REQUIRE(a.size() == 1);
  CHECK(a[0] == Run{1, 2, 1, Rational(2)});
  const auto b = maximal_repetitions(Word::parse("00100", 2));
  REQUIRE(b.size() == 2);
  CHECK(b[0] == Run{0, 2, 1, Rational(2)});
  CHECK(b[1] == Run{3, 2, 1, Rational(2)});
  CHECK(maximal_repetitions(Word::parse("01", 2)).empty());
}

TEST_CASE("runs match the stretch scan on all binary words up to 12") {
  for (std::size_t len = 1; len <= 12; ++len) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << len); ++m) {
      const Word w = oracle::from_bits(m, len);
      REQUIRE(as_tuples(maximal_repetitions(w)) == oracle::runs(w));
    }
  }
}

TEST_CASE("runs match the stretch scan on random words") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 400; ++t) {
    const std::uint32_t sigma = 1 + static_cast<std::uint32_t>(rng() % 4);
    const Word w = oracle::random_word(rng, 1 + rng() % 120, sigma);
    const auto runs = maximal_repetitions(w);
    REQUIRE(as_tuples(runs) == oracle::runs(w));
    for (const auto& r : runs) CHECK(r.exponent == exponent_of(r.length, r.period));
  }
}

TEST_CASE("critical exponent examples") {
  CHECK(critical_exponent(Word::parse("000", 2)) == Rational(3));
  CHECK(critical_exponent(Word::parse("01010", 2)) == Rational(5, 2));
  CHECK(critical_exponent(Word::parse("0110100110010110", 2)) == Rational(2));
  CHECK(critical_exponent(Word()) == Rational(1));
  CHECK(brute_force_critical_exponent(Word::parse("0000", 2)) == Rational(4));
  CHECK(brute_force_critical_exponent(Word()) == Rational(1));
  const Word w = Word::parse("0100101", 2);
  CHECK(brute_force_critical_exponent(w) == critical_exponent(w));
  CHECK_THROWS_AS(brute_force_critical_exponent(Word(std::vector<Symbol>(kBruteForceLimit + 1, 0), 2)),
                  std::length_error);
}

TEST_CASE("critical exponent on square-free ternary words") {
  // Exponent below 2 exercises the sampled scan rather than the run list.
  const Word w = Word::parse("0120210120102012021012", 3);
  REQUIRE(maximal_repetitions(w).empty());
  CHECK(critical_exponent(w) == oracle::critical_exponent(w));
  std::mt19937_64 rng(5);
  int square_free = 0;
  for (int t = 0; t < 3000 && square_free < 60; ++t) {
    const Word v = oracle::random_word(rng, 4 + rng() % 30, 3 + static_cast<std::uint32_t>(rng() % 2));
    if (!maximal_repetitions(v).empty()) continue;
    ++square_free;
    REQUIRE(critical_exponent(v) == oracle::critical_exponent(v));
  }
  CHECK(square_free >= 20);
}

TEST_CASE("critical exponent equals both oracles on random words") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const Word w = oracle::random_word(rng, 1 + rng() % 60, 2 + static_cast<std::uint32_t>(rng() % 3));
    const Rational ce = critical_exponent(w);
    REQUIRE(ce == oracle::critical_exponent(w));
    REQUIRE(ce == brute_force_critical_exponent(w));
  }
}

TEST_CASE("defect_to_periodic") {
  CHECK(defect_to_periodic(Word::parse("0101", 2), 2) == 0);
  CHECK(defect_to_periodic(Word::parse("0111", 2), 2) == 1);
  CHECK(defect_to_periodic(Word::parse("0110", 2), 1) == 2);
  std::mt19937_64 rng(29);
  for (int t = 0; t < 500; ++t) {
    const Word w = oracle::random_word(rng, 1 + rng() % 40, 1 + static_cast<std::uint32_t>(rng() % 5));
    const std::size_t p = 1 + rng() % w.size();
    const std::size_t d = defect_to_periodic(w, p);
    REQUIRE(d == oracle::defect(w, p));
    CHECK((d == 0) == is_periodic(w, p));
  }
}

TEST_CASE("approximate_power_defect") {
  CHECK(*approximate_power_defect(Word::parse("0110", 2), Rational(2)) == PowerDefect{2, 1});
  CHECK(*approximate_power_defect(Word::parse("010101", 2), Rational(3)) == PowerDefect{0, 2});
  CHECK(*approximate_power_defect(Word::parse("0011", 2), Rational(4)) == PowerDefect{2, 1});
  CHECK_FALSE(approximate_power_defect(Word::parse("011", 2), Rational(4)).has_value());
  CHECK_THROWS(approximate_power_defect(Word::parse("0110", 2), Rational(1)));
}

TEST_CASE("min_window_defect matches the window scan") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 150; ++t) {
    const Word w = oracle::random_word(rng, 2 + rng() % 40, 2 + static_cast<std::uint32_t>(rng() % 2));
    const std::size_t len = 2 + rng() % (w.size() - 1);
    const Rational beta = t % 2 == 0 ? Rational(2) : Rational(3, 2);
    const auto got = min_window_defect(w, len, beta);
    const auto want = oracle::min_window_defect(w, len, beta);
    REQUIRE(got.has_value() == want.has_value());
    if (!got) continue;
    CHECK(got->window_len == len);
    CHECK(std::make_tuple(got->defect, got->period, got->window_start) == *want);
  }
}

TEST_CASE("check_period_difference") {
  CHECK(check_period_difference(Word::parse("01010", 2), 4, 2));
  CHECK(check_period_difference(Word::parse("00000", 2), 3, 1));
  CHECK(check_period_difference(Word::parse("010010", 2), 5, 3));
  CHECK_THROWS_AS(check_period_difference(Word::parse("0110", 2), 3, 1), PreconditionError);
  CHECK_THROWS_AS(check_period_difference(Word::parse("0101", 2), 2, 2), PreconditionError);
  CHECK_THROWS_AS(check_period_difference(Word::parse("01", 2), 3, 1), PreconditionError);
}

#include <doctest.h>

#include "oracles.hpp"
#include "powerword/repetition.hpp"
#include "powerword/synth.hpp"

using namespace powerword;

namespace {

SynthesisConfig base_config() {
  SynthesisConfig cfg;
  cfg.alpha = Rational(3, 2);
  cfg.beta = Rational(3);
  cfg.n = 1024;
  cfg.k = 2;
  cfg.seed = 1;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  SynthesisConfig cfg = base_config();
  cfg.alpha = Rational(3);
  CHECK_THROWS(cfg.validate());
  cfg = base_config();
  cfg.layer_period = 1;
  CHECK_THROWS(cfg.validate());
  cfg = base_config();
  cfg.n = 0;
  CHECK_THROWS(cfg.validate());
  cfg = base_config();
  CHECK(cfg.effective_window_min() == 6);
  cfg.window_min = 64;
  CHECK(cfg.effective_window_min() == 64);
}

TEST_CASE("synthesis with two implants") {
  const auto out = synthesize(base_config());
  const auto& rep = out.report;
  CHECK(rep.clean());
  CHECK(rep.implanted == std::vector<Rational>{Rational(4, 3), Rational(11, 8)});
  REQUIRE(rep.intervals.size() == 2);
  for (const auto& iv : rep.intervals) {
    CHECK(iv.periodic);
    CHECK(is_periodic(out.word.substr(iv.interval.start, iv.interval.length), iv.interval.period));
  }
  CHECK(rep.forbidden_runs == 0);
  // Every run of exponent >= 3 has a period below p_min.
  for (const auto& r : maximal_repetitions(out.word)) {
    if (r.exponent >= Rational(3)) CHECK(r.period < out.report.config.p_min);
  }
  CHECK(verify(out.word, out.report.config) == rep);
  CHECK(render_report(verify(out.word, out.report.config)) == render_report(rep));
}

TEST_CASE("defect sweep from 64 is positive") {
  SynthesisConfig cfg = base_config();
  cfg.window_min = 64;
  const auto out = synthesize(cfg);
  REQUIRE(out.report.epsilon_hat.has_value());
  CHECK(*out.report.epsilon_hat > Rational(0));
  CHECK(out.report.defects.front().window_len == 64);
  CHECK(out.report.defects.back().window_len == 1024);
}

TEST_CASE("synthesis without implants") {
  SynthesisConfig cfg = base_config();
  cfg.k = 0;
  const auto out = synthesize(cfg);
  CHECK(out.report.intervals.empty());
  for (const auto& r : maximal_repetitions(out.word)) {
    if (r.length >= 6) CHECK(r.exponent < Rational(3));
  }
  SynthesisConfig shorter = base_config();
  shorter.n = 30;
  const auto s = synthesize(shorter);
  CHECK(s.report.intervals.empty());
  cfg.n = 30;
  CHECK(synthesize(cfg).word == s.word);
}

TEST_CASE("all-zero word is a power") {
  SynthesisConfig cfg = base_config();
  cfg.beta = Rational(2);
  cfg.n = 64;
  const Word zeros(std::vector<Symbol>(64, 0), 2);
  const auto rep = verify(zeros, cfg);
  REQUIRE(rep.epsilon_hat.has_value());
  CHECK(*rep.epsilon_hat == Rational(0));
  CHECK(rep.forbidden_runs == 1);
  CHECK_FALSE(rep.clean());
}

TEST_CASE("layers keep the implanted periods") {
  SynthesisConfig cfg = base_config();
  cfg.k = 3;
  cfg.n = 2048;
  cfg.layer_period = 2;
  cfg.brackets = true;
  const auto out = synthesize(cfg);
  CHECK(out.word.alphabet_size() == 12);
  CHECK(out.report.implanted == std::vector<Rational>{Rational(11, 8), Rational(17, 12)});
  REQUIRE(out.report.layers.size() == 3);
  CHECK(out.report.layers[1] == periodic_layer(2, cfg.n));
  for (const auto& iv : out.report.intervals) {
    CHECK(iv.periodic);
    CHECK(iv.binary_critical_exponent >= iv.interval.exponent);
  }
  CHECK(verify(out.word, cfg) == out.report);
  CHECK_THROWS(verify(out.report.layers[0], cfg));

  SynthesisConfig plain = cfg;
  plain.brackets = false;
  const auto p = synthesize(plain);
  for (const auto& iv : p.report.intervals) {
    CHECK(is_periodic(p.word.substr(iv.interval.start, iv.interval.length), iv.interval.period));
  }
}

TEST_CASE("report text") {
  const auto out = synthesize(base_config());
  const std::string text = render_report(out.report);
  CHECK(text.rfind("powerword-report v1\n", 0) == 0);
  CHECK(text.find("\nstatus ok\n") != std::string::npos);
  CHECK(text.find("\ninterval 1 start=40 length=4 period=3 exponent=4/3 periodic=1") != std::string::npos);
  CHECK(render_trace(out.trace).rfind("trace seed=1 rounds=", 0) == 0);
}

TEST_CASE("resampling failure propagates") {
  SynthesisConfig cfg = base_config();
  cfg.p_min = 1;
  cfg.max_rounds = 5;
  CHECK_THROWS_AS(synthesize(cfg), ResampleExhausted);
}

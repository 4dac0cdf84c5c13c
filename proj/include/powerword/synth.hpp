#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powerword/lll.hpp"
#include "powerword/pattern.hpp"
#include "powerword/rational.hpp"
#include "powerword/word.hpp"

namespace powerword {

struct SynthesisConfig {
  Rational alpha{3, 2};
  Rational beta{3, 1};
  std::size_t n = 1024;
  std::size_t k = 3;
  std::size_t gap_factor = 10;
  std::size_t layer_period = 0;  // M; 0 disables the periodic layer
  bool brackets = false;
  std::size_t p_min = 2;
  std::uint64_t seed = 1;
  std::size_t max_rounds = 1'000'000;
  std::size_t window_min = 0;  // 0 means ceil(beta * p_min)

  /// Throws std::invalid_argument unless 1 < alpha < beta, n >= 1,
  /// M = 0 or M >= 2, p_min >= 1 and gap_factor >= 1.
  void validate() const;
  [[nodiscard]] std::size_t effective_window_min() const;
};

/// Exponents kept after dropping periods the layer of period M would destroy.
std::vector<Rational> implanted_exponents(const SynthesisConfig& cfg);
RepetitionPattern synthesis_pattern(const SynthesisConfig& cfg);

struct IntervalReport {
  ActiveInterval interval;
  bool periodic = false;              // binary layer has period q_i on the interval
  Rational binary_critical_exponent;  // of the binary layer restricted to the interval
  friend bool operator==(const IntervalReport&, const IntervalReport&) = default;
};

struct DefectLine {
  std::size_t window_len = 0;
  std::size_t defect = 0;
  std::size_t period = 0;
  std::size_t window_start = 0;
  Rational ratio;
  friend bool operator==(const DefectLine&, const DefectLine&) = default;
};

/// min_window_defect at window lengths min_len, 2 min_len, ... below |w|, and
/// at |w| itself. Lengths with no admissible period are skipped.
std::vector<DefectLine> defect_sweep(const Word& w, const Rational& beta, std::size_t min_len);

/// Everything here is recomputed from the word by verify.
struct SynthesisReport {
  SynthesisConfig config;
  Word word;
  std::vector<Word> layers;  // binary, then periodic and bracket when enabled
  std::vector<Rational> implanted;
  std::vector<IntervalReport> intervals;  // implanted intervals lying inside [0, n)
  Rational critical_exponent;
  std::size_t run_count = 0;
  std::optional<Rational> max_unexplained_exponent;
  std::size_t forbidden_runs = 0;
  Rational free_density;
  std::vector<DefectLine> defects;
  std::optional<Rational> epsilon_hat;

  /// True when every interval kept its period and no forbidden run exists.
  [[nodiscard]] bool clean() const;
  friend bool operator==(const SynthesisReport& a, const SynthesisReport& b);
};

struct Synthesis {
  Word word;
  SynthesisReport report;
  ResampleTrace trace;
};

/// enumerate_exponents -> layout_intervals -> resample_fill -> materialize,
/// then the optional periodic and bracket layers. Propagates
/// ResampleExhausted when resampling runs out of rounds.
Synthesis synthesize(const SynthesisConfig& cfg);

/// Recomputes the report from a (possibly layered) word and its config.
SynthesisReport verify(const Word& word, const SynthesisConfig& cfg);

/// "powerword-report v1" key-value text.
std::string render_report(const SynthesisReport& report);
std::string render_trace(const ResampleTrace& trace);

}  // namespace powerword

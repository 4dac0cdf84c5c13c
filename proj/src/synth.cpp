#include "powerword/synth.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "powerword/repetition.hpp"

namespace powerword {

void SynthesisConfig::validate() const {
  if (!(Rational(1) < alpha && alpha < beta)) throw std::invalid_argument("config: need 1 < alpha < beta");
  if (n == 0) throw std::invalid_argument("config: n must be positive");
  if (layer_period == 1) throw std::invalid_argument("config: layer period must be 0 or at least 2");
  if (p_min == 0) throw std::invalid_argument("config: p_min must be positive");
  if (gap_factor == 0) throw std::invalid_argument("config: gap factor must be positive");
}

std::size_t SynthesisConfig::effective_window_min() const {
  if (window_min != 0) return std::max<std::size_t>(window_min, 2);
  return std::max<std::size_t>(window_length(beta, p_min), 2);
}

std::vector<Rational> implanted_exponents(const SynthesisConfig& cfg) {
  auto rs = enumerate_exponents(cfg.alpha, cfg.k);
  if (cfg.layer_period > 0) {
    const auto m = static_cast<std::int64_t>(cfg.layer_period);
    std::erase_if(rs, [m](const Rational& r) { return r.den() % m != 0; });
  }
  return rs;
}

RepetitionPattern synthesis_pattern(const SynthesisConfig& cfg) {
  const auto rs = implanted_exponents(cfg);
  return layout_intervals(rs, cfg.gap_factor);
}

bool SynthesisReport::clean() const {
  if (forbidden_runs != 0) return false;
  return std::all_of(intervals.begin(), intervals.end(), [](const IntervalReport& r) { return r.periodic; });
}

bool operator==(const SynthesisReport& a, const SynthesisReport& b) { return render_report(a) == render_report(b); }

Synthesis synthesize(const SynthesisConfig& cfg) {
  cfg.validate();
  const RepetitionPattern pattern = synthesis_pattern(cfg);
  auto filled = resample_fill(pattern, cfg.n, cfg.beta, cfg.p_min, cfg.seed, cfg.max_rounds);
  Word word = materialize(pattern, filled.tau, cfg.n);
  if (cfg.layer_period > 0) word = cartesian_product(word, periodic_layer(cfg.layer_period, cfg.n));
  if (cfg.brackets) word = cartesian_product(word, bracket_layer(pattern, cfg.n));
  Synthesis out{word, verify(word, cfg), std::move(filled.trace)};
  return out;
}

SynthesisReport verify(const Word& word, const SynthesisConfig& cfg) {
  cfg.validate();
  if (word.size() != cfg.n) throw std::invalid_argument("verify: word length differs from config n");
  const std::uint32_t periodic_sigma = cfg.layer_period > 0 ? static_cast<std::uint32_t>(cfg.layer_period) : 1;
  const std::uint32_t bracket_sigma = cfg.brackets ? 3 : 1;
  const std::uint32_t rest = periodic_sigma * bracket_sigma;
  if (word.alphabet_size() != 2 * rest) throw std::invalid_argument("verify: alphabet does not match the configured layers");

  SynthesisReport report;
  report.config = cfg;
  report.word = word;
  const RepetitionPattern pattern = synthesis_pattern(cfg);
  report.implanted = implanted_exponents(cfg);

  std::vector<Symbol> binary(word.size()), periodic(word.size()), bracket(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    binary[i] = word[i] / rest;
    periodic[i] = (word[i] / bracket_sigma) % periodic_sigma;
    bracket[i] = word[i] % bracket_sigma;
  }
  const Word binary_layer(std::move(binary), 2);
  if (rest > 1) {
    report.layers.push_back(binary_layer);
    if (cfg.layer_period > 0) report.layers.emplace_back(std::move(periodic), periodic_sigma);
    if (cfg.brackets) report.layers.emplace_back(std::move(bracket), bracket_sigma);
  }

  std::size_t longest = 1;
  for (const auto& iv : pattern.intervals) {
    if (iv.end() > cfg.n) continue;
    const Word piece = binary_layer.substr(iv.start, iv.length);
    report.intervals.push_back(IntervalReport{iv, is_periodic(piece, iv.period), critical_exponent(piece)});
    longest = std::max(longest, iv.length);
  }

  report.critical_exponent = critical_exponent(word);
  const auto runs = maximal_repetitions(word);
  report.run_count = runs.size();
  const Rational forbidden_len = cfg.beta * Rational(static_cast<std::int64_t>(cfg.p_min));
  for (const auto& run : runs) {
    const bool explained = std::any_of(pattern.intervals.begin(), pattern.intervals.end(), [&](const ActiveInterval& iv) {
      return run.start >= iv.start && run.start + run.length <= iv.end() && run.period % iv.period == 0;
    });
    if (explained) continue;
    if (!report.max_unexplained_exponent || run.exponent > *report.max_unexplained_exponent) {
      report.max_unexplained_exponent = run.exponent;
    }
    if (run.exponent >= cfg.beta && Rational(static_cast<std::int64_t>(run.length)) >= forbidden_len) {
      ++report.forbidden_runs;
    }
  }

  report.free_density = min_free_density(pattern, cfg.n, longest);

  report.defects = defect_sweep(word, cfg.beta, cfg.effective_window_min());
  for (const auto& d : report.defects) {
    if (!report.epsilon_hat || d.ratio < *report.epsilon_hat) report.epsilon_hat = d.ratio;
  }
  return report;
}

std::vector<DefectLine> defect_sweep(const Word& w, const Rational& beta, std::size_t min_len) {
  min_len = std::max<std::size_t>(min_len, 2);
  std::vector<std::size_t> grid;
  for (std::size_t len = min_len; len < w.size(); len *= 2) grid.push_back(len);
  if (w.size() >= min_len) grid.push_back(w.size());
  std::vector<DefectLine> out;
  for (std::size_t len : grid) {
    const auto best = min_window_defect(w, len, beta);
    if (!best) continue;
    const Rational ratio(static_cast<std::int64_t>(best->defect), static_cast<std::int64_t>(len));
    out.push_back(DefectLine{len, best->defect, best->period, best->window_start, ratio});
  }
  return out;
}

std::string render_report(const SynthesisReport& r) {
  std::ostringstream out;
  const auto& c = r.config;
  out << "powerword-report v1\n";
  out << "config alpha=" << c.alpha.to_string() << " beta=" << c.beta.to_string() << " n=" << c.n << " k=" << c.k
      << " gap_factor=" << c.gap_factor << " layer_M=" << c.layer_period << " brackets=" << (c.brackets ? 1 : 0)
      << " p_min=" << c.p_min << " seed=" << c.seed << " max_rounds=" << c.max_rounds
      << " window_min=" << c.effective_window_min() << '\n';
  out << "alphabet " << r.word.alphabet_size() << '\n';
  out << "word " << r.word.to_string() << '\n';
  static const char* const names[] = {"binary", "periodic", "bracket"};
  for (std::size_t i = 0; i < r.layers.size(); ++i) {
    const char* name = names[0];
    if (i == 1) name = c.layer_period > 0 ? names[1] : names[2];
    if (i == 2) name = names[2];
    out << "layer " << name << ' ' << r.layers[i].to_string() << '\n';
  }
  out << "implanted " << r.implanted.size();
  for (const auto& e : r.implanted) out << ' ' << e.to_string();
  out << '\n';
  for (std::size_t i = 0; i < r.intervals.size(); ++i) {
    const auto& iv = r.intervals[i];
    out << "interval " << i + 1 << " start=" << iv.interval.start << " length=" << iv.interval.length
        << " period=" << iv.interval.period << " exponent=" << iv.interval.exponent.to_string()
        << " periodic=" << (iv.periodic ? 1 : 0) << " binary_critical_exponent=" << iv.binary_critical_exponent.to_string()
        << '\n';
  }
  out << "critical_exponent " << r.critical_exponent.to_string() << '\n';
  out << "runs " << r.run_count << '\n';
  out << "max_unexplained_run_exponent "
      << (r.max_unexplained_exponent ? r.max_unexplained_exponent->to_string() : std::string("none")) << '\n';
  out << "forbidden_runs " << r.forbidden_runs << '\n';
  out << "free_density " << r.free_density.to_string() << '\n';
  for (const auto& d : r.defects) {
    out << "defect len=" << d.window_len << " defect=" << d.defect << " period=" << d.period
        << " start=" << d.window_start << " ratio=" << d.ratio.to_string() << '\n';
  }
  out << "epsilon_hat " << (r.epsilon_hat ? r.epsilon_hat->to_string() : std::string("none")) << '\n';
  out << "status " << (r.clean() ? "ok" : "forbidden") << '\n';
  return out.str();
}

std::string render_trace(const ResampleTrace& trace) {
  std::ostringstream out;
  std::size_t longest = 0;
  for (const auto& e : trace.resampled) longest = std::max(longest, e.period);
  out << "trace seed=" << trace.seed << " rounds=" << trace.rounds << " max_period=" << longest << '\n';
  return out.str();
}

}  // namespace powerword

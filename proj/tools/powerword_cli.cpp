#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "powerword/codec.hpp"
#include "powerword/lll.hpp"
#include "powerword/pattern.hpp"
#include "powerword/repetition.hpp"
#include "powerword/synth.hpp"
#include "powerword/word.hpp"

using namespace powerword;

namespace {

constexpr int kResampleFailure = 2;
constexpr int kForbiddenPower = 3;
constexpr const char* kReportHeader = "powerword-report v1";

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

// "key=value key=value" -> map
std::map<std::string, std::string> fields(std::string_view line) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

struct ParsedReport {
  SynthesisConfig config;
  Word word;
  std::string body;  // report text up to and including the status line
};

ParsedReport parse_report(const std::string& text) {
  ParsedReport r;
  std::istringstream in(text);
  std::string line, word_text;
  std::uint32_t sigma = 0;
  bool have_config = false;
  while (std::getline(in, line)) {
    if (line.rfind("trace ", 0) == 0) break;
    r.body += line + '\n';
    if (line.rfind("config ", 0) == 0) {
      auto f = fields(line);
      auto& c = r.config;
      c.alpha = Rational::parse(f.at("alpha"));
      c.beta = Rational::parse(f.at("beta"));
      c.n = std::stoull(f.at("n"));
      c.k = std::stoull(f.at("k"));
      c.gap_factor = std::stoull(f.at("gap_factor"));
      c.layer_period = std::stoull(f.at("layer_M"));
      c.brackets = f.at("brackets") == "1";
      c.p_min = std::stoull(f.at("p_min"));
      c.seed = std::stoull(f.at("seed"));
      c.max_rounds = std::stoull(f.at("max_rounds"));
      c.window_min = std::stoull(f.at("window_min"));
      have_config = true;
    } else if (line.rfind("alphabet ", 0) == 0) {
      sigma = static_cast<std::uint32_t>(std::stoul(line.substr(9)));
    } else if (line.rfind("word ", 0) == 0) {
      word_text = line.substr(5);
    }
  }
  if (!have_config || sigma == 0) throw std::runtime_error("report lacks config or alphabet line");
  r.word = Word::parse(word_text, sigma);
  return r;
}

std::string analyze_word(const Word& w, const Rational& beta, std::size_t min_window) {
  std::ostringstream out;
  out << kReportHeader << '\n';
  out << "analysis beta=" << beta.to_string() << " min_window=" << min_window << '\n';
  out << "alphabet " << w.alphabet_size() << '\n';
  out << "word " << w.to_string() << '\n';
  const auto runs = maximal_repetitions(w);
  std::size_t at_least_beta = 0;
  for (const auto& r : runs) {
    out << "run start=" << r.start << " length=" << r.length << " period=" << r.period
        << " exponent=" << r.exponent.to_string() << '\n';
    if (r.exponent >= beta) ++at_least_beta;
  }
  out << "runs " << runs.size() << '\n';
  out << "runs_at_least_beta " << at_least_beta << '\n';
  out << "critical_exponent " << critical_exponent(w).to_string() << '\n';
  std::optional<Rational> eps;
  for (const auto& d : defect_sweep(w, beta, min_window)) {
    out << "defect len=" << d.window_len << " defect=" << d.defect << " period=" << d.period
        << " start=" << d.window_start << " ratio=" << d.ratio.to_string() << '\n';
    if (!eps || d.ratio < *eps) eps = d.ratio;
  }
  out << "epsilon_hat " << (eps ? eps->to_string() : std::string("none")) << '\n';
  return out.str();
}

std::string fixed(double x) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(4);
  s << x;
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Words with prescribed fractional powers: synthesis, analysis and codecs"};
  app.require_subcommand(1);

  // generate
  SynthesisConfig cfg;
  std::string alpha_text = "3/2", beta_text = "3", gen_out;
  auto* gen = app.add_subcommand("generate", "Synthesize a word and print its report");
  gen->add_option("--alpha", alpha_text, "Target exponent alpha (p/q)")->required();
  gen->add_option("--beta", beta_text, "Forbidden exponent beta (p/q)")->required();
  gen->add_option("--n", cfg.n, "Word length")->required();
  gen->add_option("--k", cfg.k, "Number of implanted exponents");
  gen->add_option("--gap-factor", cfg.gap_factor, "Gap multiplier between active intervals");
  gen->add_option("--layer-M", cfg.layer_period, "Period of the periodic layer (0 = off)");
  gen->add_flag("--brackets", cfg.brackets, "Add the bracket layer");
  gen->add_option("--p-min", cfg.p_min, "Smallest forbidden period");
  gen->add_option("--seed", cfg.seed, "Generator seed");
  gen->add_option("--max-rounds", cfg.max_rounds, "Resampling budget");
  gen->add_option("--window-min", cfg.window_min, "Smallest window of the defect sweep (0 = ceil(beta p_min))");
  gen->add_option("--out", gen_out, "Write the report here instead of stdout");

  // analyze
  std::string an_in, an_beta = "3", an_out;
  std::size_t an_window = 0;
  auto* an = app.add_subcommand("analyze", "Runs, critical exponent and defects of words or a report");
  an->add_option("--in", an_in, "Word file or powerword report")->required();
  an->add_option("--beta", an_beta, "Exponent for the defect sweep (p/q)");
  an->add_option("--min-window", an_window, "Smallest window of the defect sweep (0 = ceil(2 beta))");
  an->add_option("--out", an_out, "Write here instead of stdout");

  // pattern
  std::string pat_alpha;
  std::size_t pat_k = 3, pat_gap = 10, pat_classes = 0;
  auto* pat = app.add_subcommand("pattern", "Print the active intervals as 's p q r_num r_den'");
  pat->add_option("--alpha", pat_alpha, "Target exponent alpha (p/q)")->required();
  pat->add_option("--k", pat_k, "Number of exponents")->required();
  pat->add_option("--gap-factor", pat_gap, "Gap multiplier");
  pat->add_option("--classes", pat_classes, "Also print c(i) for i below this bound");

  // lll
  auto* lll = app.add_subcommand("lll", "Local lemma utilities");
  lll->require_subcommand(1);
  std::string gamma_text, lll_beta;
  auto* thr = lll->add_subcommand("threshold", "Certified smallest N");
  thr->add_option("--gamma", gamma_text, "gamma (p/q)")->required();
  thr->add_option("--beta", lll_beta, "beta (p/q)")->required();
  std::string events_path;
  auto* chk = lll->add_subcommand("check", "Exact asymmetric local lemma check of an event file");
  chk->add_option("--events", events_path, "Event file")->required();

  // codec
  auto* codec = app.add_subcommand("codec", "Description-length codecs for powers");
  codec->require_subcommand(1);
  std::string enc_in, enc_out, enc_mode = "exact", enc_beta = "2";
  std::size_t enc_period = 0;
  auto* enc = codec->add_subcommand("encode", "Encode every word of a word file");
  enc->add_option("--in", enc_in, "Word file")->required();
  enc->add_option("--out", enc_out, "Code file (stdout if absent)");
  enc->add_option("--mode", enc_mode, "exact or approx")->check(CLI::IsMember({"exact", "approx"}));
  enc->add_option("--period", enc_period, "Period (default: smallest period, or the best beta-power period)");
  enc->add_option("--beta", enc_beta, "Exponent bound used to pick the approx period");
  std::string dec_in, dec_out;
  auto* dec = codec->add_subcommand("decode", "Decode a code file back to a word file");
  dec->add_option("--in", dec_in, "Code file")->required();
  dec->add_option("--out", dec_out, "Word file (stdout if absent)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      cfg.alpha = Rational::parse(alpha_text);
      cfg.beta = Rational::parse(beta_text);
      Synthesis result;
      try {
        result = synthesize(cfg);
      } catch (const ResampleExhausted& e) {
        std::cerr << "error: " << e.what() << '\n' << render_trace(e.trace());
        return kResampleFailure;
      }
      emit(render_report(result.report) + render_trace(result.trace), gen_out);
      return result.report.clean() ? 0 : kForbiddenPower;
    }

    if (*an) {
      const std::string text = slurp(an_in);
      if (text.rfind(kReportHeader, 0) == 0 && text.find("\nconfig ") != std::string::npos) {
        const ParsedReport parsed = parse_report(text);
        const SynthesisReport report = verify(parsed.word, parsed.config);
        const std::string body = render_report(report);
        emit(body + "reproduced " + (body == parsed.body ? "yes" : "no") + '\n', an_out);
        return report.clean() ? 0 : kForbiddenPower;
      }
      std::istringstream in(text);
      const WordFile file = read_word_file(in);
      const Rational beta = Rational::parse(an_beta);
      const std::size_t min_window =
          an_window != 0 ? an_window : static_cast<std::size_t>(ceil(beta * Rational(2)));
      std::string out;
      for (const auto& w : file.words) out += analyze_word(w, beta, min_window);
      emit(out, an_out);
      return 0;
    }

    if (*pat) {
      const auto rs = enumerate_exponents(Rational::parse(pat_alpha), pat_k);
      const auto pattern = layout_intervals(rs, pat_gap);
      std::cout << "# s p q r_num r_den\n";
      for (const auto& iv : pattern.intervals) {
        std::cout << iv.start << ' ' << iv.length << ' ' << iv.period << ' ' << iv.exponent.num() << ' '
                  << iv.exponent.den() << '\n';
      }
      if (pat_classes > 0) {
        const ClassMap classes(pattern);
        for (std::size_t i = 0; i < pat_classes; ++i) std::cout << "c " << i << ' ' << classes.class_of(i) << '\n';
      }
      return 0;
    }

    if (*thr) {
      std::cout << threshold_n(Rational::parse(gamma_text), Rational::parse(lll_beta)) << '\n';
      return 0;
    }

    if (*chk) {
      std::ifstream in(events_path);
      if (!in) throw std::runtime_error("cannot open " + events_path);
      const EventSystem system = read_event_file(in);
      const AsymmetricCheck result = check_asymmetric_condition(system);
      std::cout << "verdict " << (result.holds ? "holds" : "fails") << '\n';
      std::cout << "events " << system.events.size() << " variables " << system.variable_count << '\n';
      for (std::size_t i = 0; i < result.events.size(); ++i) {
        const auto& e = result.events[i];
        std::cout << "event " << i << " neighbours=" << e.neighbours << " lhs=" << e.lhs << " rhs=" << e.rhs
                  << " holds=" << (e.holds ? 1 : 0) << '\n';
      }
      return 0;
    }

    if (*enc) {
      std::ifstream in(enc_in);
      if (!in) throw std::runtime_error("cannot open " + enc_in);
      const WordFile file = read_word_file(in);
      const bool approx = enc_mode == "approx";
      const Rational beta = Rational::parse(enc_beta);
      std::ostringstream out;
      out << "#codec " << enc_mode << " alphabet " << file.alphabet_size << '\n';
      for (std::size_t i = 0; i < file.words.size(); ++i) {
        const Word& w = file.words[i];
        if (w.empty()) throw std::invalid_argument("codec: empty word on line " + std::to_string(i + 1));
        std::size_t p = enc_period;
        if (p == 0 && !approx) p = smallest_period(w);
        if (p == 0) {
          const auto best = w.size() >= 2 ? approximate_power_defect(w, beta) : std::nullopt;
          p = best ? best->period : w.size();
        }
        const BitCode code = approx ? encode_approx_power(w, p) : encode_power(w, p);
        const std::size_t d = defect_to_periodic(w, p);
        const double h = binary_entropy(static_cast<double>(d) / static_cast<double>(w.size()));
        const double bound = approx ? approx_power_bound(w.size(), p, d, file.alphabet_size)
                                    : exact_power_bound(w.size(), p, file.alphabet_size);
        out << "# word " << i << " length=" << w.size() << " period=" << p << " d=" << d << " bits=" << code.size()
            << " entropy=" << fixed(h) << " bound=" << fixed(bound)
            << " slack=" << fixed(bound - static_cast<double>(code.size())) << " lz=" << lz_phrase_count(w) << '\n';
        out << code.to_string() << '\n';
      }
      emit(out.str(), enc_out);
      return 0;
    }

    if (*dec) {
      std::istringstream in(slurp(dec_in));
      std::string line, mode;
      std::uint32_t sigma = 0;
      WordFile file;
      while (std::getline(in, line)) {
        if (line.rfind("#codec ", 0) == 0) {
          std::istringstream h(line.substr(7));
          std::string key;
          h >> mode >> key >> sigma;
          if ((mode != "exact" && mode != "approx") || key != "alphabet" || sigma == 0) {
            throw std::invalid_argument("codec: bad header line");
          }
          file.alphabet_size = sigma;
          continue;
        }
        if (line.empty() || line[0] == '#') continue;
        if (sigma == 0) throw std::invalid_argument("codec: missing '#codec' header");
        const BitCode code = BitCode::parse(line);
        file.words.push_back(mode == "approx" ? decode_approx_power(code, sigma) : decode_power(code, sigma));
      }
      std::ostringstream out;
      write_word_file(out, file);
      emit(out.str(), dec_out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

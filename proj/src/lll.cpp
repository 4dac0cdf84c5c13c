#include "powerword/lll.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>

namespace powerword {

namespace mp = boost::multiprecision;

namespace {

BigRational parse_big_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(text));
    BigInt num(text.substr(0, slash)), den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return BigRational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad rational '" + text + "'");
  }
}

// Largest m with m^k <= a.
BigInt integer_root(const BigInt& a, unsigned k) {
  if (k == 1 || a <= 1) return a;
  const unsigned bits = static_cast<unsigned>(mp::msb(a)) / k + 1;
  BigInt lo = 0, hi = BigInt(1) << (bits + 1);
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) >> 1;
    if (mp::pow(mid, k) <= a) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Bounds lo <= 2^precision * 2^(-t) <= hi for a rational t >= 0.
std::pair<BigInt, BigInt> scaled_pow2_neg(const Rational& t, unsigned precision) {
  if (t < Rational(0)) throw std::invalid_argument("scaled_pow2_neg: negative exponent");
  const auto v = static_cast<unsigned>(t.den());
  const auto whole = static_cast<unsigned>(t.num() / t.den());
  const auto frac = static_cast<unsigned>(t.num() % t.den());
  // (2^P * 2^(-frac/v))^v = 2^(P v - frac)
  const BigInt root = integer_root(BigInt(1) << (precision * v - frac), v);
  const bool exact = mp::pow(root, v) == (BigInt(1) << (precision * v - frac));
  const BigInt upper = exact ? root : root + 1;
  const BigInt lo = root >> whole;
  const BigInt hi = (upper + (BigInt(1) << whole) - 1) >> whole;
  return {lo, hi};
}

enum class Verdict { holds, fails, undecided };

Verdict threshold_verdict(const Rational& gamma, const Rational& beta, std::size_t n, unsigned precision) {
  const Rational delta = beta - gamma;
  const Rational one_minus_beta = Rational(1) - beta;
  const BigInt scale = BigInt(1) << precision;
  const auto [d_lo, d_hi] = scaled_pow2_neg(delta, precision);
  const auto [b_lo, b_hi] = scaled_pow2_neg(one_minus_beta, precision);
  const auto [t_lo, t_hi] = scaled_pow2_neg(delta * Rational(static_cast<std::int64_t>(n) + 1), precision);
  // (1 - 2^-delta)(1 - 2^(beta-1)) >= 2^(-delta (N+1)), everything scaled by 2^(2P)
  const BigInt lhs_lo = (scale - d_hi) * (scale - b_hi);
  const BigInt lhs_hi = (scale - d_lo) * (scale - b_lo);
  if (lhs_lo >= t_hi * scale) return Verdict::holds;
  if (lhs_hi < t_lo * scale) return Verdict::fails;
  return Verdict::undecided;
}

void check_threshold_args(const Rational& gamma, const Rational& beta) {
  if (!(Rational(0) < gamma && gamma < beta && beta < Rational(1))) {
    throw std::invalid_argument("threshold_n: need 0 < gamma < beta < 1");
  }
}

}  // namespace

void EventSystem::validate() const {
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    const std::string where = "event " + std::to_string(i);
    if (e.support.empty()) throw std::invalid_argument(where + ": empty support");
    for (std::size_t k = 0; k < e.support.size(); ++k) {
      if (e.support[k] >= variable_count) throw std::invalid_argument(where + ": variable out of range");
      if (k > 0 && e.support[k] <= e.support[k - 1]) throw std::invalid_argument(where + ": support not sorted");
    }
    if (e.probability < 0 || e.probability > 1) throw std::invalid_argument(where + ": probability outside [0, 1]");
    if (e.epsilon <= 0 || e.epsilon >= 1) throw std::invalid_argument(where + ": epsilon outside (0, 1)");
  }
}

AsymmetricCheck check_asymmetric_condition(const EventSystem& system) {
  system.validate();
  const std::size_t m = system.events.size();
  std::vector<std::vector<std::size_t>> by_variable(system.variable_count);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t v : system.events[i].support) by_variable[v].push_back(i);
  }

  AsymmetricCheck out;
  out.events.resize(m);
  std::vector<std::size_t> seen(m, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < m; ++i) {
    const Event& e = system.events[i];
    // Unreduced product of (1 - eps_j); one normalisation at the end.
    BigInt num = mp::numerator(e.epsilon), den = mp::denominator(e.epsilon);
    std::size_t neighbours = 0;
    for (std::size_t v : e.support) {
      for (std::size_t j : by_variable[v]) {
        if (j == i || seen[j] == i) continue;
        seen[j] = i;
        ++neighbours;
        const BigInt& en = mp::numerator(system.events[j].epsilon);
        const BigInt& ed = mp::denominator(system.events[j].epsilon);
        num *= ed - en;
        den *= ed;
      }
    }
    EventSlack& slack = out.events[i];
    slack.lhs = e.probability;
    slack.rhs = BigRational(num, den);
    slack.neighbours = neighbours;
    slack.holds = slack.lhs <= slack.rhs;
    out.holds = out.holds && slack.holds;
  }
  return out;
}

EventSystem read_event_file(std::istream& in) {
  EventSystem system;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string support, prob, eps, tag;
    if (!(fields >> support >> prob >> eps)) {
      throw std::invalid_argument("event file line " + std::to_string(line_no) + ": expected support probability epsilon");
    }
    std::getline(fields >> std::ws, tag);
    Event e;
    std::istringstream vars(support);
    std::string item;
    while (std::getline(vars, item, ',')) {
      if (item.empty()) continue;
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(item, &pos);
      if (pos != item.size()) throw std::invalid_argument("event file line " + std::to_string(line_no) + ": bad variable");
      e.support.push_back(static_cast<std::size_t>(v));
    }
    std::sort(e.support.begin(), e.support.end());
    e.support.erase(std::unique(e.support.begin(), e.support.end()), e.support.end());
    e.probability = parse_big_rational(prob);
    e.epsilon = parse_big_rational(eps);
    e.tag = tag.empty() ? "line" + std::to_string(line_no) : tag;
    for (std::size_t v : e.support) system.variable_count = std::max(system.variable_count, v + 1);
    system.events.push_back(std::move(e));
  }
  system.validate();
  return system;
}

bool threshold_holds(const Rational& gamma, const Rational& beta, std::size_t n) {
  check_threshold_args(gamma, beta);
  for (unsigned precision = 64; precision <= 8192; precision *= 2) {
    switch (threshold_verdict(gamma, beta, n, precision)) {
      case Verdict::holds: return true;
      case Verdict::fails: return false;
      case Verdict::undecided: break;
    }
  }
  throw std::runtime_error("threshold_holds: undecided at maximum precision");
}

std::size_t threshold_n(const Rational& gamma, const Rational& beta) {
  check_threshold_args(gamma, beta);
  if (threshold_holds(gamma, beta, 1)) return 1;
  // The tail shrinks with N, so the predicate is monotone.
  std::size_t bad = 1, good = 2;
  while (!threshold_holds(gamma, beta, good)) {
    bad = good;
    good *= 2;
  }
  while (good - bad > 1) {
    const std::size_t mid = bad + (good - bad) / 2;
    if (threshold_holds(gamma, beta, mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

std::size_t window_length(const Rational& beta, std::size_t p) {
  return static_cast<std::size_t>(ceil(beta * Rational(static_cast<std::int64_t>(p))));
}

Rational default_epsilon_exponent(const Rational& beta) {
  return Rational(9, 10) * (Rational(1) - Rational(1) / beta);
}

BigRational epsilon_for_support(const Rational& exponent, std::size_t support_size) {
  if (exponent <= Rational(0)) throw std::invalid_argument("epsilon exponent must be positive");
  constexpr unsigned kBits = 64;
  const Rational t = exponent * Rational(static_cast<std::int64_t>(support_size));
  const auto [lo, hi] = scaled_pow2_neg(t, kBits);
  (void)hi;
  return BigRational(lo, BigInt(1) << kBits);
}

EventSystem build_power_events(const RepetitionPattern& pattern, std::size_t n, const Rational& beta,
                               std::size_t p_min) {
  return build_power_events(pattern, n, beta, p_min, default_epsilon_exponent(beta));
}

EventSystem build_power_events(const RepetitionPattern& pattern, std::size_t n, const Rational& beta,
                               std::size_t p_min, const Rational& epsilon_exponent) {
  if (p_min == 0) throw std::invalid_argument("build_power_events: p_min must be positive");
  if (beta <= Rational(1)) throw std::invalid_argument("build_power_events: beta must exceed 1");
  const ClassMap classes(pattern);
  EventSystem system;
  system.variable_count = classes.classes_below(n);
  std::vector<std::size_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = classes.class_of(i);

  std::vector<std::size_t> parent;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t p = p_min;; ++p) {
    const std::size_t len = window_length(beta, p);
    if (len > n) break;
    for (std::size_t s = 0; s + len <= n; ++s) {
      const std::size_t j = classes.interval_at(s);
      if (j != ClassMap::npos) {
        const auto& iv = pattern.intervals[j];
        if (s + len <= iv.end() && p % iv.period == 0) continue;
      }
      Event e;
      for (std::size_t i = s; i < s + len; ++i) e.support.push_back(cls[i]);
      std::sort(e.support.begin(), e.support.end());
      e.support.erase(std::unique(e.support.begin(), e.support.end()), e.support.end());
      auto local = [&](std::size_t c) {
        return static_cast<std::size_t>(std::lower_bound(e.support.begin(), e.support.end(), c) - e.support.begin());
      };
      parent.resize(e.support.size());
      std::iota(parent.begin(), parent.end(), std::size_t{0});
      std::size_t components = e.support.size();
      for (std::size_t i = s; i + p < s + len; ++i) {
        const std::size_t a = find(local(cls[i])), b = find(local(cls[i + p]));
        if (a != b) {
          parent[a] = b;
          --components;
        }
      }
      const std::size_t constraints = e.support.size() - components;
      e.probability = BigRational(BigInt(1), BigInt(1) << constraints);
      e.epsilon = epsilon_for_support(epsilon_exponent, e.support.size());
      e.tag = "s=" + std::to_string(s) + ",p=" + std::to_string(p);
      system.events.push_back(std::move(e));
    }
  }
  return system;
}

namespace {

// Mutable state of one resampling run over the materialised binary word.
class Resampler {
 public:
  Resampler(const RepetitionPattern& pattern, std::size_t n, const Rational& beta, std::size_t p_min, std::uint64_t seed)
      : classes_(pattern), n_(n), p_min_(p_min), rng_(seed) {
    const std::size_t class_count = classes_.classes_below(n);
    cls_.resize(n);
    members_.resize(class_count);
    for (std::size_t i = 0; i < n; ++i) {
      cls_[i] = classes_.class_of(i);
      members_[cls_[i]].push_back(i);
    }
    tau_.resize(class_count);
    for (auto& t : tau_) t = rng_.bit();
    word_.resize(n);
    for (std::size_t i = 0; i < n; ++i) word_[i] = tau_[cls_[i]];
    lengths_.assign(p_min, 0);
    for (std::size_t p = p_min;; ++p) {
      const std::size_t len = window_length(beta, p);
      if (len > n) break;
      lengths_.push_back(len);
    }
    max_p_ = lengths_.size() - 1;  // < p_min when there are no events
  }

  [[nodiscard]] bool has_events() const { return max_p_ >= p_min_ && lengths_.size() > p_min_; }

  // Smallest violated event at or after `from`.
  std::optional<WindowEvent> scan(WindowEvent from) const {
    for (std::size_t s = from.start; s + lengths_[p_min_] <= n_; ++s) {
      const std::size_t first = s == from.start ? from.period : p_min_;
      for (std::size_t p = first; p <= max_p_ && s + lengths_[p] <= n_; ++p) {
        if (word_[s] != word_[s + p]) continue;
        if (!excluded(s, p) && periodic(s, p)) return WindowEvent{s, p};
      }
    }
    return std::nullopt;
  }

  // Redraws every class meeting the event's window; returns flipped positions.
  std::vector<std::size_t> resample(WindowEvent e) {
    std::vector<std::size_t> support;
    for (std::size_t i = e.start; i < e.start + lengths_[e.period]; ++i) support.push_back(cls_[i]);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    std::vector<std::size_t> flipped;
    for (std::size_t c : support) {
      const std::uint8_t b = rng_.bit();
      if (b == tau_[c]) continue;
      tau_[c] = b;
      for (std::size_t pos : members_[c]) {
        word_[pos] = b;
        flipped.push_back(pos);
      }
    }
    return flipped;
  }

  // Smallest violated event starting before `limit` whose window contains a
  // flipped position. Every such window lies in a stretch of matches
  // word[i] == word[i + p] through index f or f - p.
  std::optional<WindowEvent> violated_near(const std::vector<std::size_t>& flipped, std::size_t limit) const {
    std::optional<WindowEvent> best;
    for (std::size_t f : flipped) {
      for (std::size_t p = p_min_; p <= max_p_; ++p) {
        for (std::size_t idx : {f >= p ? f - p : n_, f}) {
          if (idx + p >= n_ || word_[idx] != word_[idx + p]) continue;
          std::size_t a = idx;
          while (a > 0 && word_[a - 1] == word_[a - 1 + p]) --a;
          if (a >= limit) continue;
          std::size_t b = idx + 1;
          while (b + p < n_ && word_[b] == word_[b + p]) ++b;
          const std::size_t need = lengths_[p] - p;
          if (b - a < need) continue;
          for (std::size_t s = a; s + need <= b && s < limit; ++s) {
            if (excluded(s, p)) continue;
            const WindowEvent cand{s, p};
            if (!best || cand < *best) best = cand;
            break;
          }
        }
      }
    }
    return best;
  }

  [[nodiscard]] std::size_t p_min() const { return p_min_; }
  std::vector<std::uint8_t> take_tau() { return std::move(tau_); }

 private:
  [[nodiscard]] bool excluded(std::size_t s, std::size_t p) const {
    const std::size_t j = classes_.interval_at(s);
    if (j == ClassMap::npos) return false;
    const auto& iv = classes_.pattern().intervals[j];
    return s + lengths_[p] <= iv.end() && p % iv.period == 0;
  }

  [[nodiscard]] bool periodic(std::size_t s, std::size_t p) const {
    const std::size_t end = s + lengths_[p] - p;
    for (std::size_t i = s; i < end; ++i) {
      if (word_[i] != word_[i + p]) return false;
    }
    return true;
  }

  ClassMap classes_;
  std::size_t n_;
  std::size_t p_min_;
  std::size_t max_p_ = 0;
  Xorshift64 rng_;
  std::vector<std::size_t> cls_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::uint8_t> tau_;
  std::vector<std::uint8_t> word_;
  std::vector<std::size_t> lengths_;
};

}  // namespace

ResampleResult resample_fill(const RepetitionPattern& pattern, std::size_t n, const Rational& beta, std::size_t p_min,
                             std::uint64_t seed, std::size_t max_rounds) {
  if (p_min == 0) throw std::invalid_argument("resample_fill: p_min must be positive");
  if (beta <= Rational(1)) throw std::invalid_argument("resample_fill: beta must exceed 1");
  Resampler state(pattern, n, beta, p_min, seed);
  ResampleTrace trace;
  trace.seed = seed;
  if (state.has_events()) {
    WindowEvent cursor{0, p_min};
    while (auto bad = state.scan(cursor)) {
      if (trace.rounds >= max_rounds) throw ResampleExhausted(std::move(trace));
      const auto flipped = state.resample(*bad);
      ++trace.rounds;
      trace.resampled.push_back(*bad);
      cursor = WindowEvent{bad->start, p_min};
      if (auto earlier = state.violated_near(flipped, bad->start)) cursor = std::min(cursor, *earlier);
    }
  }
  return ResampleResult{state.take_tau(), std::move(trace)};
}

}  // namespace powerword

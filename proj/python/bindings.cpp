#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "powerword/codec.hpp"
#include "powerword/lll.hpp"
#include "powerword/pattern.hpp"
#include "powerword/repetition.hpp"
#include "powerword/synth.hpp"
#include "powerword/word.hpp"

namespace py = pybind11;
using namespace powerword;

// Rational <-> fractions.Fraction; int and "p/q" strings are accepted too.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = Rational::parse(src.cast<std::string>());
        return true;
      }
      if (py::isinstance<py::bool_>(src)) return false;
      if (py::isinstance<py::int_>(src)) {
        value = Rational(src.cast<std::int64_t>());
        return true;
      }
      const auto fraction = py::module_::import("fractions").attr("Fraction");
      if (py::isinstance(src, fraction)) {
        value = Rational(src.attr("numerator").cast<std::int64_t>(), src.attr("denominator").cast<std::int64_t>());
        return true;
      }
    } catch (const std::exception&) {
      return false;
    }
    return false;
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    return py::module_::import("fractions").attr("Fraction")(r.num(), r.den()).release();
  }
};
}  // namespace pybind11::detail

namespace {

Word to_word(const py::object& obj, std::uint32_t sigma) {
  if (py::isinstance<Word>(obj)) return obj.cast<Word>();
  if (py::isinstance<py::str>(obj)) {
    const auto text = obj.cast<std::string>();
    if (sigma == 0) {
      sigma = 2;
      for (char c : text) {
        if (c >= '0' && c <= '9') sigma = std::max<std::uint32_t>(sigma, static_cast<std::uint32_t>(c - '0') + 1);
        if (c >= 'a' && c <= 'z') sigma = std::max<std::uint32_t>(sigma, static_cast<std::uint32_t>(c - 'a') + 11);
      }
    }
    return Word::parse(text, sigma);
  }
  auto symbols = obj.cast<std::vector<Symbol>>();
  if (sigma == 0) {
    sigma = 2;
    for (Symbol s : symbols) sigma = std::max<std::uint32_t>(sigma, s + 1);
  }
  return Word(std::move(symbols), sigma);
}

py::dict run_dict(const Run& r) {
  py::dict d;
  d["start"] = r.start;
  d["length"] = r.length;
  d["period"] = r.period;
  d["exponent"] = r.exponent;
  return d;
}

py::dict interval_dict(const ActiveInterval& iv) {
  py::dict d;
  d["start"] = iv.start;
  d["length"] = iv.length;
  d["period"] = iv.period;
  d["exponent"] = iv.exponent;
  return d;
}

RepetitionPattern to_pattern(const py::list& intervals) {
  RepetitionPattern p;
  for (const auto& item : intervals) {
    const auto d = item.cast<py::dict>();
    ActiveInterval iv{d["start"].cast<std::size_t>(), d["length"].cast<std::size_t>(), d["period"].cast<std::size_t>(),
                      Rational(0)};
    iv.exponent = Rational(static_cast<std::int64_t>(iv.length), static_cast<std::int64_t>(iv.period));
    p.layout_len = std::max(p.layout_len, iv.end());
    p.intervals.push_back(iv);
  }
  return p;
}

SynthesisConfig make_config(const Rational& alpha, const Rational& beta, std::size_t n, std::size_t k,
                            std::size_t gap_factor, std::size_t layer_period, bool brackets, std::size_t p_min,
                            std::uint64_t seed, std::size_t max_rounds, std::size_t window_min) {
  SynthesisConfig c;
  c.alpha = alpha;
  c.beta = beta;
  c.n = n;
  c.k = k;
  c.gap_factor = gap_factor;
  c.layer_period = layer_period;
  c.brackets = brackets;
  c.p_min = p_min;
  c.seed = seed;
  c.max_rounds = max_rounds;
  c.window_min = window_min;
  return c;
}

#define CONFIG_ARGS                                                                                          \
  py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("k") = 3, py::arg("gap_factor") = 10,             \
      py::arg("layer_period") = 0, py::arg("brackets") = false, py::arg("p_min") = 2, py::arg("seed") = 1,    \
      py::arg("max_rounds") = 1000000, py::arg("window_min") = 0

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Words with prescribed fractional powers: analysis, synthesis and codecs.";

  py::register_exception<ResampleExhausted>(m, "ResampleExhausted", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  py::class_<Word>(m, "Word")
      .def(py::init([](const py::object& obj, std::uint32_t sigma) { return to_word(obj, sigma); }), py::arg("symbols"),
           py::arg("alphabet_size") = 0)
      .def_property_readonly("alphabet_size", &Word::alphabet_size)
      .def("symbols", [](const Word& w) { return std::vector<Symbol>(w.symbols().begin(), w.symbols().end()); })
      .def("__len__", &Word::size)
      .def("__getitem__", [](const Word& w, std::size_t i) {
        if (i >= w.size()) throw py::index_error();
        return w[i];
      })
      .def("__str__", &Word::to_string)
      .def("__repr__", [](const Word& w) { return "Word('" + w.to_string() + "', " + std::to_string(w.alphabet_size()) + ")"; })
      .def(py::self == py::self);

  m.def("critical_exponent", [](const py::object& w, std::uint32_t sigma) { return critical_exponent(to_word(w, sigma)); },
        py::arg("word"), py::arg("alphabet_size") = 0);
  m.def("brute_force_critical_exponent",
        [](const py::object& w, std::uint32_t sigma) { return brute_force_critical_exponent(to_word(w, sigma)); },
        py::arg("word"), py::arg("alphabet_size") = 0);
  m.def(
      "maximal_repetitions",
      [](const py::object& w, std::uint32_t sigma) {
        py::list out;
        for (const auto& r : maximal_repetitions(to_word(w, sigma))) out.append(run_dict(r));
        return out;
      },
      py::arg("word"), py::arg("alphabet_size") = 0);
  m.def("smallest_period", [](const py::object& w, std::uint32_t sigma) { return smallest_period(to_word(w, sigma)); },
        py::arg("word"), py::arg("alphabet_size") = 0);
  m.def("defect_to_periodic",
        [](const py::object& w, std::size_t p, std::uint32_t sigma) { return defect_to_periodic(to_word(w, sigma), p); },
        py::arg("word"), py::arg("p"), py::arg("alphabet_size") = 0);
  m.def(
      "approximate_power_defect",
      [](const py::object& w, const Rational& beta, std::uint32_t sigma) -> py::object {
        const auto r = approximate_power_defect(to_word(w, sigma), beta);
        if (!r) return py::none();
        return py::make_tuple(r->defect, r->period);
      },
      py::arg("word"), py::arg("beta"), py::arg("alphabet_size") = 0);
  m.def("check_period_difference",
        [](const py::object& w, std::size_t t1, std::size_t t2, std::uint32_t sigma) {
          return check_period_difference(to_word(w, sigma), t1, t2);
        },
        py::arg("word"), py::arg("t1"), py::arg("t2"), py::arg("alphabet_size") = 0);

  m.def("enumerate_exponents", &enumerate_exponents, py::arg("alpha"), py::arg("k"));
  m.def(
      "layout_intervals",
      [](const std::vector<Rational>& rs, std::size_t gap_factor) {
        py::list out;
        for (const auto& iv : layout_intervals(rs, gap_factor).intervals) out.append(interval_dict(iv));
        return out;
      },
      py::arg("exponents"), py::arg("gap_factor") = 10);
  m.def(
      "free_bit_count",
      [](const py::list& intervals, std::size_t a, std::size_t b) { return free_bit_count(to_pattern(intervals), a, b); },
      py::arg("intervals"), py::arg("a"), py::arg("b"));
  m.def(
      "min_free_density",
      [](const py::list& intervals, std::size_t n, std::size_t min_len) {
        return min_free_density(to_pattern(intervals), n, min_len);
      },
      py::arg("intervals"), py::arg("n"), py::arg("min_len"));

  m.def("threshold_n", &threshold_n, py::arg("gamma"), py::arg("beta"));
  m.def("threshold_holds", &threshold_holds, py::arg("gamma"), py::arg("beta"), py::arg("n"));

  m.def(
      "encode_power",
      [](const py::object& w, std::size_t p, std::uint32_t sigma) { return encode_power(to_word(w, sigma), p).to_string(); },
      py::arg("word"), py::arg("p"), py::arg("alphabet_size") = 0);
  m.def(
      "decode_power",
      [](const std::string& bits, std::uint32_t sigma) { return decode_power(BitCode::parse(bits), sigma); },
      py::arg("bits"), py::arg("alphabet_size"));
  m.def(
      "encode_approx_power",
      [](const py::object& w, std::size_t p, std::uint32_t sigma) {
        return encode_approx_power(to_word(w, sigma), p).to_string();
      },
      py::arg("word"), py::arg("p"), py::arg("alphabet_size") = 0);
  m.def(
      "decode_approx_power",
      [](const std::string& bits, std::uint32_t sigma) { return decode_approx_power(BitCode::parse(bits), sigma); },
      py::arg("bits"), py::arg("alphabet_size"));
  m.def("binary_entropy", &binary_entropy, py::arg("eps"));
  m.def("lz_phrase_count", [](const py::object& w, std::uint32_t sigma) { return lz_phrase_count(to_word(w, sigma)); },
        py::arg("word"), py::arg("alphabet_size") = 0);

  m.def(
      "synthesize",
      [](const Rational& alpha, const Rational& beta, std::size_t n, std::size_t k, std::size_t gap_factor,
         std::size_t layer_period, bool brackets, std::size_t p_min, std::uint64_t seed, std::size_t max_rounds,
         std::size_t window_min) {
        const auto cfg =
            make_config(alpha, beta, n, k, gap_factor, layer_period, brackets, p_min, seed, max_rounds, window_min);
        const Synthesis s = synthesize(cfg);
        py::dict out;
        out["word"] = s.word;
        out["report"] = render_report(s.report);
        out["trace"] = render_trace(s.trace);
        out["clean"] = s.report.clean();
        out["critical_exponent"] = s.report.critical_exponent;
        out["epsilon_hat"] = s.report.epsilon_hat ? py::cast(*s.report.epsilon_hat) : py::none();
        out["forbidden_runs"] = s.report.forbidden_runs;
        return out;
      },
      CONFIG_ARGS);
  m.def(
      "verify",
      [](const Word& word, const Rational& alpha, const Rational& beta, std::size_t n, std::size_t k,
         std::size_t gap_factor, std::size_t layer_period, bool brackets, std::size_t p_min, std::uint64_t seed,
         std::size_t max_rounds, std::size_t window_min) {
        return render_report(verify(
            word, make_config(alpha, beta, n, k, gap_factor, layer_period, brackets, p_min, seed, max_rounds, window_min)));
      },
      py::arg("word"), CONFIG_ARGS);
}

#pragma once

// Command-line front end: argument parsing, input ingestion and CSV/JSON/text emission.
// run() never calls exit(); it returns the process status so tests can drive it.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twoadic/budget.hpp"
#include "twoadic/counting.hpp"
#include "twoadic/envelopes.hpp"
#include "twoadic/experiments.hpp"
#include "twoadic/fcsr.hpp"
#include "twoadic/io.hpp"
#include "twoadic/profile.hpp"
#include "twoadic/random.hpp"
#include "twoadic/rational_rep.hpp"

namespace twoadic::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kRefused = 1, kUsage = 2, kCheckFailed = 3 };

enum class OutputFormat { csv, json, human };

using nlohmann::json;

/// Everything the parser collects; validated per subcommand before any work starts.
struct RunConfig {
  std::string subcommand;

  std::optional<std::string> bits_inline;
  std::optional<std::string> path;
  bool use_stdin = false;
  std::string input_format = "ascii01";
  std::optional<std::size_t> take;
  std::string output_format = "human";

  std::optional<unsigned> n;
  unsigned from = 0;
  unsigned to = 0;
  std::optional<std::uint64_t> w;
  std::optional<std::uint64_t> w_max;
  std::optional<std::uint64_t> cumulative;
  std::optional<std::uint64_t> totient_m;
  bool tail = false;
  bool exhaustive = false;
  double delta = 1.25;
  double eps = 0.0;

  std::string q_text;
  std::string f_text;
  std::string bits_format = "ascii01";

  std::string taps;
  std::string init_bits;
  std::string carry_text = "0";

  std::uint64_t seed = 1;
  unsigned samples = 200;
  unsigned n_max = 2048;
  unsigned n0 = 16;
  bool traces = false;

  bool oracle = false;
  unsigned selftest_max_n = 12;
  unsigned selftest_random = 1000;

  unsigned workers = 1;
};

namespace detail {

inline OutputFormat parse_output_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "human") return OutputFormat::human;
  throw InvalidInput("unknown output format '" + name + "' (expected csv, json or human)");
}

inline BigInt parse_big(const std::string& text, const char* what) {
  if (text.empty()) throw InvalidInput(std::string(what) + " is required");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw InvalidInput(std::string(what) + " is not an integer");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw InvalidInput(std::string(what) + " is not an integer (position " + std::to_string(i) + ")");
    }
  }
  BigInt v(text.substr(start));
  return text[0] == '-' ? BigInt(-v) : v;
}

inline std::vector<int> parse_bit_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      throw InvalidInput(std::string(what) + ": invalid character at position " + std::to_string(i));
    }
    out.push_back(text[i] - '0');
  }
  return out;
}

inline BitSequence read_input(const RunConfig& cfg, std::istream& in) {
  const int sources = (cfg.bits_inline ? 1 : 0) + (cfg.path ? 1 : 0) + (cfg.use_stdin ? 1 : 0);
  if (sources != 1) throw InvalidInput("exactly one of --bits, --file, --stdin is required");
  const SequenceFormat format = parse_sequence_format(cfg.input_format);
  std::string text;
  if (cfg.bits_inline) {
    text = *cfg.bits_inline;
  } else if (cfg.path) {
    std::ifstream file(*cfg.path);
    if (!file) throw InvalidInput("cannot open input file " + *cfg.path);
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  } else {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return read_sequence(text, format, cfg.take);
}

inline json metadata(const RunConfig& cfg, const Budget& budget, std::optional<std::uint64_t> seed) {
  return {
      {"tool", "twoadic"},
      {"version", kVersion},
      {"command", cfg.subcommand},
      {"seed", seed ? json(*seed) : json(nullptr)},
      {"generator", kGeneratorDescription},
      {"caps",
       {{"max_exhaustive_n", budget.max_exhaustive_n},
        {"max_oracle_n", budget.max_oracle_n},
        {"max_count_n", budget.max_count_n},
        {"max_tail_n", budget.max_tail_n},
        {"max_pair_n", budget.max_pair_n}}},
      {"envelopes",
       {{"upper_envelope_exponent", kUpperEnvelopeExponent},
        {"expectation_upper_envelope", kExpectationUpperEnvelope},
        {"sup_deviation_envelope", kSupDeviationEnvelope},
        {"sup_deviation_quantile", kSupDeviationQuantile},
        {"normalized_tail_tolerance", kNormalizedTailTolerance},
        {"cumulative_envelope", kCumulativeEnvelope},
        {"small_set_relative_slack", kSmallSetRelativeSlack},
        {"large_set_constant", kLargeSetConstant}}},
  };
}

inline std::string bool_text(bool v) { return v ? "true" : "false"; }

inline json rep_json(const RationalApprox& r) {
  return {{"f", r.f.str()}, {"q", r.q.str()}, {"big_lambda", r.norm().str()}, {"capacity", r.capacity}};
}

}  // namespace detail

class Runner {
 public:
  Runner(RunConfig cfg, std::istream& in, std::ostream& out, std::ostream& err)
      : cfg_(std::move(cfg)), in_(in), out_(out), err_(err), budget_(Budget::from_environment()) {}

  int dispatch() {
    format_ = detail::parse_output_format(cfg_.output_format);
    const std::string& c = cfg_.subcommand;
    if (c == "complexity") return run_complexity();
    if (c == "approx") return run_approx();
    if (c == "expand") return run_expand();
    if (c == "fcsr") return run_fcsr();
    if (c == "count") return run_count();
    if (c == "expected") return run_expected();
    if (c == "montecarlo") return run_montecarlo();
    if (c == "selftest") return run_selftest();
    throw InvalidInput("unknown subcommand " + c);
  }

 private:
  json meta(std::optional<std::uint64_t> seed = std::nullopt) const { return detail::metadata(cfg_, budget_, seed); }

  void emit_json(const json& j) { out_ << j.dump(2) << '\n'; }

  int run_complexity() {
    const BitSequence s = detail::read_input(cfg_, in_);
    const ComplexityProfile p = profile(s);
    if (format_ == OutputFormat::json) {
      json rows = json::array();
      for (const auto& e : p.entries) {
        rows.push_back({{"n", e.n},
                        {"big_lambda", e.value.big_lambda.str()},
                        {"lambda", e.value.small_lambda},
                        {"f", e.rep.f.str()},
                        {"q", e.rep.q.str()}});
      }
      emit_json({{"kind", "complexity"}, {"metadata", meta()}, {"length", s.size()}, {"profile", rows}});
    } else if (format_ == OutputFormat::csv) {
      out_ << csv_row({"n", "big_lambda", "lambda", "f", "q"});
      for (const auto& e : p.entries) {
        out_ << csv_row({std::to_string(e.n), e.value.big_lambda.str(), format_fixed(e.value.small_lambda),
                         e.rep.f.str(), e.rep.q.str()});
      }
    } else {
      out_ << "n\tLambda\tlambda\tf\tq\n";
      for (const auto& e : p.entries) {
        out_ << e.n << '\t' << e.value.big_lambda << '\t' << format_fixed(e.value.small_lambda, 6) << '\t'
             << e.rep.f << '\t' << e.rep.q << '\n';
      }
    }
    return kOk;
  }

  int run_approx() {
    const BitSequence s = detail::read_input(cfg_, in_);
    const RationalApprox r = cfg_.oracle ? brute_force_min_rep(s, budget_.max_oracle_n) : min_rational_rep(s);
    const ComplexityValue v = ComplexityValue::of(r.norm());
    if (format_ == OutputFormat::json) {
      json j = detail::rep_json(r);
      j["lambda"] = v.small_lambda;
      j["method"] = cfg_.oracle ? "brute_force" : "lattice_reduction";
      emit_json({{"kind", "approx"}, {"metadata", meta()}, {"length", s.size()}, {"result", j}});
    } else if (format_ == OutputFormat::csv) {
      out_ << csv_row({"N", "f", "q", "big_lambda", "lambda"});
      out_ << csv_row({std::to_string(s.size()), r.f.str(), r.q.str(), v.big_lambda.str(),
                       format_fixed(v.small_lambda)});
    } else {
      out_ << "f=" << r.f << " q=" << r.q << " Lambda=" << v.big_lambda
           << " lambda=" << format_fixed(v.small_lambda) << '\n';
    }
    return kOk;
  }

  int run_expand() {
    if (!cfg_.n) throw InvalidInput("--n is required");
    const BigInt q = detail::parse_big(cfg_.q_text, "--q");
    const BigInt f = detail::parse_big(cfg_.f_text, "--f");
    const SequenceFormat bf = parse_sequence_format(cfg_.bits_format);
    const BitSequence s = expand_rational(q, f, *cfg_.n);
    const std::string text = write_sequence(s, bf);
    if (format_ == OutputFormat::json) {
      emit_json({{"kind", "expand"},
                 {"metadata", meta()},
                 {"q", q.str()},
                 {"f", f.str()},
                 {"length", *cfg_.n},
                 {"bits_format", cfg_.bits_format},
                 {"bits", text}});
    } else if (format_ == OutputFormat::csv) {
      out_ << csv_row({"q", "f", "N", "bits"}) << csv_row({q.str(), f.str(), std::to_string(*cfg_.n), text});
    } else {
      out_ << text << '\n';
    }
    return kOk;
  }

  int run_fcsr() {
    if (!cfg_.n) throw InvalidInput("--n is required");
    FcsrSpec spec{detail::parse_bit_list(cfg_.taps, "--taps"), detail::parse_bit_list(cfg_.init_bits, "--init"),
                  detail::parse_big(cfg_.carry_text, "--carry")};
    const FcsrOutput o = fcsr_generate(spec, *cfg_.n);
    const RationalApprox rep = min_rational_rep(o.bits);
    const std::size_t l = spec.length();
    if (format_ == OutputFormat::json) {
      json carries = json::array();
      for (const auto& z : o.carries) carries.push_back(z.str());
      emit_json({{"kind", "fcsr"},
                 {"metadata", meta()},
                 {"length_L", l},
                 {"connection_integer", spec.connection_integer().str()},
                 {"bits", o.bits.to_string()},
                 {"carries", carries},
                 {"min_rational_rep", detail::rep_json(rep)}});
    } else if (format_ == OutputFormat::csv) {
      out_ << csv_row({"i", "s", "z"});
      for (std::size_t i = 0; i < o.bits.size(); ++i) {
        const std::string z = i + 1 >= l ? o.carries[i + 1 - l].str() : "";
        out_ << csv_row({std::to_string(i), std::to_string(o.bits[i]), z});
      }
    } else {
      out_ << "bits=" << o.bits.to_string() << '\n';
      out_ << "connection_integer=" << spec.connection_integer() << '\n';
      out_ << "carries=";
      for (std::size_t i = 0; i < o.carries.size(); ++i) out_ << (i ? "," : "") << o.carries[i];
      out_ << '\n' << "min_rep f=" << rep.f << " q=" << rep.q << " Lambda=" << rep.norm() << '\n';
    }
    return kOk;
  }

  int run_count() {
    if (cfg_.totient_m) return count_totient_sum();
    if (!cfg_.n) throw InvalidInput("--n is required");
    const unsigned n = *cfg_.n;
    if (cfg_.cumulative) return count_cumulative(n);
    if (cfg_.tail) return count_tail(n);
    return count_table(n);
  }

  int count_totient_sum() {
    const TotientSum t = totient_sum(*cfg_.totient_m);
    if (format_ == OutputFormat::json) {
      emit_json({{"kind", "totient_sum"},
                 {"metadata", meta()},
                 {"m", *cfg_.totient_m},
                 {"sum", t.sum},
                 {"walfisz_residual", t.walfisz_residual}});
    } else if (format_ == OutputFormat::csv) {
      out_ << csv_row({"m", "sum", "walfisz_residual"})
           << csv_row({std::to_string(*cfg_.totient_m), std::to_string(t.sum), format_fixed(t.walfisz_residual)});
    } else {
      out_ << "sum_phi(" << *cfg_.totient_m << ")=" << t.sum << " walfisz_residual=" << format_fixed(t.walfisz_residual)
           << '\n';
    }
    return kOk;
  }

  int count_cumulative(unsigned n) {
    const CumulativeCount c = cumulative_m(n, *cfg_.cumulative);
    if (format_ == OutputFormat::json) {
      emit_json({{"kind", "cumulative"},
                 {"metadata", meta()},
                 {"N", n},
                 {"W", *cfg_.cumulative},
                 {"sum", c.sum},
                 {"leading", c.leading},
                 {"eight_over_pi_squared", kEightOverPiSquared}});
    } else if (format_ == OutputFormat::csv) {
      out_ << csv_row({"N", "W", "sum", "leading", "eight_over_pi_squared"})
           << csv_row({std::to_string(n), std::to_string(*cfg_.cumulative), std::to_string(c.sum),
                       format_fixed(c.leading), format_fixed(kEightOverPiSquared)});
    } else {
      out_ << "sum_{w<=" << *cfg_.cumulative << "} M_" << n << "(w)=" << c.sum << " leading=" << format_fixed(c.leading)
           << " (8/pi^2=" << format_fixed(kEightOverPiSquared) << ")\n";
    }
    return kOk;
  }

  int count_tail(unsigned n) {
    require_within(n, budget_.max_tail_n, "exhaustive tail-set count");
    const TailSetSizes t = tail_set_sizes(n, cfg_.delta, budget_.max_tail_n, cfg_.workers);
    if (format_ == OutputFormat::json) {
      emit_json({{"kind", "tail_sets"},
                 {"metadata", meta()},
                 {"N", n},
                 {"delta", t.delta},
                 {"small_count", t.small_count},
                 {"large_count", t.large_count},
                 {"predicted_small", t.predicted_small}});
    } else if (format_ == OutputFormat::csv) {
      out_ << csv_row({"N", "delta", "small_count", "large_count", "predicted_small"})
           << csv_row({std::to_string(n), format_fixed(t.delta, 6), std::to_string(t.small_count),
                       std::to_string(t.large_count), format_fixed(t.predicted_small, 6)});
    } else {
      out_ << "N=" << n << " delta=" << t.delta << " |small|=" << t.small_count << " |large|=" << t.large_count
           << " predicted_small=" << format_fixed(t.predicted_small, 3) << '\n';
    }
    return kOk;
  }

  int count_table(unsigned n) {
    std::uint64_t lo = 1;
    std::uint64_t hi = 0;
    if (cfg_.w) {
      lo = hi = *cfg_.w;
    } else if (cfg_.w_max) {
      hi = *cfg_.w_max;
    } else {
      while (within_formula_range(n, hi + 1)) ++hi;
    }
    if (lo == 0) throw InvalidInput("w must be >= 1");
    if (!cfg_.exhaustive && !within_formula_range(n, hi)) {
      throw RangeError("closed form holds only for w <= 2^((N-1)/2); add --exhaustive to count by enumeration");
    }
    std::vector<std::uint64_t> hist;
    if (cfg_.exhaustive) {
      require_within(n, budget_.max_count_n, "exhaustive M_N(w)");
      hist = complexity_histogram(n, cfg_.workers, budget_.max_count_n);
    }
    json rows = json::array();
    if (format_ == OutputFormat::csv) out_ << csv_row({"N", "w", "count_formula", "count_exhaustive"});
    if (format_ == OutputFormat::human) out_ << "N\tw\tformula\texhaustive\n";
    for (std::uint64_t w = lo; w <= hi; ++w) {
      std::optional<std::uint64_t> formula;
      if (within_formula_range(n, w)) formula = m_count_formula(n, w);
      std::optional<std::uint64_t> exhaustive;
      if (cfg_.exhaustive) exhaustive = w < hist.size() ? hist[w] : 0;
      const std::string ft = formula ? std::to_string(*formula) : "";
      const std::string et = exhaustive ? std::to_string(*exhaustive) : "";
      if (format_ == OutputFormat::json) {
        rows.push_back({{"N", n},
                        {"w", w},
                        {"count_formula", formula ? json(*formula) : json(nullptr)},
                        {"count_exhaustive", exhaustive ? json(*exhaustive) : json(nullptr)}});
      } else if (format_ == OutputFormat::csv) {
        out_ << csv_row({std::to_string(n), std::to_string(w), ft, et});
      } else {
        out_ << n << '\t' << w << '\t' << (ft.empty() ? "-" : ft) << '\t' << (et.empty() ? "-" : et) << '\n';
      }
    }
    if (format_ == OutputFormat::json) emit_json({{"kind", "count"}, {"metadata", meta()}, {"rows", rows}});
    return kOk;
  }

  int run_expected() {
    const unsigned from = cfg_.from != 0 ? cfg_.from : cfg_.n.value_or(0);
    const unsigned to = cfg_.to != 0 ? cfg_.to : from;
    if (from == 0 || to < from) throw InvalidInput("need 1 <= --from <= --to (or --n)");
    if (to > budget_.max_exhaustive_n) {
      throw BudgetExceeded("exhaustive expectation refused: N=" + std::to_string(to) + " exceeds the cap of " +
                           std::to_string(budget_.max_exhaustive_n) +
                           " (raise TWOADIC_MAX_EXHAUSTIVE_N or use montecarlo)");
    }
    auto verdict_text = [](const ExpectationRecord& r, std::initializer_list<const char*> names) {
      bool applicable = false;
      bool pass = true;
      for (const char* name : names) {
        const Verdict* v = r.verdict(name);
        if (v && v->applicable) {
          applicable = true;
          pass = pass && v->pass;
        }
      }
      return applicable ? detail::bool_text(pass) : std::string("skip");
    };
    json rows = json::array();
    if (format_ == OutputFormat::csv) {
      out_ << csv_row({"N", "e_rat_num", "e_rat_den_pow2", "e_2adic", "lb_2adic_pass", "lb_rat_pass", "tq_upper_pass"});
    } else if (format_ == OutputFormat::human) {
      out_ << "N\tE_rat\tE_2adic\tlower_2adic\tlower_rat\ttq_upper\n";
    }
    for (unsigned n = from; n <= to; ++n) {
      const ExpectationRecord r = exhaustive_expectation(n, cfg_.workers, budget_.max_exhaustive_n);
      const std::string lb2 = verdict_text(r, {"lower_2adic"});
      const std::string lbr = verdict_text(r, {"lower_rat"});
      const std::string tqu = verdict_text(r, {"tq_upper_rat", "tq_upper_2adic"});
      if (format_ == OutputFormat::json) {
        json verdicts = json::array();
        for (const auto& v : r.verdicts) {
          verdicts.push_back(
              {{"name", v.name}, {"applicable", v.applicable}, {"pass", v.pass}, {"slack", v.slack}});
        }
        rows.push_back({{"N", n},
                        {"e_rat_num", std::to_string(r.lambda_sum)},
                        {"e_rat_den_pow2", n},
                        {"e_rat", static_cast<double>(r.e_rat())},
                        {"e_2adic", r.e_2adic},
                        {"e_2adic_error_bound", r.e_2adic_error},
                        {"verdicts", verdicts}});
      } else if (format_ == OutputFormat::csv) {
        out_ << csv_row({std::to_string(n), std::to_string(r.lambda_sum), std::to_string(n),
                         format_fixed(r.e_2adic, 15), lb2, lbr, tqu});
      } else {
        out_ << n << '\t' << format_fixed(static_cast<double>(r.e_rat()), 6) << '\t' << format_fixed(r.e_2adic, 9)
             << '\t' << lb2 << '\t' << lbr << '\t' << tqu << '\n';
      }
    }
    if (format_ == OutputFormat::json) emit_json({{"kind", "expected"}, {"metadata", meta()}, {"rows", rows}});
    return kOk;
  }

  int run_montecarlo() {
    MonteCarloParams p{cfg_.seed, cfg_.samples, cfg_.n_max, cfg_.delta, cfg_.n0, cfg_.workers};
    p.validate();
    const AsymptoticsReport r = montecarlo_asymptotics(p);
    if (format_ == OutputFormat::csv) {
      out_ << csv_row({"sample", "N", "lambda", "deviation"});
      std::string line;
      for (std::size_t i = 0; i < r.lambda.size(); ++i) {
        for (unsigned n = 1; n <= p.n_max; ++n) {
          const double l = r.lambda[i][n - 1];
          out_ << csv_row({std::to_string(i), std::to_string(n), format_fixed(l), format_fixed(l - n / 2.0)});
        }
      }
    } else if (format_ == OutputFormat::json) {
      json theta = json::array();
      for (unsigned n = 1; n <= p.n_max; ++n) theta.push_back(r.theta_hits[n - 1]);
      json j = {{"kind", "montecarlo"},
                {"metadata", meta(p.seed)},
                {"params",
                 {{"samples", p.samples}, {"n_max", p.n_max}, {"n0", p.n0}, {"delta", p.delta}}},
                {"summary",
                 {{"fraction_within_sup_envelope", r.fraction_within(kSupDeviationEnvelope)},
                  {"mean_normalized_tail", r.mean_normalized_tail()}}},
                {"sup_deviation", r.sup_deviation},
                {"normalized_tail", r.normalized_tail},
                {"theta_hits", theta}};
      if (cfg_.traces) j["lambda_traces"] = r.lambda;
      emit_json(j);
    } else {
      out_ << "seed=" << p.seed << " samples=" << p.samples << " n_max=" << p.n_max << " n0=" << p.n0
           << " delta=" << p.delta << '\n';
      out_ << "fraction with sup|lambda(N)-N/2|/log2(N) <= " << kSupDeviationEnvelope << ": "
           << format_fixed(r.fraction_within(kSupDeviationEnvelope), 4) << '\n';
      out_ << "mean lambda(n_max)/n_max: " << format_fixed(r.mean_normalized_tail(), 6) << '\n';
      for (unsigned n = 16; n <= p.n_max; n *= 2) {
        out_ << "Theta_" << n << " frequency: " << format_fixed(r.theta_frequency(n), 6) << '\n';
      }
    }
    return kOk;
  }

  int run_selftest();

  RunConfig cfg_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  Budget budget_;
  OutputFormat format_ = OutputFormat::human;
};

inline int Runner::run_selftest() {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    out_ << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    if (!ok) ++failures;
  };
  const unsigned max_n = std::min(cfg_.selftest_max_n, budget_.max_oracle_n);

  {
    std::uint64_t mismatches = 0;
    std::uint64_t checked = 0;
    for (unsigned n = 1; n <= max_n; ++n) {
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        const BitSequence s = BitSequence::from_u64(x, n);
        if (min_rational_rep(s).norm() != brute_force_min_rep(s, budget_.max_oracle_n).norm()) ++mismatches;
        ++checked;
      }
    }
    for (unsigned n = max_n + 1; n <= std::min(16U, budget_.max_oracle_n); ++n) {
      for (unsigned i = 0; i < cfg_.selftest_random; ++i) {
        const BitSequence s = random_sequence(cfg_.seed + n, i, n);
        if (min_rational_rep(s).norm() != brute_force_min_rep(s, budget_.max_oracle_n).norm()) ++mismatches;
        ++checked;
      }
    }
    report("oracle_equivalence", mismatches == 0,
           std::to_string(checked) + " sequences, " + std::to_string(mismatches) + " mismatches");
  }
  {
    std::uint64_t mismatches = 0;
    const unsigned top = std::min(14U, budget_.max_count_n);
    for (unsigned n = 1; n <= top; ++n) {
      const auto hist = complexity_histogram(n, cfg_.workers, budget_.max_count_n);
      for (std::uint64_t w = 1; within_formula_range(n, w); ++w) {
        if (m_count_formula(n, w) != (w < hist.size() ? hist[w] : 0)) ++mismatches;
      }
    }
    report("counting_formula", mismatches == 0, "N<=" + std::to_string(top) + ", " + std::to_string(mismatches) + " mismatches");
  }
  {
    std::uint64_t violations = 0;
    const unsigned top = std::min(14U, budget_.max_pair_n);
    for (unsigned n = 2; n <= top; ++n) violations += pair_sum_check(n, cfg_.workers, budget_.max_pair_n).violations;
    report("pair_sum_lemma", violations == 0, "N<=" + std::to_string(top) + ", " + std::to_string(violations) + " violations");
  }
  {
    std::uint64_t violations = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << max_n); ++x) {
      violations += growth_check(BitSequence::from_u64(x, max_n));
    }
    for (unsigned i = 0; i < 100; ++i) violations += growth_check(random_sequence(cfg_.seed, i, 256));
    report("growth_lemma", violations == 0, std::to_string(violations) + " violations");
  }
  {
    std::uint64_t violations = 0;
    for (unsigned n = 2; n <= 16; ++n) violations += leading_zero_family_violations(n);
    report("leading_zero_family", violations == 0, std::to_string(violations) + " violations");
  }
  {
    std::uint64_t failures_rt = 0;
    for (unsigned n = 1; n <= std::min(max_n, 10U); ++n) {
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        const BitSequence s = BitSequence::from_u64(x, n);
        const RationalApprox r = min_rational_rep(s);
        if (!(expand_rational(r.q, r.f, n) == s)) ++failures_rt;
      }
    }
    report("expansion_round_trip", failures_rt == 0, std::to_string(failures_rt) + " failures");
  }
  {
    std::uint64_t failed = 0;
    for (unsigned n = 2; n <= std::min(14U, budget_.max_exhaustive_n); ++n) {
      const ExpectationRecord r = exhaustive_expectation(n, cfg_.workers, budget_.max_exhaustive_n);
      for (const auto& v : r.verdicts) failed += (v.applicable && !v.pass) ? 1 : 0;
    }
    report("expectation_bounds", failed == 0, std::to_string(failed) + " failed verdicts");
  }
  out_ << "selftest: " << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << '\n';
  return failures == 0 ? kOk : kCheckFailed;
}

namespace detail {

inline void add_input_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--bits", cfg.bits_inline, "Inline sequence (s_0 first)");
  sub->add_option("--file", cfg.path, "Read the sequence from a file");
  sub->add_flag("--stdin", cfg.use_stdin, "Read the sequence from standard input");
  sub->add_option("--input-format", cfg.input_format, "ascii01 or hex (bytes least significant bit first)");
  sub->add_option("--take", cfg.take, "Keep only the first N bits");
}

inline void add_format_option(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.output_format, "csv, json or human");
}

}  // namespace detail

/// Parses argv (without the program name) and runs the selected subcommand.
/// Exit status: 0 success, 1 budget refusal, 2 usage or input error, 3 failed self-test.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact 2-adic and rational complexity of binary sequences", "twoadic"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto* complexity_cmd = app.add_subcommand("complexity", "Complexity profile of one sequence");
  detail::add_input_options(complexity_cmd, cfg);
  detail::add_format_option(complexity_cmd, cfg);

  auto* approx_cmd = app.add_subcommand("approx", "Minimal rational representation f/q");
  detail::add_input_options(approx_cmd, cfg);
  detail::add_format_option(approx_cmd, cfg);
  approx_cmd->add_flag("--oracle", cfg.oracle, "Use the exhaustive brute-force scan");

  auto* expand_cmd = app.add_subcommand("expand", "Bits of the 2-adic expansion of f/q");
  expand_cmd->add_option("--q", cfg.q_text, "Odd positive denominator")->required();
  expand_cmd->add_option("--f", cfg.f_text, "Numerator")->required();
  expand_cmd->add_option("--n", cfg.n, "Number of bits")->required();
  expand_cmd->add_option("--bits-format", cfg.bits_format, "ascii01 or hex");
  detail::add_format_option(expand_cmd, cfg);

  auto* fcsr_cmd = app.add_subcommand("fcsr", "Simulate a feedback-with-carry shift register");
  fcsr_cmd->add_option("--taps", cfg.taps, "a_0..a_{L-1} as a 0/1 string")->required();
  fcsr_cmd->add_option("--init", cfg.init_bits, "s_0..s_{L-1} as a 0/1 string")->required();
  fcsr_cmd->add_option("--carry", cfg.carry_text, "Initial carry z_{L-1}");
  fcsr_cmd->add_option("--n", cfg.n, "Output length")->required();
  detail::add_format_option(fcsr_cmd, cfg);

  auto* count_cmd = app.add_subcommand("count", "Counts of sequences by rational complexity");
  count_cmd->add_option("--n", cfg.n, "Sequence length N");
  count_cmd->add_option("--w", cfg.w, "Single complexity value w");
  count_cmd->add_option("--w-max", cfg.w_max, "Tabulate w = 1..W");
  count_cmd->add_flag("--exhaustive", cfg.exhaustive, "Also count by enumeration");
  count_cmd->add_option("--cumulative", cfg.cumulative, "Sum M_N(w) for w <= W");
  count_cmd->add_flag("--tail", cfg.tail, "Sizes of the small/large deviation sets");
  count_cmd->add_option("--delta", cfg.delta, "Deviation parameter delta");
  count_cmd->add_option("--totient-sum", cfg.totient_m, "Sum of phi(w) for w <= m");
  count_cmd->add_option("--workers", cfg.workers, "Worker threads");
  detail::add_format_option(count_cmd, cfg);

  auto* expected_cmd = app.add_subcommand("expected", "Exhaustive expected complexities and bound checks");
  expected_cmd->add_option("--from", cfg.from, "First N");
  expected_cmd->add_option("--to", cfg.to, "Last N");
  expected_cmd->add_option("--n", cfg.n, "Single N");
  expected_cmd->add_option("--workers", cfg.workers, "Worker threads");
  detail::add_format_option(expected_cmd, cfg);

  auto* mc_cmd = app.add_subcommand("montecarlo", "Complexity profiles of seeded random sequences");
  mc_cmd->add_option("--seed", cfg.seed, "64-bit seed");
  mc_cmd->add_option("--samples", cfg.samples, "Number of sequences");
  mc_cmd->add_option("--n-max", cfg.n_max, "Sequence length");
  mc_cmd->add_option("--n0", cfg.n0, "Smallest N in the sup-deviation statistic");
  mc_cmd->add_option("--delta", cfg.delta, "Deviation parameter for Theta_N (> 1)");
  mc_cmd->add_option("--workers", cfg.workers, "Worker threads");
  mc_cmd->add_flag("--traces", cfg.traces, "Include per-sample lambda traces in JSON");
  detail::add_format_option(mc_cmd, cfg);

  auto* selftest_cmd = app.add_subcommand("selftest", "Oracle equivalence and lemma checks");
  selftest_cmd->add_option("--max-n", cfg.selftest_max_n, "Exhaustive oracle comparison up to this N");
  selftest_cmd->add_option("--random", cfg.selftest_random, "Random sequences per N above --max-n");
  selftest_cmd->add_option("--seed", cfg.seed, "Seed for the random part");
  selftest_cmd->add_option("--workers", cfg.workers, "Worker threads");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    Runner runner(std::move(cfg), in, out, err);
    return runner.dispatch();
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const InvalidInput& e) {
    err << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace twoadic::cli

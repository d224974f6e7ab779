#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "exrand/exrand.hpp"

namespace exrand::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int {
  ok = 0,
  verification_failed = 1,
  bad_input = 2,
  io_error = 3,
  guard_exceeded = 4,
  unsupported = 5,
};

class io_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts plain integers and the shorthands 1e6 / 10^6.
inline std::uint64_t parse_count(const std::string& text) {
  auto pow10 = [&](const std::string& exp) -> std::uint64_t {
    std::size_t pos = 0;
    const unsigned long e = std::stoul(exp, &pos);
    if (pos != exp.size() || e > 18) throw std::invalid_argument("bad exponent in '" + text + "'");
    std::uint64_t v = 1;
    for (unsigned long i = 0; i < e; ++i) v *= 10;
    return v;
  };
  if (text.rfind("10^", 0) == 0) return pow10(text.substr(3));
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    std::size_t pos = 0;
    const unsigned long mant = std::stoul(text.substr(0, e), &pos);
    if (pos != e) throw std::invalid_argument("bad number '" + text + "'");
    return mant * pow10(text.substr(e + 1));
  }
  std::size_t pos = 0;
  if (text.empty() || text[0] == '-') throw std::invalid_argument("bad number '" + text + "'");
  const unsigned long long v = std::stoull(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("bad number '" + text + "'");
  return v;
}

inline std::uint64_t parse_alphabet(const std::string& text) {
  if (text == "inf" || text == "infinity") return infinite_alphabet;
  return parse_count(text);
}

// ---------------------------------------------------------------------------
// Payoff documents

struct PayoffDocument {
  SequenceSpace space;
  bool is_event = false;
  Payoff payoff;
};

inline PayoffDocument parse_payoff_document(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("document must be a JSON object");
  const auto k = doc.at("k").get<std::int64_t>();
  const auto n = doc.at("n").get<std::int64_t>();
  if (k < 1 || n < 1) throw std::invalid_argument("k and n must be positive");
  const SequenceSpace space(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n));
  space.require_indexable();

  const auto kind = doc.at("kind").get<std::string>();
  if (kind != "event" && kind != "payoff") {
    throw std::invalid_argument("kind must be \"event\" or \"payoff\"");
  }
  const bool is_event = kind == "event";
  const double d = doc.value("default", 0.0);
  auto check_value = [&](double v, const char* what) {
    if (!(v >= 0.0) || std::isinf(v)) throw std::invalid_argument(std::string(what) + " must be >= 0");
    if (is_event && v != 0.0 && v != 1.0) {
      throw std::invalid_argument(std::string(what) + " must be 0 or 1 for an event");
    }
  };
  check_value(d, "default");

  std::map<std::uint64_t, double> table;
  for (const auto& entry : doc.value("entries", json::array())) {
    const auto symbols = entry.at("seq").get<std::vector<std::int64_t>>();
    std::vector<Symbol> seq;
    for (auto s : symbols) {
      if (s < 1 || static_cast<std::uint64_t>(s) > space.k()) {
        throw std::invalid_argument("symbol " + std::to_string(s) + " outside 1.." +
                                    std::to_string(space.k()));
      }
      seq.push_back(static_cast<Symbol>(s));
    }
    const double v = entry.at("value").get<double>();
    check_value(v, "value");
    const auto idx = encode(Sequence(space, std::move(seq)));
    if (!table.emplace(idx, v).second) throw std::invalid_argument("duplicate sequence in entries");
  }
  return PayoffDocument{space, is_event, Payoff(space, std::move(table), d)};
}

inline json witness_json(const Witness& w) {
  if (const auto* c = std::get_if<CountVector>(&w)) {
    return json{{"type", "counts"}, {"counts", c->vector()}};
  }
  const auto& q = std::get<SimplexPoint>(w);
  return json{{"type", "simplex"}, {"probs", q.probs()}};
}

inline json report_json(const BoundReport& r) {
  return json{{"quantity", std::string(to_string(r.quantity))},
              {"value", r.value},
              {"method", std::string(to_string(r.method))},
              {"witness", witness_json(r.witness)},
              {"tolerance", r.tolerance}};
}

inline reference::Expectations load_expectations(const std::string& path) {
  reference::Expectations e;
  if (path.empty()) return e;
  std::ifstream in(path);
  if (!in) throw io_failure("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("expectations: ") + err.what());
  }
  auto take = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  take("distinct_n", e.distinct_n);
  take("distinct_level", e.distinct_level);
  take("distinct_robbins_bound", e.distinct_robbins_bound);
  take("robbins_rel_tol", e.robbins_rel_tol);
  take("percent_k", e.percent_k);
  take("percent_sufficient_n", e.percent_sufficient_n);
  take("percent_minimal_n", e.percent_minimal_n);
  take("five_sigma_level", e.five_sigma_level);
  take("five_sigma_n", e.five_sigma_n);
  take("five_sigma_k", e.five_sigma_k);
  take("coin_n", e.coin_n);
  take("coin_urp", e.coin_urp);
  take("coin_tol", e.coin_tol);
  take("slopes", e.slopes);
  take("slope_tol", e.slope_tol);
  take("endpoint_n", e.endpoint_n);
  take("endpoint_log10", e.endpoint_log10);
  take("endpoint_tol", e.endpoint_tol);
  take("bracket_tol", e.bracket_tol);
  return e;
}

// ---------------------------------------------------------------------------
// Commands

inline int cmd_constant(std::uint64_t n, std::uint64_t k, bool as_json, std::ostream& out) {
  const auto tc = tight_constant(n, k);
  const std::string k_text = tc.unbounded_alphabet() ? "inf" : std::to_string(k);
  std::optional<double> decimal;
  if (tc.log10_c < 300.0) decimal = tc.value().value();
  const auto& s = tc.split;
  if (as_json) {
    json j{{"n", n}, {"k", tc.unbounded_alphabet() ? json("inf") : json(k)}, {"log10_C", tc.log10_c}};
    j["C_decimal_if_small"] = decimal ? json(*decimal) : json(nullptr);
    j["split"] = json{{"parts", s.parts}, {"floor", s.base},
                      {"ceil", s.ceil_parts ? s.base + 1 : s.base}, {"ceil_parts", s.ceil_parts}};
    if (s.parts <= 10'000) j["split_counts"] = s.counts().vector();
    out << j.dump(2) << '\n';
    return ok;
  }
  out << "n        " << n << '\n'
      << "k        " << k_text << '\n'
      << "log10_C  " << format::log10_value(tc.log10_c) << '\n'
      << "C        " << (decimal ? format::significant(*decimal, 6) : std::string("(too large)"))
      << '\n'
      << "split    ";
  if (s.ceil_parts) out << s.ceil_parts << " x " << s.base + 1;
  if (s.ceil_parts && s.parts > s.ceil_parts) out << ", ";
  if (s.parts > s.ceil_parts) out << s.parts - s.ceil_parts << " x " << s.base;
  out << '\n';
  return ok;
}

inline int cmd_figure(const FigureOptions& opt, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    write_figure(out, opt);
    return ok;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw io_failure("cannot open " + path + " for writing");
  write_figure(file, opt);
  file.flush();
  if (!file) throw io_failure("write to " + path + " failed");
  return ok;
}

inline int cmd_bounds(const std::string& input, const std::string& quantity,
                      const std::string& method, std::ostream& out) {
  json doc;
  {
    std::ifstream in(input);
    if (!in) throw io_failure("cannot read " + input);
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
  }
  PayoffDocument d = [&] {
    try {
      return parse_payoff_document(doc);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("invalid document: ") + e.what());
    }
  }();

  const bool probability = quantity == "uxp" || quantity == "urp";
  if (probability && !d.is_event) {
    throw std::invalid_argument("uxp/urp need a document of kind \"event\"");
  }
  BoundReport r;
  if (quantity == "uxp" || quantity == "uxe") {
    if (method == "numeric" || method == "oracle") {
      throw unsupported_method("the exchangeability side is always computed exactly");
    }
    r = uxe(d.payoff);
  } else {
    UreOptions opt;
    if (method == "exact") opt.strategy = Strategy::exact;
    if (method == "numeric") opt.strategy = Strategy::numeric;
    if (method == "oracle") opt.strategy = Strategy::oracle;
    r = ure(d.payoff, opt);
  }
  if (quantity == "uxp") r.quantity = Quantity::uxp;
  if (quantity == "urp") r.quantity = Quantity::urp;
  out << report_json(r).dump(2) << '\n';
  return ok;
}

inline int cmd_thresholds(std::optional<double> epsilon, std::optional<unsigned> ten_to_minus,
                          bool five_sigma, std::ostream& out) {
  const int chosen = (epsilon ? 1 : 0) + (ten_to_minus ? 1 : 0) + (five_sigma ? 1 : 0);
  if (chosen != 1) {
    throw std::invalid_argument("give exactly one of --epsilon, --ten-to-minus, --five-sigma");
  }
  LevelThreshold t;
  double level = 0.0;
  if (ten_to_minus) {
    t = min_n_for_decimal_level(*ten_to_minus);
    level = std::pow(10.0, -static_cast<double>(*ten_to_minus));
  } else {
    level = five_sigma ? reference::Expectations{}.five_sigma_level : *epsilon;
    t = min_n_for_level(level);
  }
  json j{{"epsilon", level}, {"minimal_n", t.minimal_n}};
  if (t.sufficient_n) j["sufficient_n"] = *t.sufficient_n;
  out << j.dump(2) << '\n';
  return ok;
}

inline int cmd_examples(const reference::Expectations& e, std::ostream& out) {
  bool all = true;
  for (const auto& line : suites::reference_checks(e)) {
    out << (line.passed ? "PASS  " : "FAIL  ") << line.name << ": " << line.measured
        << "  (expected " << line.expected << ")\n";
    all = all && line.passed;
  }
  return all ? ok : verification_failed;
}

inline int cmd_verify(const suites::VerifyOptions& opt, std::ostream& out) {
  std::size_t checks = 0;
  std::size_t failed_suites = 0;
  const auto results = suites::run_verification(opt);
  for (const auto& s : results) {
    out << (s.ok() ? "PASS  " : "FAIL  ") << s.name << " (" << s.passed << "/" << s.total
        << ")\n";
    for (const auto& f : s.failures) out << "      " << f << '\n';
    checks += s.total;
    if (!s.ok()) ++failed_suites;
  }
  out << results.size() << " suites, " << checks << " checks, " << failed_suites
      << " failed suites\n";
  return failed_suites == 0 ? ok : verification_failed;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Upper probabilities and expectations under exchangeability and randomness"};
  app.name("exrand");
  app.require_subcommand(1);

  std::string n_text, k_text = "inf";
  bool as_json = false;
  auto* constant = app.add_subcommand("constant", "tight constant C(N, K)");
  constant->add_option("--n", n_text, "sequence length N")->required();
  constant->add_option("--k", k_text, "alphabet size K, or inf");
  constant->add_flag("--json", as_json, "JSON output");

  std::string fig_n = "1000", fig_k_max, out_path;
  std::uint64_t fig_step = 1;
  auto* figure = app.add_subcommand("figure", "CSV of log10 C against K");
  figure->add_option("--n", fig_n, "sequence length N");
  figure->add_option("--k-max", fig_k_max, "largest K (default N)");
  figure->add_option("--step", fig_step, "K increment");
  figure->add_option("--out", out_path, "output CSV path (default stdout)");

  std::string input, quantity, method = "auto";
  auto* bounds = app.add_subcommand("bounds", "UXP/URP/UXE/URE of a payoff document");
  bounds->add_option("--input", input, "PayoffDocument JSON")->required();
  bounds->add_option("--quantity", quantity, "uxp|urp|uxe|ure")
      ->required()
      ->check(CLI::IsMember({"uxp", "urp", "uxe", "ure"}));
  bounds->add_option("--method", method, "auto|exact|numeric|oracle")
      ->check(CLI::IsMember({"auto", "exact", "numeric", "oracle"}));

  std::optional<double> epsilon;
  std::optional<unsigned> ten_to_minus;
  bool five_sigma = false;
  auto* thresholds = app.add_subcommand("thresholds", "smallest N reaching a significance level");
  thresholds->add_option("--epsilon", epsilon, "level in (0, 1)");
  thresholds->add_option("--ten-to-minus", ten_to_minus, "level 10^-k");
  thresholds->add_flag("--five-sigma", five_sigma, "level 1/(3 x 10^6)");

  std::string expectations_path;
  auto* examples = app.add_subcommand("examples", "reproduce the reference numbers");
  examples->add_option("--expectations", expectations_path, "JSON overriding stored expectations");

  bool deep = false;
  auto* verify = app.add_subcommand("verify", "run the oracle and property suites");
  verify->add_flag("--deep", deep, "wider n, k ranges and more random instances");
  verify->add_option("--expectations", expectations_path, "JSON overriding stored expectations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : bad_input;
  }

  try {
    if (*constant) return cmd_constant(parse_count(n_text), parse_alphabet(k_text), as_json, out);
    if (*figure) {
      FigureOptions opt;
      opt.n = parse_count(fig_n);
      opt.k_max = fig_k_max.empty() ? 0 : parse_count(fig_k_max);
      opt.step = fig_step;
      return cmd_figure(opt, out_path, out);
    }
    if (*bounds) return cmd_bounds(input, quantity, method, out);
    if (*thresholds) return cmd_thresholds(epsilon, ten_to_minus, five_sigma, out);
    if (*examples) return cmd_examples(load_expectations(expectations_path), out);
    if (*verify) {
      suites::VerifyOptions opt;
      opt.deep = deep;
      opt.expectations = load_expectations(expectations_path);
      return cmd_verify(opt, out);
    }
  } catch (const io_failure& e) {
    err << "error: " << e.what() << '\n';
    return io_error;
  } catch (const guard_error& e) {
    err << "error: " << e.what() << '\n';
    return guard_exceeded;
  } catch (const unsupported_method& e) {
    err << "error: " << e.what() << '\n';
    return unsupported;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return bad_input;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return bad_input;
  }
  return bad_input;
}

}  // namespace exrand::cli

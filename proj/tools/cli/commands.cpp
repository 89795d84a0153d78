#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cantor/cbw.hpp"
#include "cantor/construct.hpp"
#include "cantor/counting.hpp"
#include "cantor/digit_file.hpp"
#include "cantor/divergence.hpp"
#include "cantor/error.hpp"
#include "cantor/expansion.hpp"
#include "cantor/stochastic.hpp"

namespace cantor::cli {

namespace {

enum class Format { json, csv, digits };

struct Globals {
  std::optional<std::string> format;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out_path;
};

Format resolve_format(const Globals& g, Format fallback, std::initializer_list<Format> allowed) {
  Format f = fallback;
  if (g.format) {
    if (*g.format == "json") f = Format::json;
    else if (*g.format == "csv") f = Format::csv;
    else if (*g.format == "digits") f = Format::digits;
    else throw Error(ErrorKind::config, "unknown format '" + *g.format + "'");
  }
  if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
    throw Error(ErrorKind::config, "format '" + g.format.value_or("") + "' is not available here");
  }
  return f;
}

// Writes to --out when given, otherwise to the command's stream.
void emit(const Globals& g, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (g.out_path.empty() || g.out_path == "-") {
    body(out);
    out.flush();
    if (!out) throw Error(ErrorKind::io, "failed to write output");
    return;
  }
  std::ofstream file(g.out_path);
  if (!file) throw Error(ErrorKind::io, "cannot open '" + g.out_path + "' for writing");
  body(file);
  file.flush();
  if (!file) throw Error(ErrorKind::io, "failed to write '" + g.out_path + "'");
}

void emit_json(const Globals& g, std::ostream& out, const Json& j) {
  emit(g, out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

Json envelope(const std::string& command, Json config) {
  Json j;
  j["schema_version"] = schema_version;
  j["command"] = command;
  j["config"] = std::move(config);
  return j;
}

Json digits_json(const DigitString& digits) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits.is_wide()) arr.push_back(digits.value(i).str());
    else arr.push_back(digits.narrow()[i]);
  }
  return arr;
}

void write_report_csv(std::ostream& o, const StatReport& report) { write_csv(o, report); }

Json report_json(const std::string& command, Json config, const StatReport& report) {
  Json j = envelope(command, std::move(config));
  const Json body = to_json(report);
  j["series"] = body["series"];
  j["summary"] = body["summary"];
  return j;
}

std::shared_ptr<const ConstructionSpec> spec_from(const std::string& text) {
  if (text == "standard" || text == "paper" || text == "construction") return standard_spec();
  constexpr std::string_view prefix = "scaled:";
  if (text.rfind(prefix, 0) == 0) return parse_scaled_spec(std::string_view(text).substr(prefix.size()));
  throw Error(ErrorKind::parse, "spec must be 'standard' or 'scaled:...', got '" + text + "'");
}

// ---- expand ----

struct ExpandArgs {
  std::string x;
  std::string seq;
  std::uint64_t n = 0;
};

void run_expand(const Globals& g, const ExpandArgs& a, std::ostream& out) {
  const auto seq = BasicSequence::parse(a.seq);
  const Rational x = parse_rational(a.x);
  const auto prefix = expand_rational(x, seq, a.n);
  switch (resolve_format(g, Format::digits, {Format::digits, Format::json, Format::csv})) {
    case Format::digits:
      emit(g, out, [&](std::ostream& o) { write_digit_file(o, prefix); });
      break;
    case Format::csv:
      emit(g, out, [&](std::ostream& o) {
        o << "n,digit,q\n";
        for (std::uint64_t m = 1; m <= prefix.length(); ++m)
          o << m << ',' << prefix.digit(m).str() << ',' << seq.q(m).str() << '\n';
      });
      break;
    case Format::json: {
      Json j = envelope("expand", Json{{"x", to_string(x)}, {"seq", seq.descriptor()}, {"n", a.n}});
      const auto [lo, hi] = prefix_interval(prefix);
      j["digits"] = digits_json(prefix.digits());
      j["value"] = to_string(prefix_value(prefix));
      j["interval"] = Json{{"lo", to_string(lo)}, {"hi", to_string(hi)}};
      emit_json(g, out, j);
      break;
    }
  }
}

// ---- count ----

struct CountArgs {
  std::string file;
  std::vector<std::string> blocks;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> k;
  std::string mode = "plain";
  std::optional<std::uint64_t> phase;
  std::optional<std::uint64_t> alphabet;
};

void run_count(const Globals& g, const CountArgs& a, std::ostream& out) {
  const auto file = read_digit_file(a.file);
  const auto prefix = file.to_prefix();
  const std::uint64_t total = prefix.length();
  std::vector<Block> blocks;
  for (const auto& text : a.blocks) blocks.push_back(Block::parse(text));

  std::uint64_t k = a.k.value_or(blocks.empty() ? 1 : blocks.front().length());
  if (k == 0) throw Error(ErrorKind::domain, "k must be >= 1");
  for (const auto& b : blocks) {
    if (b.length() != k) throw Error(ErrorKind::domain, "every block must have length k = " + std::to_string(k));
  }
  const bool stride_modes = a.mode == "strided" || a.mode == "strong";
  const std::uint64_t lookahead = stride_modes ? 2 * k - 2 : k - 1;
  const std::uint64_t n = a.n.value_or(total > lookahead ? total - lookahead : 1);
  if (n == 0) throw Error(ErrorKind::domain, "n must be >= 1");

  Json config{{"file", a.file}, {"seq", prefix.sequence().descriptor()}, {"mode", a.mode}, {"n", n}, {"k", k}};
  Json block_list = Json::array();
  for (const auto& b : blocks) block_list.push_back(b.to_string());
  config["blocks"] = block_list;

  StatReport report;
  if (a.mode == "plain") {
    if (blocks.empty()) throw Error(ErrorKind::config, "plain mode needs at least one --block");
    report = normality_report(prefix, n, k, blocks);
    Json counts = Json::object();
    for (const auto& b : blocks) counts[b.to_string()] = count_occurrences(prefix, b, n);
    report.summary["counts"] = counts;
    report.summary["Q"] = to_string(q_partial(prefix.sequence(), n, k));
  } else if (a.mode == "strided") {
    if (blocks.empty()) throw Error(ErrorKind::config, "strided mode needs at least one --block");
    std::vector<std::uint64_t> phases;
    if (a.phase) phases.push_back(*a.phase);
    else for (std::uint64_t p = 1; p <= k; ++p) phases.push_back(p);
    config["phases"] = phases;
    for (const auto p : phases) {
      if (p < 1 || p > k) throw Error(ErrorKind::domain, "phase must lie in [1, k]");
      const Rational q = q_partial_strided(prefix.sequence(), n, k, p);
      for (const auto& b : blocks) {
        const std::uint64_t c = count_strided(prefix, b, n, p);
        StatSeries s;
        s.name = "strided:p=" + std::to_string(p) + ",B=" + b.to_string();
        s.params = Json{{"p", p}, {"block", b.to_string()}};
        StatPoint point;
        point.n = n;
        if (q > 0) point.value = to_double(Rational(Natural(c)) / q);
        point.detail = Json{{"N", c}, {"Q", to_string(q)}};
        s.values.push_back(std::move(point));
        report.series.push_back(std::move(s));
      }
    }
  } else if (a.mode == "strong") {
    Digit top = 1;
    for (std::uint64_t m = 1; m <= total; ++m) top = std::max<Digit>(top, to_u64(prefix.digit(m)));
    const std::uint64_t alphabet = a.alphabet.value_or(top + 1);
    config["alphabet"] = alphabet;
    report = strong_normality_report(prefix, n, k, alphabet);
  } else if (a.mode == "ratio") {
    if (blocks.empty()) throw Error(ErrorKind::config, "ratio mode needs at least one --block");
    report = ratio_report(prefix, n, k, blocks);
  } else {
    throw Error(ErrorKind::config, "unknown mode '" + a.mode + "'");
  }

  if (resolve_format(g, Format::json, {Format::json, Format::csv}) == Format::csv) {
    emit(g, out, [&](std::ostream& o) { write_report_csv(o, report); });
  } else {
    emit_json(g, out, report_json("count", config, report));
  }
}

// ---- construct ----

struct ConstructArgs {
  std::string spec;
  std::string start = "1";
  std::uint64_t count = 100;
};

void run_construct(const Globals& g, const ConstructArgs& a, std::ostream& out) {
  const auto spec = spec_from(a.spec);
  const Natural start = parse_natural(a.start);
  if (start < 1) throw Error(ErrorKind::domain, "start must be >= 1");
  const auto streamed = stream_digits(spec, start, a.count);
  const auto seq = BasicSequence::construction(spec);
  switch (resolve_format(g, Format::digits, {Format::digits, Format::json, Format::csv})) {
    case Format::digits:
      emit(g, out, [&](std::ostream& o) { write_digit_file(o, seq, start, streamed.digits); });
      break;
    case Format::csv:
      emit(g, out, [&](std::ostream& o) {
        o << "n,digit,q\n";
        Natural pos = start;
        for (std::size_t i = 0; i < streamed.digits.size(); ++i, ++pos)
          o << pos.str() << ',' << streamed.digits.value(i).str() << ',' << streamed.radices[i] << '\n';
      });
      break;
    case Format::json: {
      Json j = envelope("construct", Json{{"spec", spec->descriptor()}, {"start", start.str()}, {"count", a.count}});
      j["violations"] = spec->violations();
      j["digits"] = digits_json(streamed.digits);
      j["radices"] = streamed.radices;
      emit_json(g, out, j);
      break;
    }
  }
}

// ---- classify ----

struct ClassifyArgs {
  std::string seq;
  std::uint64_t k = 1;
  std::uint64_t horizon = 1'000'000;
  bool strong = false;
  double threshold = 0.05;
};

void run_classify(const Globals& g, const ClassifyArgs& a, std::ostream& out) {
  const auto seq = BasicSequence::parse(a.seq);
  DivergenceOptions opts;
  opts.tail_threshold = a.threshold;
  const auto report = classify_divergence(seq, a.k, a.horizon, a.strong, opts);
  if (resolve_format(g, Format::json, {Format::json, Format::csv}) == Format::csv) {
    emit(g, out, [&](std::ostream& o) {
      o.precision(17);
      o << "scope,value_at_horizon,verdict,tail_increment,bounded_estimate\n";
      auto row = [&](const std::string& scope, const Real& v, Verdict verdict, const Real& inc, bool bounded) {
        o << scope << ',' << to_string(v, 20) << ',' << to_string(verdict) << ',' << to_string(inc, 20);
        o << ',' << (bounded ? 1 : 0) << '\n';
      };
      row("all", report.value_at_horizon, report.verdict, report.tail_increment, report.bounded_estimate);
      if (report.per_phase) {
        for (const auto& ph : *report.per_phase)
          row("p=" + std::to_string(ph.p), ph.value_at_horizon, ph.verdict, ph.tail_increment, ph.bounded_estimate);
      }
    });
    return;
  }
  Json j = envelope("classify", Json{{"seq", seq.descriptor()}, {"k", a.k}, {"horizon", a.horizon},
                                     {"strong", a.strong}, {"threshold", a.threshold}});
  j["report"] = to_json(report);
  emit_json(g, out, j);
}

// ---- experiment ----

struct ExperimentArgs {
  std::string kind;
  std::string seq;
  std::string block = "0";
  std::uint64_t n = 0;
  std::uint64_t trials = 100;
  double c = 3.0;
  std::uint64_t k = 1;
  bool inject_all_zero = false;
};

void run_experiment(const Globals& g, const ExperimentArgs& a, std::ostream& out) {
  const auto seq = BasicSequence::parse(a.seq);
  if (a.n == 0) throw Error(ErrorKind::config, "n must be >= 1");
  if (a.trials == 0) throw Error(ErrorKind::config, "trials must be >= 1");
  const Format f = resolve_format(g, Format::json, {Format::json, Format::csv});
  if (a.kind == "lil") {
    LilConfig cfg{seq, Block::parse(a.block), a.n, a.trials, g.seed, a.c, g.threads, a.inject_all_zero};
    const auto result = run_lil_experiment(cfg);
    if (f == Format::csv) emit(g, out, [&](std::ostream& o) { write_csv(o, result); });
    else emit_json(g, out, to_json(result));
  } else if (a.kind == "omission") {
    OmissionConfig cfg{seq, a.k, a.n, a.trials, g.seed, g.threads};
    const auto result = run_omission_experiment(cfg);
    if (f == Format::csv) emit(g, out, [&](std::ostream& o) { write_csv(o, result); });
    else emit_json(g, out, to_json(result));
  } else {
    throw Error(ErrorKind::config, "unknown experiment '" + a.kind + "' (lil or omission)");
  }
}

// ---- cbw ----

struct CbwArgs {
  std::string action;
  std::uint64_t base = 2;
  std::uint64_t width = 3;
  std::string file;
  std::string index = "1";
};

Json verification_json(const Natural& zeros, const Natural& ones, bool bias_ok) {
  return Json{{"zeros_odd", zeros.str()}, {"ones_odd", ones.str()}, {"bias_ok", bias_ok}};
}

void run_cbw(const Globals& g, const CbwArgs& a, std::ostream& out) {
  Json config{{"action", a.action}, {"b", a.base}, {"w", a.width}};
  if (a.action == "build") {
    const Block word = build_cbw(a.base, a.width);
    const auto v = verify_cbw(word, a.base, a.width);
    const Format f = resolve_format(g, Format::digits, {Format::digits, Format::json});
    if (f == Format::digits) {
      emit(g, out, [&](std::ostream& o) {
        write_digit_file(o, BasicSequence::constant(a.base), Natural(1), word.entries());
      });
      return;
    }
    Json j = envelope("cbw", config);
    j["length"] = word.length();
    j["verification"] = verification_json(v.zeros_odd, v.ones_odd, v.bias_ok);
    j["verification"]["complete"] = v.complete;
    j["digits"] = digits_json(word.entries());
    emit_json(g, out, j);
  } else if (a.action == "verify") {
    resolve_format(g, Format::json, {Format::json});
    Json j;
    if (a.file.empty()) {
      const auto v = verify_bias_analytic(a.base, a.width);
      config["method"] = "analytic";
      j = envelope("cbw", config);
      j["verification"] = verification_json(v.zeros_odd, v.ones_odd, v.bias_ok);
    } else {
      const auto file = read_digit_file(a.file);
      const auto v = verify_cbw(Block(file.digits), a.base, a.width);
      config["method"] = "scan";
      config["file"] = a.file;
      j = envelope("cbw", config);
      j["verification"] = verification_json(v.zeros_odd, v.ones_odd, v.bias_ok);
      j["verification"]["complete"] = v.complete;
    }
    j["verification"]["best_bias"] = to_string(CbwOrdering(a.base, a.width).best_bias());
    emit_json(g, out, j);
  } else if (a.action == "digit") {
    resolve_format(g, Format::json, {Format::json});
    const Natural idx = parse_natural(a.index);
    config["index"] = idx.str();
    Json j = envelope("cbw", config);
    j["digit"] = cbw_digit_at(a.base, a.width, idx);
    emit_json(g, out, j);
  } else {
    throw Error(ErrorKind::config, "unknown cbw action '" + a.action + "' (build, verify or digit)");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Q-Cantor series expansions, block counting and normality experiments", "cantor"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format: json, csv or digits");
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads for experiments")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--out", g.out_path, "Output path (default: standard output)");

  std::function<void()> action;

  ExpandArgs ea;
  auto* expand = app.add_subcommand("expand", "Greedy Q-Cantor digits of a rational in [0,1)");
  expand->add_option("x", ea.x, "Rational p/q")->required();
  expand->add_option("--seq", ea.seq, "Basic sequence descriptor")->required();
  expand->add_option("-n", ea.n, "Number of digits")->required();
  expand->callback([&] { action = [&] { run_expand(g, ea, out); }; });

  CountArgs ca;
  auto* count = app.add_subcommand("count", "Block counts and normality ratios of a digit file");
  count->add_option("file", ca.file, "Digit file")->required();
  count->add_option("--block,-B", ca.blocks, "Block such as 0,1 (repeatable)");
  count->add_option("-n", ca.n, "Count starts up to n");
  count->add_option("-k", ca.k, "Block length");
  count->add_option("--mode", ca.mode, "plain, strided, strong or ratio")
      ->check(CLI::IsMember({"plain", "strided", "strong", "ratio"}))
      ->capture_default_str();
  count->add_option("--phase", ca.phase, "Stride phase p for strided mode");
  count->add_option("--alphabet", ca.alphabet, "Alphabet size for strong mode");
  count->callback([&] { action = [&] { run_count(g, ca, out); }; });

  ConstructArgs ka;
  auto* construct = app.add_subcommand("construct", "Stream digits of a word construction");
  construct->add_option("--spec", ka.spec, "standard (alias paper) or scaled:<l,b,w/...>")->required();
  construct->add_option("--start", ka.start, "First position (decimal, any size)")->capture_default_str();
  construct->add_option("--count", ka.count, "Number of digits")->capture_default_str();
  construct->callback([&] { action = [&] { run_construct(g, ka, out); }; });

  ClassifyArgs la;
  auto* classify = app.add_subcommand("classify", "k-divergence of a basic sequence");
  classify->add_option("--seq", la.seq, "Basic sequence descriptor")->required();
  classify->add_option("-k", la.k, "Block length")->capture_default_str();
  classify->add_option("--horizon", la.horizon, "Partial sum horizon")->capture_default_str();
  classify->add_flag("--strong", la.strong, "Also classify every stride phase");
  classify->add_option("--threshold", la.threshold, "Numeric tail-increment threshold")->capture_default_str();
  classify->callback([&] { action = [&] { run_classify(g, la, out); }; });

  ExperimentArgs xa;
  auto* experiment = app.add_subcommand("experiment", "Seeded Monte Carlo experiments");
  experiment->add_option("kind", xa.kind, "lil or omission")->required()->check(CLI::IsMember({"lil", "omission"}));
  experiment->add_option("--seq", xa.seq, "Basic sequence descriptor")->required();
  experiment->add_option("-n", xa.n, "Prefix length")->required();
  experiment->add_option("--trials", xa.trials, "Number of trials")->capture_default_str();
  experiment->add_option("--block", xa.block, "Block (lil)")->capture_default_str();
  experiment->add_option("--c", xa.c, "Envelope constant (lil)")->capture_default_str();
  experiment->add_option("-k", xa.k, "Length of the zero block (omission)")->capture_default_str();
  experiment->add_flag("--inject-all-zero", xa.inject_all_zero, "Adversarial all-zero digits (lil)");
  experiment->callback([&] { action = [&] { run_experiment(g, xa, out); }; });

  CbwArgs wa;
  auto* cbw = app.add_subcommand("cbw", "Build or verify the block word C_{b,w}");
  cbw->add_option("action", wa.action, "build, verify or digit")
      ->required()
      ->check(CLI::IsMember({"build", "verify", "digit"}));
  cbw->add_option("-b", wa.base, "Base")->capture_default_str();
  cbw->add_option("-w", wa.width, "Block length")->capture_default_str();
  cbw->add_option("--file", wa.file, "Digit file to verify (default: analytic counts)");
  cbw->add_option("--index", wa.index, "1-based position for digit")->capture_default_str();
  cbw->callback([&] { action = [&] { run_cbw(g, wa, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::io ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace cantor::cli

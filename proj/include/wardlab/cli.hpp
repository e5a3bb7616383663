#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wardlab/catalogue.hpp"
#include "wardlab/compactness.hpp"
#include "wardlab/expression.hpp"
#include "wardlab/report.hpp"

namespace wardlab::cli {

namespace detail {

inline std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    out.push_back(std::stod(tok, &used));
    if (used != tok.size()) throw ContractError("bad number '" + tok + "'");
  }
  return out;
}

struct LoadedSequence {
  Sequence seq;
  std::optional<std::uint64_t> file_length;  // set for CSV-backed sequences
};

inline LoadedSequence load_csv_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open sequence file '" + path + "'");
  auto values = std::make_shared<std::vector<double>>();
  std::string line;
  bool first = true;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    try {
      std::size_t used = 0;
      const double v = std::stod(trimmed, &used);
      if (used != trimmed.size()) throw std::invalid_argument(trimmed);
      values->push_back(v);
    } catch (const std::exception&) {
      if (first) {
        first = false;
        continue;  // optional header row
      }
      throw ContractError("file '" + path + "': unparsable value at line " +
                          std::to_string(lineno));
    }
    first = false;
  }
  if (values->empty())
    throw ContractError("file '" + path + "' holds no values");
  LoadedSequence ls;
  ls.file_length = values->size();
  ls.seq = Sequence::pointwise("@" + path, [values, path](std::uint64_t n) {
    if (n > values->size())
      throw ContractError("file-backed sequence '" + path +
                          "' has only " + std::to_string(values->size()) +
                          " values");
    return (*values)[n - 1];
  });
  return ls;
}

inline LoadedSequence load_sequence(const std::string& spec,
                                    const std::vector<std::string>& params) {
  if (!spec.empty() && spec.front() == '@')
    return load_csv_sequence(spec.substr(1));

  const auto& names = Catalogue::instance().names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) {
    std::map<std::string, double> kv;
    for (const auto& p : params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos)
        throw ContractError("--param expects key=value, got '" + p + "'");
      kv[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    }
    return {Catalogue::instance().get(spec, kv), std::nullopt};
  }

  Expression e = Expression::parse(spec);
  return {Sequence::pointwise(spec,
                              [e](std::uint64_t n) {
                                return e(static_cast<double>(n));
                              }),
          std::nullopt};
}

inline FunctionUnderTest load_function(const std::string& expr,
                                       const std::string& domain_literal) {
  FunctionUnderTest f;
  f.name = expr;
  f.eval = Expression::parse(expr).as_function();
  f.domain = domain_literal.empty() ? RealSet::reals()
                                    : parse_real_set(domain_literal);
  return f;
}

inline LacunaryScheme load_scheme(const std::string& spec,
                                  std::uint64_t horizon) {
  if (spec.empty()) return fibonacci_scheme_covering(horizon);
  if (spec.rfind("fib:", 0) == 0) {
    const auto r = std::stoull(spec.substr(4));
    return fibonacci_scheme(r);
  }
  if (spec.front() == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw ContractError("cannot open scheme file '" + spec + "'");
    std::vector<std::uint64_t> boundaries;
    std::uint64_t b;
    while (in >> b) boundaries.push_back(b);
    return LacunaryScheme(std::move(boundaries));
  }
  throw ContractError("scheme spec must be fib:R or @file");
}

// exit-code bookkeeping: 0 decisive and consistent, 2 something inconclusive
struct Outcome {
  bool any_inconclusive = false;
  bool any_inconsistent = false;

  void see(Status s) {
    if (s == Status::inconclusive) any_inconclusive = true;
  }
  void scan(const nlohmann::json& j) {
    if (j.is_object()) {
      if (j.contains("status") && j["status"] == "inconclusive")
        any_inconclusive = true;
      if (j.contains("consistent") && j["consistent"] == false)
        any_inconsistent = true;
      for (const auto& [k, v] : j.items()) scan(v);
    } else if (j.is_array()) {
      for (const auto& v : j) scan(v);
    }
  }
  int exit_code() const {
    return (any_inconclusive || any_inconsistent) ? 2 : 0;
  }
};

inline void emit(const Report& report, const std::string& format,
                 const std::string& out_dir, std::ostream& out) {
  std::string body;
  std::string filename;
  if (format == "csv") {
    body = render_csv(report);
    filename = "report.csv";
  } else if (format == "text") {
    body = render_text(report);
    filename = "report.txt";
  } else {
    body = report.to_json().dump(2) + "\n";
    filename = "report.json";
  }
  if (out_dir.empty()) {
    out << body;
  } else {
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / filename;
    std::ofstream f(path);
    if (!f) throw ContractError("cannot write " + path.string());
    f << body;
    out << path.string() << "\n";
  }
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"wardlab: density-based convergence verdicts, sequence-class "
               "classification, compactness probes, and continuity checks"};
  app.require_subcommand(1);

  AnalysisConfig config;
  if (const char* env = std::getenv("WARDLAB_DEFAULT_HORIZON")) {
    try {
      config.horizon = std::stoull(env);
    } catch (const std::exception&) {
      err << "ignoring bad WARDLAB_DEFAULT_HORIZON '" << env << "'\n";
    }
  }

  std::string eps_csv, tol_csv, lambda_csv, format = "json", out_dir;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--horizon", config.horizon, "analysis horizon N");
    sub->add_option("--eps", eps_csv, "epsilon grid, comma-separated descending");
    sub->add_option("--tol", tol_csv, "passTolerance,failThreshold");
    sub->add_option("--lambda", lambda_csv, "lambda grid for slowly oscillating");
    sub->add_option("--format", format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", out_dir, "directory for the report file");
  };

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "classify a sequence");
  std::string seq_spec, classes_csv;
  std::vector<std::string> seq_params;
  classify_cmd->add_option("--seq", seq_spec,
                           "catalogue name, @file.csv, or expression in n")
      ->required();
  classify_cmd->add_option("--classes", classes_csv,
                           "comma-separated class labels (default: all)");
  classify_cmd->add_option("--param", seq_params,
                           "catalogue parameter key=value");
  add_common(classify_cmd);

  // limit
  auto* limit_cmd = app.add_subcommand("limit", "convergence method verdict");
  std::string method = "ordinary", theta_spec;
  double ell_value = 0.0;
  bool ell_given = false;
  limit_cmd->add_option("--seq", seq_spec, "sequence source")->required();
  limit_cmd->add_option("--method", method, "ordinary|stat|stheta|ntheta")
      ->check(CLI::IsMember({"ordinary", "stat", "stheta", "ntheta"}));
  limit_cmd->add_option("--theta", theta_spec, "lacunary scheme: fib:R or @file");
  limit_cmd->add_option("--ell", ell_value, "candidate limit")
      ->each([&](const std::string&) { ell_given = true; });
  limit_cmd->add_option("--param", seq_params, "catalogue parameter key=value");
  add_common(limit_cmd);

  // density
  auto* density_cmd = app.add_subcommand("density", "natural density of an index set");
  std::string pred_spec;
  density_cmd->add_option("--pred", pred_spec, "squares|evens|@file of indices")
      ->required();
  add_common(density_cmd);

  // lattice
  auto* lattice_cmd = app.add_subcommand("lattice", "preservation property lattice");
  std::string fn_expr, domain_literal, corpus_spec = "default";
  lattice_cmd->add_option("--fn", fn_expr, "function expression in x")->required();
  lattice_cmd->add_option("--domain", domain_literal, "domain set literal");
  lattice_cmd->add_option("--corpus", corpus_spec,
                          "default or comma-separated catalogue names");
  add_common(lattice_cmd);

  // compact
  auto* compact_cmd = app.add_subcommand("compact", "set compactness probes");
  std::string set_literal;
  std::uint64_t witness_n = 0;
  compact_cmd->add_option("--set", set_literal, "set literal")->required();
  compact_cmd->add_option("--witness", witness_n, "witness prefix length");
  add_common(compact_cmd);

  // ucwitness
  auto* uc_cmd = app.add_subcommand("ucwitness",
                                    "uniform-continuity counterexample search");
  double eps0 = 1.0;
  std::uint64_t nmax = 100;
  uc_cmd->add_option("--fn", fn_expr, "function expression in x")->required();
  uc_cmd->add_option("--domain", domain_literal, "domain set literal")->required();
  uc_cmd->add_option("--eps0", eps0, "spread threshold")->required();
  uc_cmd->add_option("--nmax", nmax, "largest gap scale n")->required();
  add_common(uc_cmd);

  // catalogue
  auto* catalogue_cmd = app.add_subcommand("catalogue", "list named sequences");
  add_common(catalogue_cmd);

  try {
    std::vector<const char*> argv;
    argv.push_back("wardlab");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    const int code = app.exit(e, os, os);
    (code == 0 ? out : err) << os.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (!eps_csv.empty()) config.epsilon_grid = detail::parse_double_list(eps_csv);
    if (!lambda_csv.empty()) config.lambda_grid = detail::parse_double_list(lambda_csv);
    if (!tol_csv.empty()) {
      const auto tol = detail::parse_double_list(tol_csv);
      if (tol.size() != 2)
        throw ConfigError("--tol expects passTolerance,failThreshold");
      config.pass_tolerance = tol[0];
      config.fail_threshold = tol[1];
    }

    Report report;
    detail::Outcome outcome;

    if (classify_cmd->parsed()) {
      report.command = "classify";
      auto loaded = detail::load_sequence(seq_spec, seq_params);
      std::string clipped_note;
      if (loaded.file_length && *loaded.file_length < config.horizon + 1) {
        // file-backed sequences are finite; differences need one spare value
        config.horizon = *loaded.file_length - (*loaded.file_length > 1 ? 1 : 0);
        clipped_note = "horizon clipped to " + std::to_string(config.horizon) +
                       " (file holds " + std::to_string(*loaded.file_length) +
                       " values)";
        err << "note: " << clipped_note << "\n";
      }
      std::vector<SequenceClass> labels;
      if (classes_csv.empty()) {
        labels = all_sequence_classes();
      } else {
        std::stringstream ss(classes_csv);
        std::string tok;
        while (std::getline(ss, tok, ','))
          if (!tok.empty()) labels.push_back(parse_sequence_class(tok));
      }
      const ClassReport cr = classify(loaded.seq, labels, config);
      for (const auto& [cls, verdict] : cr.entries) outcome.see(verdict.status);
      report.config = config;
      report.results = to_json(cr);
      if (!clipped_note.empty()) report.results["note"] = clipped_note;
    } else if (limit_cmd->parsed()) {
      report.command = "limit";
      auto loaded = detail::load_sequence(seq_spec, seq_params);
      if (loaded.file_length && *loaded.file_length < config.horizon) {
        config.horizon = *loaded.file_length;
        err << "note: horizon clipped to file length (" << config.horizon << ")\n";
      }
      MethodVerdict mv;
      if (method == "ordinary") {
        mv = ordinary_limit(loaded.seq, config);
      } else if (method == "stat") {
        mv = ell_given ? statistical_limit_verdict(loaded.seq, ell_value, config)
                       : statistical_limit_estimate(loaded.seq, config);
      } else {
        const LacunaryScheme scheme = detail::load_scheme(theta_spec, config.horizon);
        double ell = ell_value;
        if (!ell_given) {
          ell = *ordinary_limit(loaded.seq, config).limit_estimate;
        }
        mv = (method == "stheta")
                 ? lacunary_statistical_verdict(loaded.seq, scheme, ell, config)
                 : ntheta_verdict(loaded.seq, scheme, ell, config);
      }
      outcome.see(mv.verdict.status);
      report.config = config;
      report.results = to_json(mv);
    } else if (density_cmd->parsed()) {
      report.command = "density";
      IndexPredicate pred;
      if (pred_spec == "squares") {
        pred = {[](std::uint64_t k) { return wardlab::detail::is_perfect_square(k); },
                "perfect squares"};
      } else if (pred_spec == "evens") {
        pred = {[](std::uint64_t k) { return k % 2 == 0; }, "even indices"};
      } else if (!pred_spec.empty() && pred_spec.front() == '@') {
        std::ifstream in(pred_spec.substr(1));
        if (!in)
          throw ContractError("cannot open predicate file '" + pred_spec + "'");
        auto members = std::make_shared<std::vector<std::uint64_t>>();
        std::uint64_t v;
        while (in >> v) members->push_back(v);
        std::sort(members->begin(), members->end());
        pred = {[members](std::uint64_t k) {
                  return std::binary_search(members->begin(), members->end(), k);
                },
                "indices from " + pred_spec};
      } else {
        throw ContractError("--pred must be squares, evens, or @file");
      }
      const Verdict v = density_limit_verdict(pred, config);
      outcome.see(v.status);
      report.config = config;
      report.results = to_json(v);
      report.results["predicate"] = pred.description;
      report.results["density"] =
          to_json(counting_density(pred, config.horizon));
    } else if (lattice_cmd->parsed()) {
      report.command = "lattice";
      const FunctionUnderTest f = detail::load_function(fn_expr, domain_literal);
      std::vector<Sequence> corpus;
      if (corpus_spec == "default") {
        corpus = default_corpus();
      } else {
        std::stringstream ss(corpus_spec);
        std::string tok;
        while (std::getline(ss, tok, ','))
          if (!tok.empty()) corpus.push_back(Catalogue::instance().get(tok));
      }
      const LatticeReport lr = implication_lattice_report(f, corpus, config);
      report.config = config;
      report.results = to_json(lr);
      outcome.scan(report.results);
    } else if (compact_cmd->parsed()) {
      report.command = "compact";
      const RealSet set = parse_real_set(set_literal);
      nlohmann::json j{{"set", set.to_string()},
                       {"boundedBelow", bounded_below(set)},
                       {"boundedAbove", bounded_above(set)},
                       {"statUpwardCompact", stat_upward_compact(set)},
                       {"statDownwardCompact", stat_downward_compact(set)},
                       {"bounded", bounded(set)}};
      if (witness_n > 0) {
        if (!bounded_below(set))
          j["descendingWitness"] = descending_witness(set, witness_n).values;
        if (!bounded_above(set))
          j["ascendingWitness"] = ascending_witness(set, witness_n).values;
        if (bounded(set))
          j["witnessNote"] = "set is bounded; no witness on either side";
      }
      report.config = config;
      report.results = std::move(j);
    } else if (uc_cmd->parsed()) {
      report.command = "ucwitness";
      const FunctionUnderTest f = detail::load_function(fn_expr, domain_literal);
      const UcSearchResult r =
          uniform_continuity_witness_search(f, nmax, eps0, config);
      nlohmann::json pairs = nlohmann::json::array();
      for (const auto& p : r.per_n) {
        if (p) {
          pairs.push_back({{"n", p->n},
                           {"x", p->x},
                           {"y", p->y},
                           {"fx", p->fx},
                           {"fy", p->fy}});
        }
      }
      report.config = config;
      report.results = nlohmann::json{{"function", f.name},
                                      {"eps0", eps0},
                                      {"nMax", nmax},
                                      {"complete", r.complete()},
                                      {"noneFound", r.none_found()},
                                      {"pairs", std::move(pairs)}};
    } else if (catalogue_cmd->parsed()) {
      report.command = "catalogue";
      nlohmann::json members = nlohmann::json::array();
      for (const auto& entry : Catalogue::instance().entries()) {
        nlohmann::json claims = nlohmann::json::array();
        for (const auto& c : entry.claims)
          claims.push_back({{"class", to_string(c.cls)},
                            {"expected", to_string(c.expected)}});
        members.push_back({{"name", entry.name},
                           {"summary", entry.summary},
                           {"claims", std::move(claims)}});
      }
      report.config = config;
      report.results = std::move(members);
    }

    detail::emit(report, format, out_dir, out);
    return outcome.exit_code();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wardlab::cli

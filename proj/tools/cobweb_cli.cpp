// cobweb: command-line front end for the cobweb poset library.
//
// Exit codes: 0 success, 1 a verification failed, 2 usage, input or size
// limit error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cobweb/cobweb.hpp"

namespace {

using namespace cobweb;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::optional<std::size_t> max_elements;
  Level max_level = 0;
  std::string levels_format;
  std::string hasse_format;
  std::string matrix_format;
  std::string kind;
  std::uint64_t power = 1;
  std::string strategy = "explicit";
  std::string from;
  std::string to;
  std::optional<Label> from_label;
  std::optional<Label> to_label;
  std::string input;
  std::optional<Level> input_max_level;
  std::uint64_t reps = 3;
};

// Flag, then COBWEB_MAX_ELEMENTS, then the built-in default.
Limits resolve_limits(const Options& opt) {
  Limits limits;
  if (opt.max_elements) {
    limits.max_elements = *opt.max_elements;
  } else if (const char* env = std::getenv("COBWEB_MAX_ELEMENTS"); env != nullptr && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size() || v == 0) throw std::invalid_argument(env);
      limits.max_elements = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw domain_error("COBWEB_MAX_ELEMENTS must be a positive integer, got '" +
                         std::string(env) + "'");
    }
  }
  return limits;
}

Vertex parse_vertex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw domain_error("vertex '" + text + "' is not of the form row,level");
  auto number = [&](const std::string& part) -> std::uint64_t {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw domain_error("vertex '" + text + "' is not of the form row,level");
    try {
      return std::stoull(part);
    } catch (const std::out_of_range&) {
      throw domain_error("vertex '" + text + "' is out of range");
    }
  };
  const std::uint64_t row = number(text.substr(0, comma));
  const std::uint64_t level = number(text.substr(comma + 1));
  if (level == 0 || level > kMaxLevel) throw domain_error("vertex '" + text + "' has an invalid level");
  const Vertex v{row, static_cast<Level>(level)};
  validate(v);
  return v;
}

void print_json(const nlohmann::ordered_json& doc) { std::cout << doc.dump(2) << '\n'; }

int cmd_levels(const Options& opt) {
  const Limits limits = resolve_limits(opt);
  const TruncatedPoset poset(opt.max_level, limits);
  if (opt.levels_format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Level s = 1; s <= poset.max_level(); ++s)
      rows.push_back({{"level", s},
                      {"size", level_size(s)},
                      {"first_label", first_label(s)},
                      {"last_label", last_label(s)}});
    print_json({{"max_level", poset.max_level()}, {"levels", rows}});
    return kExitOk;
  }
  std::cout << "level,size,first_label,last_label\n";
  for (Level s = 1; s <= poset.max_level(); ++s)
    std::cout << s << ',' << level_size(s) << ',' << first_label(s) << ',' << last_label(s) << '\n';
  return kExitOk;
}

int cmd_hasse(const Options& opt) {
  const Limits limits = resolve_limits(opt);
  if (opt.hasse_format == "csv")
    std::cout << export_edges_csv(opt.max_level, limits);
  else
    std::cout << export_dot(opt.max_level, limits);
  return kExitOk;
}

int cmd_matrix(const Options& opt) {
  const Limits limits = resolve_limits(opt);
  const TruncatedPoset poset(opt.max_level, limits);
  IntegerIncidence m(poset);
  if (opt.kind == "zeta")
    m = zeta_coord(poset);
  else if (opt.kind == "mobius")
    m = mobius_matrix(poset, opt.strategy);
  else
    m = eta_power(poset, opt.power);

  if (opt.matrix_format == "json") {
    nlohmann::ordered_json doc = {{"kind", opt.kind}};
    if (opt.kind == "eta") doc["power"] = opt.power;
    doc["max_level"] = poset.max_level();
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Label a = 1; a <= poset.size(); ++a) {
      labels.push_back(a);
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (Label b = 1; b <= poset.size(); ++b) row.push_back(to_string(m.at(a, b)));
      rows.push_back(std::move(row));
    }
    doc["labels"] = std::move(labels);
    doc["rows"] = std::move(rows);
    print_json(doc);
    return kExitOk;
  }
  std::cout << to_csv(m);
  return kExitOk;
}

int cmd_mu(const Options& opt) {
  const Limits limits = resolve_limits(opt);
  Vertex x;
  Vertex y;
  if (opt.from_label) {
    x = coords_of(*opt.from_label);
    y = coords_of(*opt.to_label);
  } else {
    x = parse_vertex(opt.from);
    y = parse_vertex(opt.to);
  }
  check_guard(std::max(x.level, y.level), limits);
  const Label a = label_of(x);
  const Label b = label_of(y);
  const Integer value = mobius_coords(x, y);
  if (value != mobius_levels(a, b)) {
    std::cerr << "error: coordinate and level formulas disagree\n";
    return kExitFailed;
  }
  std::cout << "mu(" << to_string(x) << ", " << to_string(y) << ") = " << to_string(value) << '\n'
            << "labels: " << a << " -> " << b << '\n'
            << "case: " << to_string(mobius_case(a, b)) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& opt) {
  const Limits limits = resolve_limits(opt);
  const VerificationReport report = run_verification(opt.max_level, limits);
  std::cout << to_text(report);
  if (const CheckResult* failure = report.first_failure()) {
    std::cerr << "first failure: " << failure->name;
    if (!failure->detail.empty()) std::cerr << ": " << failure->detail;
    std::cerr << '\n';
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_invert(const Options& opt) {
  const Limits limits = resolve_limits(opt);
  std::ifstream in(opt.input);
  if (!in) throw domain_error("cannot open '" + opt.input + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw domain_error("malformed JSON in '" + opt.input + "': " + e.what());
  }
  const PosetFunction f = poset_function_from_json(doc, opt.input_max_level, limits);
  const PosetFunction g = accumulate(f);
  const PosetFunction f_back = reconstruct(g);
  const bool roundtrip = f_back == f;
  print_json({{"max_level", f.poset().max_level()},
              {"g", to_json(g)},
              {"f_reconstructed", to_json(f_back)},
              {"roundtrip", roundtrip}});
  return roundtrip ? kExitOk : kExitFailed;
}

int cmd_bench(const Options& opt) {
  const Limits limits = resolve_limits(opt);
  const BenchReport report = bench_strategies(opt.max_level, opt.reps, limits);
  print_json(to_json(report));
  return report.checksums_agree ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fibonacci cobweb poset: incidence algebra, Mobius function and inversion"};
  app.require_subcommand(1);
  Options opt;

  app.add_option("--max-elements", opt.max_elements,
                 "Element guard (overrides COBWEB_MAX_ELEMENTS; default 20000)")
      ->check(CLI::PositiveNumber);

  auto add_level = [&](CLI::App* cmd) {
    cmd->add_option("-n,--max-level", opt.max_level, "Highest level of the truncation")
        ->required()
        ->check(CLI::Range(1u, static_cast<unsigned>(kMaxLevel)));
  };

  auto* levels = app.add_subcommand("levels", "Level sizes and label ranges");
  add_level(levels);
  levels->add_option("--format", opt.levels_format, "csv or json")
      ->default_val("csv")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* hasse = app.add_subcommand("hasse", "Hasse diagram as DOT or CSV edge list");
  add_level(hasse);
  hasse->add_option("--format", opt.hasse_format, "dot or csv")
      ->default_val("dot")
      ->check(CLI::IsMember({"dot", "csv"}));

  auto* matrix = app.add_subcommand("matrix", "zeta, mobius or eta^k matrix in label order");
  add_level(matrix);
  matrix->add_option("--kind", opt.kind, "zeta, mobius or eta")
      ->required()
      ->check(CLI::IsMember({"zeta", "mobius", "eta"}));
  matrix->add_option("--power", opt.power, "Power of eta (kind=eta)")->check(CLI::NonNegativeNumber);
  matrix->add_option("--strategy", opt.strategy, "Mobius strategy (kind=mobius)")
      ->check(CLI::IsMember({"explicit", "recurrence", "matrix_inverse"}));
  matrix->add_option("--format", opt.matrix_format, "csv or json")
      ->default_val("csv")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* mu = app.add_subcommand("mu", "Mobius function of a pair of vertices");
  auto* from = mu->add_option("--from", opt.from, "Lower vertex as \"row,level\"");
  auto* to = mu->add_option("--to", opt.to, "Upper vertex as \"row,level\"");
  auto* from_label = mu->add_option("--from-label", opt.from_label, "Lower vertex by label")
                         ->check(CLI::PositiveNumber);
  auto* to_label =
      mu->add_option("--to-label", opt.to_label, "Upper vertex by label")->check(CLI::PositiveNumber);
  from->needs(to);
  to->needs(from);
  from_label->needs(to_label);
  to_label->needs(from_label);
  from->excludes(from_label)->excludes(to_label);
  to->excludes(from_label)->excludes(to_label);
  mu->callback([&] {
    if (!*from && !*from_label) throw CLI::RequiredError("--from/--to or --from-label/--to-label");
  });

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  add_level(verify);

  auto* invert = app.add_subcommand("invert", "Accumulate a poset function and invert it back");
  invert->add_option("-i,--input", opt.input, "PosetFunction JSON file")->required();
  invert->add_option("-n,--max-level", opt.input_max_level, "Override the file's max_level")
      ->check(CLI::Range(1u, static_cast<unsigned>(kMaxLevel)));

  auto* bench = app.add_subcommand("bench", "Compare Mobius strategies");
  add_level(bench);
  bench->add_option("--reps", opt.reps, "Timed repetitions per strategy")
      ->default_val(3)
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*levels) return cmd_levels(opt);
    if (*hasse) return cmd_hasse(opt);
    if (*matrix) return cmd_matrix(opt);
    if (*mu) return cmd_mu(opt);
    if (*verify) return cmd_verify(opt);
    if (*invert) return cmd_invert(opt);
    if (*bench) return cmd_bench(opt);
  } catch (const cobweb::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

#include "coxaut/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "coxaut/automaton.hpp"
#include "coxaut/conjectures.hpp"
#include "coxaut/render.hpp"

namespace coxaut {

std::vector<unsigned long long> brute_force_reduced_counts(const CoxeterSystem& sys, int k) {
  std::vector<unsigned long long> counts(k + 1, 0);
  std::function<void(const Element&)> walk = [&](const Element& w) {
    ++counts[w.length()];
    if (static_cast<int>(w.length()) == k) return;
    for (int s = 0; s < sys.rank(); ++s) {
      Element next = mult_right(sys, w, s);
      if (next.length() > w.length()) walk(next);
    }
  };
  walk(Element{});
  return counts;
}

namespace {

struct Config {
  std::string group;
  int n = 0;
  int cap = 0;
  std::size_t budget = 0;  // 0: module default
  std::string elements;
  bool has_elements = false;
  std::string kind = "canonical";
  bool minimize = false;
  std::string dot_path;
  bool stats = false;
  int max_len = 8;
  bool oracle = false;
  std::string conjecture;
  std::string groups;
  std::string svg_path;
  bool json = false;
};

// A group argument is a file path if such a file exists, otherwise a preset
// name or an inline matrix block.
CoxeterSystem load_group(const std::string& spec) {
  std::error_code ec;
  if (!spec.empty() && std::filesystem::is_regular_file(spec, ec)) {
    std::ifstream in(spec);
    std::stringstream buf;
    buf << in.rdbuf();
    CoxeterSystem sys = parse_coxeter_system(buf.str());
    return CoxeterSystem(sys.matrix(), std::filesystem::path(spec).stem().string());
  }
  return parse_coxeter_system(spec);
}

ClosureOptions closure_options(const Config& cfg) {
  ClosureOptions o;
  if (cfg.budget > 0) o.budget = cfg.budget;
  o.cap = cfg.cap;
  if (o.cap <= 0) {
    if (const char* env = std::getenv("COXAUT_JOIN_CAP")) {
      try {
        o.cap = std::stoi(env);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::ParseError, "COXAUT_JOIN_CAP is not an integer");
      }
      if (o.cap <= 0) throw Error(ErrorKind::ParseError, "COXAUT_JOIN_CAP must be positive");
    }
  }
  return o;
}

std::size_t low_budget(const Config& cfg) { return cfg.budget > 0 ? cfg.budget : 200000; }

std::vector<Element> parse_element_list(const CoxeterSystem& sys, const std::string& text) {
  std::vector<Element> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Word w = parse_word(item, sys.rank());
    if (!is_reduced_word(sys, w)) throw Error(ErrorKind::ParseError, "word '" + item + "' is not reduced");
    out.push_back(element_from_word(sys, w));
  }
  return out;
}

std::string coords_exact(const RootVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += "; ";
    out += v[i].to_string();
  }
  return out + ")";
}

std::string coords_approx(const RootVector& v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << "; ";
    out << v[i].to_double();
  }
  out << ")";
  return out.str();
}

std::string support_text(GeneratorSet g) {
  std::string out = "{";
  bool first = true;
  for (int s : g.members()) {
    if (!first) out += " ";
    out += std::to_string(s + 1);
    first = false;
  }
  return out + "}";
}

int cmd_roots(const Config& cfg, std::ostream& out) {
  const CoxeterSystem sys = load_group(cfg.group);
  const SmallRootTable table = build_small_roots(sys, cfg.n);
  out << "# group " << sys.name() << ", n = " << cfg.n << ", " << table.size() << " small roots";
  if (!sys.field().is_rational()) out << ", c = 2cos(pi/" << sys.field().conductor() << ")";
  out << "\n";
  out << "node\tdepth\tdp_inf\tsupport\tspherical\ttheta\tcoords\tapprox\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    const SmallRootNode& node = table.node(static_cast<int>(i));
    std::string theta;
    for (int s = 0; s < sys.rank(); ++s) {
      if (s) theta += ",";
      const int t = node.theta[s];
      theta += t == kExit ? "x" : t == kNegative ? "-" : std::to_string(t);
    }
    out << i << "\t" << node.depth << "\t" << node.dp_inf << "\t" << support_text(node.support) << "\t"
        << (node.spherical ? "yes" : "no") << "\t" << theta << "\t" << coords_exact(sys.root(node.root)) << "\t"
        << coords_approx(sys.root(node.root)) << "\n";
  }
  return kExitOk;
}

void print_shadow(const Shadow& B, std::ostream& out) {
  for (const auto& w : B.elements()) out << word_to_string(w.word()) << "\n";
}

int cmd_shadow(const Config& cfg, std::ostream& out, std::ostream& err) {
  const CoxeterSystem sys = load_group(cfg.group);
  const ClosureOptions opts = closure_options(cfg);
  if (cfg.has_elements) {
    const Shadow B(parse_element_list(sys, cfg.elements), ShadowOrigin::Explicit);
    const ShadowVerdict v = verify_shadow(sys, B, opts.cap);
    out << "verdict " << to_string(v.verdict) << "\n";
    if (!v.reason.empty()) out << "reason " << v.reason << "\n";
    for (const auto& w : v.witness) out << "witness " << word_to_string(w.word()) << "\n";
    if (v.verdict == Verdict::IndeterminateAtCap) {
      err << "join search indeterminate at cap " << v.cap << "\n";
      return kExitIndeterminate;
    }
    return kExitOk;
  }
  const ClosureResult c = smallest_shadow(sys, opts);
  out << "# smallest Garside shadow of " << sys.name() << ": " << c.shadow.size() << " elements, cap " << c.cap_used
      << ", cap_stable " << (c.cap_stable ? "true" : "false") << "\n";
  print_shadow(c.shadow, out);
  if (!c.cap_stable) {
    err << "closure not stable at cap " << c.cap_used << "\n";
    return kExitIndeterminate;
  }
  return kExitOk;
}

int cmd_low(const Config& cfg, std::ostream& out) {
  const CoxeterSystem sys = load_group(cfg.group);
  const SmallRootTable table = build_small_roots(sys, cfg.n);
  const Shadow low = low_elements(table, low_budget(cfg));
  out << "# " << cfg.n << "-low elements of " << sys.name() << ": " << low.size() << "\n";
  print_shadow(low, out);
  return kExitOk;
}

struct Built {
  Automaton automaton;
  bool cap_stable = true;
  int cap = 0;
};

Built build_automaton(const CoxeterSystem& sys, const Config& cfg) {
  Built b;
  if (cfg.kind == "canonical") {
    b.automaton = build_canonical_automaton(build_small_roots(sys, cfg.n));
  } else if (cfg.kind == "shadow:smallest") {
    const ClosureResult c = smallest_shadow(sys, closure_options(cfg));
    b.cap_stable = c.cap_stable;
    b.cap = c.cap_used;
    b.automaton = build_shadow_automaton(sys, c.shadow);
  } else if (cfg.kind == "shadow:low") {
    const Shadow low = low_elements(build_small_roots(sys, cfg.n), low_budget(cfg));
    b.automaton = build_shadow_automaton(sys, low);
  } else {
    throw Error(ErrorKind::ParseError, "unknown automaton kind '" + cfg.kind + "'");
  }
  if (cfg.minimize) b.automaton = minimize(b.automaton);
  return b;
}

int cmd_automaton(const Config& cfg, std::ostream& out, std::ostream& err) {
  const CoxeterSystem sys = load_group(cfg.group);
  const Built b = build_automaton(sys, cfg);
  if (!cfg.dot_path.empty()) {
    std::ofstream dot(cfg.dot_path);
    if (!dot) throw Error(ErrorKind::ParseError, "cannot write " + cfg.dot_path);
    dot << to_dot(b.automaton, sys.name());
  }
  if (cfg.stats || cfg.dot_path.empty()) {
    out << "states " << b.automaton.size() << "\n";
    out << "transitions " << b.automaton.transition_count() << "\n";
  }
  if (!b.cap_stable) {
    err << "smallest shadow not stable at cap " << b.cap << "\n";
    return kExitIndeterminate;
  }
  return kExitOk;
}

int cmd_count(const Config& cfg, std::ostream& out, std::ostream& err) {
  const CoxeterSystem sys = load_group(cfg.group);
  const Built b = build_automaton(sys, cfg);
  const auto counts = count_by_length(b.automaton, cfg.max_len);
  std::vector<unsigned long long> oracle;
  if (cfg.oracle) oracle = brute_force_reduced_counts(sys, cfg.max_len);
  out << (cfg.oracle ? "length,count,oracle\n" : "length,count\n");
  bool mismatch = false;
  for (int k = 0; k <= cfg.max_len; ++k) {
    out << k << "," << counts[k].get_str();
    if (cfg.oracle) {
      out << "," << oracle[k];
      if (counts[k] != mpz_class(std::to_string(oracle[k]))) mismatch = true;
    }
    out << "\n";
  }
  if (mismatch) {
    err << "automaton count differs from the reduced-word oracle\n";
    return kExitInternal;
  }
  if (!b.cap_stable) {
    err << "smallest shadow not stable at cap " << b.cap << "\n";
    return kExitIndeterminate;
  }
  return kExitOk;
}

int cmd_check(const Config& cfg, std::ostream& out, std::ostream& err) {
  const CoxeterSystem sys = load_group(cfg.group);
  const ConjectureReport r = check_conjecture(sys, parse_conjecture(cfg.conjecture), cfg.n, closure_options(cfg));
  out << to_json_text(r) << "\n";
  if (r.outcome == Outcome::Indeterminate) {
    err << "indeterminate at cap " << r.cap << ": " << r.reason << "\n";
    return kExitIndeterminate;
  }
  return kExitOk;
}

int cmd_table(const Config& cfg, std::ostream& out) {
  std::vector<StatsRow> rows;
  std::stringstream ss(cfg.groups);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const CoxeterSystem sys = load_group(item);
    rows.push_back(stats_row(sys, closure_options(cfg)));
  }
  if (cfg.json) {
    out << to_json_text(rows) << "\n";
  } else {
    out << stats_csv_header() << "\n";
    for (const auto& r : rows) out << to_csv(r) << "\n";
  }
  bool stable = std::all_of(rows.begin(), rows.end(), [](const StatsRow& r) { return r.cap_stable; });
  return stable ? kExitOk : kExitIndeterminate;
}

int cmd_render(const Config& cfg, std::ostream& out) {
  const CoxeterSystem sys = load_group(cfg.group);
  const SmallRootTable table = build_small_roots(sys, cfg.n);
  const std::string svg = render_rank3_svg(table);
  if (cfg.svg_path.empty() || cfg.svg_path == "-") {
    out << svg;
  } else {
    std::ofstream file(cfg.svg_path);
    if (!file) throw Error(ErrorKind::ParseError, "cannot write " + cfg.svg_path);
    file << svg;
    out << "wrote " << cfg.svg_path << "\n";
  }
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BudgetExceeded:
      return kExitIndeterminate;
    case ErrorKind::Internal:
    case ErrorKind::ShadowViolation:
    case ErrorKind::DivisionByZero:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Automata for reduced words in Coxeter groups", "coxaut"};
  app.require_subcommand(1);

  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--group,-g", cfg.group, "preset name, matrix file, or inline matrix")->required();
  };
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", cfg.n, "small-root level")->check(CLI::NonNegativeNumber); };
  auto add_limits = [&](CLI::App* sub) {
    sub->add_option("--cap", cfg.cap, "join search length cap (default 2*maxlen+8 or $COXAUT_JOIN_CAP)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--budget", cfg.budget, "element budget")->check(CLI::PositiveNumber);
  };
  auto add_kind = [&](CLI::App* sub) {
    sub->add_option("--kind", cfg.kind, "canonical | shadow:smallest | shadow:low")
        ->check(CLI::IsMember({"canonical", "shadow:smallest", "shadow:low"}));
    sub->add_flag("--minimize", cfg.minimize, "minimise before output");
  };

  auto* roots = app.add_subcommand("roots", "dump the n-small roots");
  add_group(roots);
  add_n(roots);

  auto* shadow = app.add_subcommand("shadow", "smallest Garside shadow, or verify --elements");
  add_group(shadow);
  add_limits(shadow);
  shadow->add_option("--elements", cfg.elements, "comma separated words, e.g. \"e, 1, 2, 1 3\"");

  auto* low = app.add_subcommand("low", "n-low elements");
  add_group(low);
  add_n(low);
  add_limits(low);

  auto* automaton = app.add_subcommand("automaton", "build an automaton");
  add_group(automaton);
  add_n(automaton);
  add_limits(automaton);
  add_kind(automaton);
  automaton->add_option("--dot", cfg.dot_path, "write Graphviz DOT");
  automaton->add_flag("--stats", cfg.stats, "print state and transition counts");

  auto* count = app.add_subcommand("count", "accepted words per length");
  add_group(count);
  add_n(count);
  add_limits(count);
  add_kind(count);
  count->add_option("--max-len", cfg.max_len, "largest length")->check(CLI::NonNegativeNumber);
  count->add_flag("--oracle", cfg.oracle, "compare with brute-force reduced-word counts");

  auto* check = app.add_subcommand("check", "conjecture report as JSON");
  add_group(check);
  add_n(check);
  add_limits(check);
  check->add_option("--conjecture", cfg.conjecture, "1 | 2 | dyho1 | dyho2")
      ->required()
      ->check(CLI::IsMember({"1", "2", "dyho1", "dyho2"}));

  auto* table = app.add_subcommand("table", "statistics rows as CSV");
  table->add_option("--groups", cfg.groups, "semicolon separated groups")->required();
  add_limits(table);
  table->add_flag("--json", cfg.json, "JSON instead of CSV");

  auto* render = app.add_subcommand("render", "rank-3 SVG picture");
  add_group(render);
  add_n(render);
  render->add_option("--svg", cfg.svg_path, "output path, '-' for stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    if (!app.get_subcommands().empty()) err << app.get_subcommands().front()->help();
    return kExitUsage;
  }
  cfg.has_elements = shadow->count("--elements") > 0;

  try {
    if (roots->parsed()) return cmd_roots(cfg, out);
    if (shadow->parsed()) return cmd_shadow(cfg, out, err);
    if (low->parsed()) return cmd_low(cfg, out);
    if (automaton->parsed()) return cmd_automaton(cfg, out, err);
    if (count->parsed()) return cmd_count(cfg, out, err);
    if (check->parsed()) return cmd_check(cfg, out, err);
    if (table->parsed()) return cmd_table(cfg, out);
    if (render->parsed()) return cmd_render(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace coxaut

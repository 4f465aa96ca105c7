#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cli/report.hpp"
#include "xover/constructors.hpp"
#include "xover/design_io.hpp"
#include "xover/error.hpp"
#include "xover/information.hpp"
#include "xover/metrics.hpp"
#include "xover/simulate.hpp"

namespace xover::cli {

namespace {

struct BadArgs : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

std::string joined_args(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += a + '\x1f';
  return s;
}

void add_criterion(Report& rep, const std::string& prefix, const ACriterion& a) {
  rep.set(prefix + "rank", a.rank);
  rep.set(prefix + "connected", a.connected);
  rep.set(prefix + "eigenvalues", a.eigenvalues);
  rep.set(prefix + "H", a.h);
  rep.set(prefix + "trace_mp", a.trace_mp);
}

std::string design_summary(const CrossoverDesign& d) {
  std::ostringstream os;
  os << "t=" << d.treatments() << " p=" << d.periods() << " s=" << d.subjects();
  if (d.replication()) os << " g=" << *d.replication();
  os << '\n' << validate_ubrmd(d).summary() << '\n';
  os << "class: " << classify(d).label() << '\n';
  return os.str();
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  int williams = 0;
  int pair = 0;
  int extreme = 0;
  std::vector<std::string> fixtures;
  std::vector<std::string> union_files;
  bool union_flag = false;
  int reps = 1;
  std::string output;
};

int do_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<CrossoverDesign> parts;
  if (a.williams) parts.push_back(williams_square(a.williams));
  if (a.pair) parts.push_back(williams_pair(a.pair));
  if (a.extreme) parts.push_back(extreme_design(a.extreme));
  for (const auto& name : a.fixtures) parts.push_back(fixture(name));
  for (const auto& path : a.union_files) parts.push_back(read_design(path));
  if (parts.empty()) throw BadArgs("construct needs a design source");
  if (parts.size() > 1 && !a.union_flag) {
    throw BadArgs("several design sources given; pass --union to combine them");
  }
  if (a.reps < 1) throw BadArgs("--reps must be >= 1");
  CrossoverDesign design = parts.size() == 1 ? parts.front() : union_of(parts);
  if (a.reps > 1) design = replicate(design, a.reps);

  emit(format_design(design), a.output, out);
  (a.output.empty() ? err : out) << design_summary(design);
  return kOk;
}

// ----------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string design;
  std::optional<int> truncate;
  std::string pattern;
  std::string format = "json";
  std::string output;
};

int do_evaluate(const EvaluateArgs& a, const std::vector<std::string>& raw,
                std::ostream& out) {
  const std::string text = read_text_file(a.design);
  const CrossoverDesign design = parse_design(text);
  std::string digest_input = text + joined_args(raw);
  std::optional<DropoutPattern> pattern;
  if (!a.pattern.empty()) {
    const std::string ptext = read_text_file(a.pattern);
    digest_input += ptext;
    pattern = parse_pattern(ptext, design.subjects());
    pattern->check_against(design);
  }
  if (a.truncate) {
    const int m = *a.truncate;
    if (m < 1 || m >= design.periods() - 1) {
      throw BadArgs("--truncate needs 1 <= m < p-1");
    }
    pattern = DropoutPattern::truncated(design, m);
  }

  Report rep("evaluate", digest(digest_input));
  const int t = design.treatments();
  const auto validation = validate_ubrmd(design);
  const Classification cls = classify(design);
  rep.set("t", t);
  rep.set("p", design.periods());
  rep.set("s", design.subjects());
  if (design.replication()) rep.set("g", *design.replication());
  rep.set("ubrmd", validation.pass);
  rep.set("class", cls.label());

  const ACriterion plan = a_criterion(direct_info(joint_info_orthogonal(design)));
  if (!pattern) {
    add_criterion(rep, "", plan);
    emit(rep.render(a.format), a.output, out);
    return kOk;
  }

  const ACriterion imp =
      a_criterion(direct_info(a.truncate ? joint_info_orthogonal(truncate(design, *a.truncate))
                                         : joint_info_projection(design, pattern)));
  add_criterion(rep, "", imp);
  add_criterion(rep, "plan.", plan);
  const Loss l = loss(plan, imp);

  if (!a.truncate) {
    rep.set("L", l.value);
    rep.set("L_defined", l.defined);
    emit(rep.render(a.format), a.output, out);
    return kOk;
  }

  const int m = *a.truncate;
  rep.set("m", m);
  rep.set("ML", l.value);
  rep.set("ML_defined", l.defined);
  if (validation.pass && t >= 2 * m + 2) {
    const int g = *design.replication();
    const BoundsReport b = bounds_report(t, m);
    const bool type_w = cls.type_w_m >= m;
    rep.set("type_w", type_w);
    rep.set("theta_L", b.theta_l);
    rep.set("UML", b.uml);
    rep.set("EL", b.el);
    if (type_w) {
      rep.set("theta_L_star", b.theta_l_star);
      rep.set("UML_star", b.uml_star);
      rep.set("EL_star", b.el_star);
    }
    std::vector<double> scaled;
    for (double x : imp.eigenvalues) scaled.push_back(x / g);
    rep.set("eigenvalues_over_g", scaled);
    rep.set("MTr", b.mtr);
    if (imp.connected) {
      rep.set("efficiency_lower_bound", efficiency_lower_bound(imp, t, m, g));
    }
  }
  emit(rep.render(a.format), a.output, out);
  return kOk;
}

// ------------------------------------------------------------------- bounds

struct BoundsArgs {
  int t = 0;
  int m = 1;
  bool type_w = false;
  std::string cls;
  std::string format = "json";
  std::string output;
};

int do_bounds(const BoundsArgs& a, const std::vector<std::string>& raw, std::ostream& out) {
  if (a.m < 1) throw BadArgs("--m must be >= 1");
  if (a.t < 2 * a.m + 2) {
    throw BadArgs("bounds need t >= 2m+2 so that A is nonsingular (t=" + std::to_string(a.t) +
                  ", m=" + std::to_string(a.m) + ")");
  }
  if (!a.cls.empty() && a.m != 1) throw BadArgs("--class applies to m = 1 only");

  Report rep("bounds", digest(joined_args(raw)));
  const BoundsReport b = bounds_report(a.t, a.m);
  rep.set("t", b.t);
  rep.set("m", b.m);
  rep.set("psi1", b.psi1);
  rep.set("theta_L", b.theta_l);
  rep.set("theta_L_star", b.theta_l_star);
  rep.set("UML", b.uml);
  rep.set("UML_star", b.uml_star);
  rep.set("MTr", b.mtr);
  rep.set("EL", b.el);
  rep.set("EL_star", b.el_star);
  rep.set("condition15", b.condition15);
  rep.set("connected_sufficient", b.connected_sufficient);
  rep.set("t_star_m", b.t_star_m);
  rep.set("ML_upper_bound", a.type_w ? b.uml_star : b.uml);
  rep.set("efficiency_lower_bound", a.type_w ? b.el_star : b.el);

  if (!a.cls.empty()) {
    const SquareClass sc = a.cls == "A" ? SquareClass::A : SquareClass::B;
    rep.set("class", a.cls);
    rep.set("theta", class_ab_spectrum(a.t, sc));
    if (a.t >= 5) {
      rep.set("class_connected", true);
      rep.set("ML", class_ab_ml(a.t, sc));
      rep.set("EL_AB", el_ab(a.t, sc));
    } else {
      rep.set("class_connected", false);
      rep.set("ML", 1.0);
    }
  }
  emit(rep.render(a.format), a.output, out);
  return kOk;
}

// ------------------------------------------------------------------- tables

double two_decimals(double x) { return std::round(x * 100.0) / 100.0; }

int do_tables(int table, const std::string& format, const std::string& output,
              const std::vector<std::string>& raw, std::ostream& out) {
  Report rep("tables", digest(joined_args(raw)));
  rep.set("table", table);
  auto put = [&](const std::string& name, int t, double v) {
    const std::string key = name + ".t" + std::to_string(t);
    rep.set(key, v);
    rep.set(key + ".rounded", two_decimals(v));
  };
  if (table == 1 || table == 2) {
    const int m = table;
    const std::vector<int> ts =
        m == 1 ? std::vector<int>{5, 6, 7, 8, 9, 10} : std::vector<int>{8, 9, 10, 11, 12, 16};
    rep.set("m", m);
    for (int t : ts) put("UML", t, uml(t, m, false));
    for (int t : ts) put("UML_star", t, uml(t, m, true));
    for (int t : ts) put("EL", t, efficiency_bounds(t, m).el);
    for (int t : ts) put("EL_star", t, efficiency_bounds(t, m).el_star);
  } else {
    rep.set("m", 1);
    for (int t = 5; t <= 10; ++t) rep.set("class.t" + std::to_string(t), t % 2 ? "B" : "A");
    for (int t = 5; t <= 10; ++t) {
      put("ML", t, class_ab_ml(t, t % 2 ? SquareClass::B : SquareClass::A));
    }
    for (int t = 5; t <= 10; ++t) {
      put("EL_AB", t, el_ab(t, t % 2 ? SquareClass::B : SquareClass::A));
    }
  }
  emit(rep.render(format), output, out);
  return kOk;
}

// ----------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string design;
  int m = 1;
  std::string hazards;
  long long n = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string format = "json";
  std::string output;
};

std::vector<double> parse_hazards(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw BadArgs("bad hazard '" + item + "'");
    }
    if (used != item.size()) throw BadArgs("bad hazard '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw BadArgs("--hazards needs at least one value");
  return out;
}

int do_simulate(const SimulateArgs& a, const std::vector<std::string>& raw, std::ostream& out) {
  const std::string text = read_text_file(a.design);
  const CrossoverDesign design = parse_design(text);
  DropoutModel model{a.m, parse_hazards(a.hazards)};
  model.validate(design.periods());
  if (a.n < 1) throw BadArgs("--n must be >= 1");
  if (a.threads < 1) throw BadArgs("--threads must be >= 1");

  SimulationOptions opts;
  opts.replicates = a.n;
  opts.seed = a.seed;
  opts.threads = a.threads;
  const SimulationResult r = simulate(design, model, opts);

  // The thread count does not change results, so it is left out of the digest.
  std::vector<std::string> digest_args;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == "--threads") {
      ++i;
      continue;
    }
    if (raw[i].rfind("--threads=", 0) == 0) continue;
    digest_args.push_back(raw[i]);
  }
  Report rep("simulate", digest(text + joined_args(digest_args)));
  rep.set("t", design.treatments());
  rep.set("s", design.subjects());
  rep.set("m", model.m);
  rep.set("hazards", model.hazards);
  rep.set("seed", static_cast<long long>(a.seed));
  rep.set("replicates", r.replicates);
  rep.set("loss.mean", r.loss.mean);
  rep.set("loss.sd", r.loss.sd);
  rep.set("loss.se", r.loss.se);
  rep.set("loss.min", r.loss.min);
  rep.set("loss.q05", r.loss.q05);
  rep.set("loss.q25", r.loss.q25);
  rep.set("loss.q50", r.loss.q50);
  rep.set("loss.q75", r.loss.q75);
  rep.set("loss.q95", r.loss.q95);
  rep.set("loss.max", r.loss.max);
  rep.set("p_disconnect", r.p_disconnect);
  rep.set("ML", r.max_loss_minimal);
  rep.set("ML_defined", r.minimal_connected);
  rep.set("ordering_violations", r.ordering_violations);
  emit(rep.render(a.format), a.output, out);
  return r.ordering_violations > 0 ? kViolation : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Crossover designs under subject dropout", "xover"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"json", "csv"};

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a design and write design text v1");
  auto* src_w = construct->add_option("--williams", ca.williams, "Williams square, even t");
  auto* src_p = construct->add_option("--pair", ca.pair, "Williams pair, odd t");
  auto* src_e = construct->add_option("--extreme", ca.extreme, "All t! sequences");
  construct->add_option("--fixture", ca.fixtures, "Named reference design (repeatable)")
      ->check(CLI::IsMember(fixture_names()));
  auto* uni = construct->add_option("--union", ca.union_files,
                                    "Combine all sources, plus any listed design files")
                  ->expected(0, -1);
  construct->add_option("--reps", ca.reps, "Replicate the result K times");
  construct->add_option("-o,--output", ca.output, "Output path (default stdout)");
  (void)src_w;
  (void)src_p;
  (void)src_e;

  EvaluateArgs ea;
  auto* evaluate = app.add_subcommand("evaluate", "Information matrix metrics for a design");
  evaluate->add_option("design", ea.design, "Design file")->required();
  auto* trunc = evaluate->add_option("--truncate", ea.truncate, "Minimal design with m periods dropped");
  auto* pat = evaluate->add_option("--pattern", ea.pattern, "Dropout pattern file");
  trunc->excludes(pat);
  evaluate->add_option("--format", ea.format)->check(CLI::IsMember(formats));
  evaluate->add_option("-o,--output", ea.output);

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Eigenvalue, loss and efficiency bounds");
  bounds->add_option("--t", ba.t, "Number of treatments")->required();
  bounds->add_option("--m", ba.m, "Dropout tail length");
  bounds->add_flag("--type-w", ba.type_w, "Use the type-W bound family");
  bounds->add_option("--class", ba.cls, "Class A or B exact spectrum")
      ->check(CLI::IsMember({"A", "B"}));
  bounds->add_option("--format", ba.format)->check(CLI::IsMember(formats));
  bounds->add_option("-o,--output", ba.output);

  int table = 1;
  std::string tformat = "json";
  std::string toutput;
  auto* tables = app.add_subcommand("tables", "Regenerate the bound and loss tables");
  tables->add_option("--table", table)->required()->check(CLI::IsMember({1, 2, 3}));
  tables->add_option("--format", tformat)->check(CLI::IsMember(formats));
  tables->add_option("-o,--output", toutput);

  SimulateArgs sa;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo tail dropout");
  simulate_cmd->add_option("design", sa.design, "Planned design file")->required();
  simulate_cmd->add_option("--m", sa.m, "Dropout tail length");
  simulate_cmd->add_option("--hazards", sa.hazards, "Comma-separated hazards h1,..,hm")
      ->required();
  simulate_cmd->add_option("--n", sa.n, "Replicates");
  simulate_cmd->add_option("--seed", sa.seed, "RNG seed");
  simulate_cmd->add_option("--threads", sa.threads, "Worker threads");
  simulate_cmd->add_option("--format", sa.format)->check(CLI::IsMember(formats));
  simulate_cmd->add_option("-o,--output", sa.output);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArgs;
  }
  ca.union_flag = uni->count() > 0 || !ca.union_files.empty();
  std::erase(ca.union_files, std::string{});

  try {
    if (construct->parsed()) return do_construct(ca, out, err);
    if (evaluate->parsed()) return do_evaluate(ea, args, out);
    if (bounds->parsed()) return do_bounds(ba, args, out);
    if (tables->parsed()) return do_tables(table, tformat, toutput, args, out);
    if (simulate_cmd->parsed()) return do_simulate(sa, args, out);
  } catch (const BadArgs& e) {
    err << "error: " << e.what() << '\n';
    return kBadArgs;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArgs;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kBadArgs;
}

}  // namespace xover::cli

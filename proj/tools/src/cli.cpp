#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "bellmax/bellmax.hpp"
#include "bellmax_cli/cli.hpp"
#include "internal.hpp"

namespace bellmax::cli {
namespace {

using OJson = nlohmann::ordered_json;

struct Num {
  double value = 0.0;
  CLI::Option* opt = nullptr;
  bool given() const { return opt->count() > 0; }
};

void add_num(CLI::App* app, Num& n, const std::string& flag, const std::string& help) {
  n.opt = app->add_option(flag, n.value, help);
}

// Rejects every given flag of `app` that is not in `allowed`.
void only_flags(const CLI::App* app, const std::set<std::string>& allowed, const std::string& what) {
  for (const auto* opt : app->get_options()) {
    if (opt->count() == 0 || opt->get_positional()) continue;
    const auto name = opt->get_name();
    if (name == "--help" || allowed.count(name)) continue;
    throw UsageError(name + " does not apply to " + what);
  }
}

void require(const std::vector<std::pair<const char*, const Num*>>& flags, const std::string& what) {
  std::string missing;
  for (const auto& [name, n] : flags) {
    if (!n->given()) missing += std::string(missing.empty() ? "" : ", ") + name;
  }
  if (!missing.empty()) throw UsageError(what + " requires " + missing);
}

void print_scalar(std::ostream& os, const OJson& v) {
  if (v.is_number_float()) {
    os << format_number(v.get<double>());
  } else if (v.is_string()) {
    os << v.get<std::string>();
  } else if (v.is_null()) {
    os << "";
  } else {
    os << v.dump();
  }
}

// key = value lines; arrays of objects print as a CSV block.
void print_text(std::ostream& os, const OJson& doc, const std::string& prefix = "") {
  for (const auto& [key, v] : doc.items()) {
    const std::string name = prefix + key;
    if (v.is_object()) {
      print_text(os, v, name + ".");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << name << ":\n";
      bool first = true;
      for (const auto& [col, _] : v.front().items()) {
        os << (first ? "  " : ",") << col;
        first = false;
      }
      os << "\n";
      for (const auto& row : v) {
        first = true;
        for (const auto& [_, cellv] : row.items()) {
          os << (first ? "  " : ",");
          print_scalar(os, cellv);
          first = false;
        }
        os << "\n";
      }
    } else if (v.is_array()) {
      os << name << " =";
      for (const auto& x : v) {
        os << " ";
        print_scalar(os, x);
      }
      os << "\n";
    } else {
      os << name << " = ";
      print_scalar(os, v);
      os << "\n";
    }
  }
}

void emit(std::ostream& out, const OJson& doc, bool json) {
  if (json) {
    out << doc.dump(2) << "\n";
  } else {
    print_text(out, doc);
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

void finish_output(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw IoError("write to '" + path + "' failed");
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string kind;
  Num p, q, r, F, f, L, k;
  std::string weak, G, h;
  bool oracle = false;
  double tol = 1e-8;
  CLI::Option* tol_opt = nullptr;
  bool csv = false;
  bool json = false;
};

BellmanQuery build_query(const EvalArgs& a, const CLI::App* app) {
  BellmanQuery query;
  query.kind = *parse_query_kind(a.kind);
  const std::string what = "eval " + a.kind;
  const std::set<std::string> common = {"--oracle", "--tol", "--csv", "--json"};
  auto allowed = [&](std::set<std::string> extra) {
    extra.insert(common.begin(), common.end());
    return extra;
  };
  switch (query.kind) {
    case QueryKind::I5:
      only_flags(app, allowed({"--p", "--F", "--f", "--L"}), what);
      require({{"--p", &a.p}, {"--F", &a.F}, {"--f", &a.f}, {"--L", &a.L}}, what);
      break;
    case QueryKind::Thm2:
      only_flags(app, allowed({"--weak", "--f", "--G", "--h", "--k"}), what);
      require({{"--f", &a.f}}, what);
      if (a.weak.empty()) throw UsageError(what + " requires --weak");
      query.weak = parse_weak(a.weak);
      query.spec.G = a.G.empty() ? OuterFunction::power(1.0) : parse_outer(a.G);
      query.spec.weight_exponent = a.h.empty() ? 0.0 : parse_weight(a.h);
      query.spec.upper = a.k.given() ? a.k.value : 1.0;
      break;
    case QueryKind::Thm3:
      only_flags(app, allowed({"--p", "--q", "--r", "--F", "--f", "--L"}), what);
      require({{"--p", &a.p}, {"--q", &a.q}, {"--r", &a.r}, {"--F", &a.F}, {"--f", &a.f}, {"--L", &a.L}}, what);
      break;
    case QueryKind::Thm4:
      only_flags(app, allowed({"--p", "--q", "--F", "--f"}), what);
      require({{"--p", &a.p}, {"--q", &a.q}, {"--F", &a.F}, {"--f", &a.f}}, what);
      break;
  }
  query.p = a.p.value;
  query.q = a.q.value;
  query.r = a.r.value;
  query.F = a.F.value;
  query.f = a.f.value;
  query.L = a.L.value;
  return query;
}

int cmd_eval(const EvalArgs& a, const CLI::App* app, std::ostream& out) {
  if (a.csv && a.json) throw UsageError("--csv and --json are exclusive");
  if (!(a.tol > 0.0)) throw UsageError("--tol must be > 0");
  const auto query = build_query(a, app);
  Record rec;
  rec.query = query;
  rec.result = evaluate(query);
  if (a.oracle) {
    rec.oracle = detail::oracle_value(query, *rec.result);
    if (!rec.oracle) throw UsageError("no oracle for this query kind");
    rec.rel_err = detail::relative_error(rec.result->value, *rec.oracle);
    rec.pass = *rec.rel_err <= a.tol;
  }

  if (a.csv) {
    out << csv_header() << "\n" << csv_row(rec) << "\n";
  } else if (a.json) {
    out << to_json(rec).dump(2) << "\n";
  } else {
    const auto& r = *rec.result;
    OJson doc;
    doc["kind"] = a.kind;
    doc["value"] = r.value;
    doc["branch"] = r.branch;
    if (r.sigma) doc["sigma"] = *r.sigma;
    if (r.alpha) doc["alpha"] = *r.alpha;
    if (r.z) doc["z"] = *r.z;
    if (r.threshold) doc["threshold"] = *r.threshold;
    if (!r.flags.empty()) doc["flags"] = r.flags;
    if (rec.oracle) {
      doc["oracle"] = *rec.oracle;
      doc["rel_err"] = *rec.rel_err;
      doc["pass"] = *rec.pass;
    }
    print_text(out, doc);
  }
  return rec.pass.value_or(true) ? kExitOk : kExitNumerical;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string check;
  int depth = 10;
  int trials = 1000;
  std::uint64_t seed = 0;
  Num tol;
  Num p, q, r, F, f, k;
  std::vector<double> L;
  std::string g = "0.3:3,1:1", G = "pow:2", h = "pow:0";
  std::vector<int> N = {4, 16, 64, 256};
  bool json = false;
};

double tol_or(const Num& t, double fallback) {
  if (!t.given()) return fallback;
  if (!(t.value > 0.0)) throw UsageError("--tol must be > 0");
  return t.value;
}

int verify_lemma2(const VerifyArgs& a, std::ostream& out) {
  if (a.depth < 1 || a.depth > LeafVector::kMaxDepth) throw UsageError("--depth must be in [1, 24]");
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  const double tol = tol_or(a.tol, 1e-12);
  std::mt19937_64 rng(a.seed);
  long violations = 0, points = 0;
  double min_slack = INFINITY, max_slack = -INFINITY;
  for (int trial = 0; trial < a.trials; ++trial) {
    const auto phi = detail::random_leaves(rng, a.depth, trial);
    const auto M = maximal_rearranged(phi);
    const auto star = leaf_rearranged(phi);
    for (double t : M.breakpoints().subspan(1)) {
      const double slack = star.primitive(t) / t - M(t);
      min_slack = std::min(min_slack, slack);
      max_slack = std::max(max_slack, slack);
      ++points;
      if (slack < -tol) ++violations;
    }
  }
  OJson doc;
  doc["check"] = "lemma2";
  doc["depth"] = a.depth;
  doc["trials"] = a.trials;
  doc["seed"] = a.seed;
  doc["tolerance"] = tol;
  doc["breakpoints"] = points;
  doc["violations"] = violations;
  doc["min_slack"] = min_slack;
  doc["max_slack"] = max_slack;
  doc["pass"] = violations == 0;
  emit(out, doc, a.json);
  return violations == 0 ? kExitOk : kExitNumerical;
}

int verify_symmetrization(const VerifyArgs& a, std::ostream& out) {
  const auto g = parse_step(a.g);
  const double k = a.k.given() ? a.k.value : 1.0;
  const FunctionalSpec fs{parse_outer(a.G), parse_weight(a.h), k};
  if (a.N.empty()) throw UsageError("--N needs at least one value");
  bool ok = true;
  double prev_gap = INFINITY;
  OJson rows = OJson::array();
  for (int N : a.N) {
    if (N < 1) throw UsageError("--N values must be >= 1");
    const auto rep = verify_symmetrization(ExtremizerSpec{g, k, N}, fs);
    const bool monotone = rep.gap <= prev_gap + 1e-12 * rep.hardy_value;
    ok = ok && rep.bounded && monotone;
    prev_gap = rep.gap;
    rows.push_back({{"N", N},
                    {"alpha", rep.alpha},
                    {"annuli", rep.annuli},
                    {"lower_sum", rep.lower_sum},
                    {"hardy_value", rep.hardy_value},
                    {"gap", rep.gap},
                    {"bounded", rep.bounded}});
  }
  OJson doc;
  doc["check"] = "symmetrization";
  doc["g"] = a.g;
  doc["G"] = a.G;
  doc["h"] = a.h;
  doc["k"] = k;
  doc["rows"] = rows;
  doc["pass"] = ok;
  emit(out, doc, a.json);
  return ok ? kExitOk : kExitNumerical;
}

int verify_thm3(const VerifyArgs& a, std::ostream& out) {
  require({{"--p", &a.p}, {"--q", &a.q}, {"--r", &a.r}, {"--F", &a.F}, {"--f", &a.f}}, "verify sharpness-thm3");
  const double tol = tol_or(a.tol, 1e-8);
  constexpr double kContinuityTol = 1e-10;
  const double p = a.p.value, q = a.q.value, r = a.r.value, F = a.F.value, f = a.f.value;
  const double Ls = thm3_threshold(p, F, f);
  std::vector<double> Ls_grid = a.L;
  if (Ls_grid.empty()) {
    Ls_grid = {f};
    for (double L : {std::sqrt(f * Ls), Ls, 3.0 * Ls}) {
      if (L > f) Ls_grid.push_back(L);
    }
  }
  FunctionalOptions opts;
  opts.policy = QuadraturePolicy::AdaptiveOnly;
  bool ok = true;
  OJson rows = OJson::array();
  for (double L : Ls_grid) {
    const auto res = bellman_thm3(p, q, r, F, f, L);
    const double oracle = bellman_thm3_integral(p, q, r, F, f, L, opts);
    const double err = detail::relative_error(res.value, oracle);
    ok = ok && err <= tol;
    rows.push_back({{"L", L}, {"branch", res.branch}, {"value", res.value}, {"oracle", oracle}, {"rel_err", err}});
  }
  OJson doc;
  doc["check"] = "sharpness-thm3";
  doc["threshold"] = Ls;
  doc["tolerance"] = tol;
  doc["rows"] = rows;
  if (Ls >= f) {
    const double at = bellman_thm3(p, q, r, F, f, Ls).value;
    const double above = bellman_thm3(p, q, r, F, f, std::nextafter(Ls, INFINITY)).value;
    const double gap = detail::relative_error(at, above);
    ok = ok && gap <= kContinuityTol;
    doc["continuity_rel_gap"] = gap;
    doc["continuity_tolerance"] = kContinuityTol;
  }
  doc["pass"] = ok;
  emit(out, doc, a.json);
  return ok ? kExitOk : kExitNumerical;
}

int verify_thm4(const VerifyArgs& a, std::ostream& out) {
  require({{"--p", &a.p}, {"--q", &a.q}, {"--F", &a.F}, {"--f", &a.f}}, "verify sharpness-thm4");
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  const double tol = tol_or(a.tol, 1e-8);
  const double p = a.p.value, q = a.q.value, F = a.F.value, f = a.f.value;
  BellmanQuery query;
  query.kind = QueryKind::Thm4;
  query.p = p;
  query.q = q;
  query.F = F;
  query.f = f;
  const auto res = evaluate(query);
  OJson doc;
  doc["check"] = "sharpness-thm4";
  doc["value"] = res.value;
  doc["tolerance"] = tol;
  bool ok = true;
  if (const auto oracle = detail::oracle_value(query, res)) {
    const double err = detail::relative_error(res.value, *oracle);
    ok = err <= tol;
    doc["alpha"] = *res.alpha;
    doc["extremizer_value"] = *oracle;
    doc["extremizer_rel_err"] = err;
  }
  std::mt19937_64 rng(a.seed);
  const auto stats = detail::thm4_squeeze(p, q, f, a.trials, tol, rng);
  ok = ok && stats.violations == 0;
  doc["seed"] = a.seed;
  doc["trials"] = stats.trials;
  doc["violations"] = stats.violations;
  doc["max_ratio"] = stats.max_ratio;
  doc["pass"] = ok;
  emit(out, doc, a.json);
  return ok ? kExitOk : kExitNumerical;
}

int cmd_verify(const VerifyArgs& a, const CLI::App* app, std::ostream& out) {
  const std::string what = "verify " + a.check;
  if (a.check == "lemma2") {
    only_flags(app, {"--depth", "--trials", "--seed", "--tol", "--json"}, what);
    return verify_lemma2(a, out);
  }
  if (a.check == "symmetrization") {
    only_flags(app, {"--g", "--G", "--h", "--k", "--N", "--json"}, what);
    return verify_symmetrization(a, out);
  }
  if (a.check == "sharpness-thm3") {
    only_flags(app, {"--p", "--q", "--r", "--F", "--f", "--L", "--tol", "--json"}, what);
    return verify_thm3(a, out);
  }
  only_flags(app, {"--p", "--q", "--F", "--f", "--trials", "--seed", "--tol", "--json"}, what);
  return verify_thm4(a, out);
}

// ---------------------------------------------------------------- extremal

struct ExtremalArgs {
  Num p, q, F, f;
  int samples = 0;
  std::string out;
  bool json = false;
};

int cmd_extremal(const ExtremalArgs& a, std::ostream& out) {
  require({{"--p", &a.p}, {"--q", &a.q}, {"--F", &a.F}, {"--f", &a.f}}, "extremal");
  if (a.samples < 0) throw UsageError("--samples must be >= 0");
  if (!a.out.empty() && a.samples == 0) throw UsageError("--out needs --samples");
  const double p = a.p.value, q = a.q.value, F = a.F.value, f = a.f.value;
  const auto res = bellman_thm4(p, q, F, f);
  if (!res.alpha) throw UnsupportedError("extremal: q = 1 has no power-law extremizer");
  const double alpha = *res.alpha;
  const auto g = PiecewisePower::single(f * (1.0 - alpha), -alpha);
  const double achieved = delta_functional(g, p, q);

  OJson doc;
  doc["kind"] = "thm4";
  doc["alpha"] = alpha;
  doc["z"] = res.z ? OJson(*res.z) : OJson(nullptr);
  doc["coefficient"] = f * (1.0 - alpha);
  doc["exponent"] = -alpha;
  doc["lorentz_mass"] = lorentz_qnorm(g, p, q);
  doc["functional"] = achieved;
  doc["bound"] = res.value;
  doc["rel_err"] = detail::relative_error(achieved, res.value);

  if (a.samples > 0) {
    const auto H = hardy_of(g);
    std::ostringstream table;
    table << "t,g,Hg\n";
    for (int i = 0; i < a.samples; ++i) {
      const double t = a.samples == 1 ? 1.0 : std::pow(10.0, -6.0 + 6.0 * i / (a.samples - 1));
      table << format_number(t) << "," << format_number(g(t)) << "," << format_number(H(t)) << "\n";
    }
    if (!a.out.empty()) {
      auto os = open_output(a.out);
      os << table.str();
      finish_output(os, a.out);
      doc["samples_written"] = a.out;
    } else {
      emit(out, doc, a.json);
      out << table.str();
      return kExitOk;
    }
  }
  emit(out, doc, a.json);
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string config;
  std::string out;
  std::string json;
  unsigned jobs = 0;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  bool timing = false;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  std::ifstream in(a.config, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + a.config + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config '" + a.config + "' is not valid JSON: " + e.what());
  }
  auto config = parse_sweep_config(doc);
  if (a.seed_opt->count() > 0) config.seed = a.seed;
  const std::string csv_path = !a.out.empty() ? a.out : config.out.value_or("");

  // Open outputs before the work so an unwritable path fails fast.
  std::ofstream csv_file, json_file;
  if (!csv_path.empty()) csv_file = open_output(csv_path);
  if (!a.json.empty()) json_file = open_output(a.json);

  const unsigned jobs = a.jobs > 0 ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  const auto start = std::chrono::steady_clock::now();
  const auto records = run_sweep(config, jobs, a.timing);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ostream& csv = csv_path.empty() ? out : csv_file;
  csv << csv_header() << "\n";
  for (const auto& rec : records) csv << csv_row(rec) << "\n";
  if (!csv_path.empty()) finish_output(csv_file, csv_path);

  if (!a.json.empty()) {
    json_file << sweep_report(config, records, a.timing ? std::optional(elapsed) : std::nullopt).dump(2) << "\n";
    finish_output(json_file, a.json);
  }

  const auto s = summarize(records);
  std::ostream& note = csv_path.empty() ? err : out;
  note << "rows " << s.rows << ", pass " << s.pass_count << ", fail " << s.fail_count << ", unchecked "
       << s.unchecked_count << ", skipped " << s.skipped_count << ", errors " << s.error_count << ", check failures "
       << s.check_fail_count << "\n";
  return s.fail_count + s.error_count + s.check_fail_count > 0 ? kExitNumerical : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp Bellman functions for dyadic maximal operators: evaluation, verification and sweeps.",
               "bellmax"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  const std::vector<std::string> kinds = {"i5", "thm2", "thm3", "thm4"};

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate one closed-form Bellman function");
  eval->add_option("kind", ea.kind, "i5 | thm2 | thm3 | thm4")->required()->check(CLI::IsMember(kinds));
  add_num(eval, ea.p, "--p", "Integrability exponent p > 1");
  add_num(eval, ea.q, "--q", "Lorentz exponent q");
  add_num(eval, ea.r, "--r", "Outer Lorentz exponent r > 0 (thm3)");
  add_num(eval, ea.F, "--F", "Norm bound F");
  add_num(eval, ea.f, "--f", "Average f");
  add_num(eval, ea.L, "--L", "Maximal-average bound L");
  add_num(eval, ea.k, "--k", "Integration limit k in (0, 1] (thm2)");
  eval->add_option("--weak", ea.weak, "Weak constraints p1:F1,p2:F2,... (thm2)");
  eval->add_option("--G", ea.G, "Outer function pow:R or maxpow:R:L (thm2)");
  eval->add_option("--h", ea.h, "Weight pow:S (thm2)");
  eval->add_flag("--oracle", ea.oracle, "Compare with an independent quadrature evaluation");
  ea.tol_opt = eval->add_option("--tol", ea.tol, "Relative tolerance for --oracle");
  eval->add_flag("--csv", ea.csv, "Print the CSV header and row");
  eval->add_flag("--json", ea.json, "Print a JSON record");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a sharpness or bound check");
  verify->add_option("check", va.check, "lemma2 | symmetrization | sharpness-thm3 | sharpness-thm4")
      ->required()
      ->check(CLI::IsMember({"lemma2", "symmetrization", "sharpness-thm3", "sharpness-thm4"}));
  verify->add_option("--depth", va.depth, "Tree depth (lemma2)");
  verify->add_option("--trials", va.trials, "Random trials");
  verify->add_option("--seed", va.seed, "RNG seed");
  add_num(verify, va.tol, "--tol", "Tolerance");
  add_num(verify, va.p, "--p", "p");
  add_num(verify, va.q, "--q", "q");
  add_num(verify, va.r, "--r", "r (sharpness-thm3)");
  add_num(verify, va.F, "--F", "F");
  add_num(verify, va.f, "--f", "f");
  verify->add_option("--L", va.L, "Comma-separated L values (sharpness-thm3)")->delimiter(',');
  add_num(verify, va.k, "--k", "k (symmetrization)");
  verify->add_option("--g", va.g, "Nonincreasing step end:value,... (symmetrization)");
  verify->add_option("--G", va.G, "Outer function pow:R or maxpow:R:L (symmetrization)");
  verify->add_option("--h", va.h, "Weight pow:S (symmetrization)");
  verify->add_option("--N", va.N, "Comma-separated chain lengths (symmetrization)")->delimiter(',');
  verify->add_flag("--json", va.json, "Print JSON");

  ExtremalArgs xa;
  auto* extremal = app.add_subcommand("extremal", "Construct the power-law extremizer of the L^{p,q} problem");
  add_num(extremal, xa.p, "--p", "p");
  add_num(extremal, xa.q, "--q", "q > 1");
  add_num(extremal, xa.F, "--F", "F");
  add_num(extremal, xa.f, "--f", "f");
  extremal->add_option("--samples", xa.samples, "Log-spaced samples of g and Hg on [1e-6, 1]");
  extremal->add_option("--out", xa.out, "Write samples to this CSV file");
  extremal->add_flag("--json", xa.json, "Print JSON");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a parameter grid from a JSON config");
  sweep->add_option("--config", sa.config, "Sweep config (JSON)")->required();
  sweep->add_option("--out", sa.out, "CSV output path (default: config out, else stdout)");
  sweep->add_option("--json", sa.json, "JSON report path");
  sweep->add_option("--jobs", sa.jobs, "Worker threads (default: hardware concurrency)");
  sa.seed_opt = sweep->add_option("--seed", sa.seed, "Override the config seed");
  sweep->add_flag("--timing", sa.timing, "Include wall times in the JSON report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for more information.\n";
    return kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(ea, eval, out);
    if (verify->parsed()) return cmd_verify(va, verify, out);
    if (extremal->parsed()) return cmd_extremal(xa, out);
    return cmd_sweep(sa, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const PreconditionError& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kExitDomain;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace bellmax::cli

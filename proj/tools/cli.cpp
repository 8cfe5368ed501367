#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "json_io.hpp"
#include "smalelab/errors.hpp"
#include "smalelab/rng.hpp"

namespace smalelab::cli {

namespace {

using io::json;

constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kDefaultSeed = 42;
constexpr double kBoundSlack = 1e-9;
constexpr double kSearchSlack = 1e-6;

struct Common {
  std::uint64_t seed = kDefaultSeed;
  RootFindConfig rootfind;
  int jobs = 1;
  std::string out;
  std::string format = "json";
};

struct Outcome {
  json result;
  int exit_code = kExitOk;
  std::string csv;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "RNG seed (default 42, or $SMALE_LAB_SEED)");
  sub->add_option("--step-tol", c.rootfind.step_tol, "root finder relative step tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--max-iters", c.rootfind.max_iters, "root finder iteration cap")->check(CLI::PositiveNumber);
  sub->add_option("--cluster-tol", c.rootfind.cluster_tol, "root clustering tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--jobs", c.jobs, "worker thread cap")->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "report path (default: stdout)");
  sub->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "csv"}));
}

json common_config(const Common& c) {
  return {{"step_tol", c.rootfind.step_tol},
          {"max_iters", c.rootfind.max_iters},
          {"cluster_tol", c.rootfind.cluster_tol},
          {"jobs", c.jobs}};
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

struct RatioStats {
  int count = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = 0.0;
  double sum = 0.0;

  void add(double x) {
    ++count;
    min = std::min(min, x);
    max = std::max(max, x);
    sum += x;
  }
  json to_json() const {
    if (count == 0) return {{"count", 0}};
    return {{"count", count}, {"min", min}, {"max", max}, {"mean", sum / count}};
  }
};

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string poly;
  bool normalized = false;
  int samples = 1000;
};

Outcome analyze(const AnalyzeArgs& a, const Common& c) {
  const Poly p = io::parse_poly(a.poly);
  if (p.degree() < 2) throw DomainError("poly: degree must be at least 2");
  if (a.normalized && !is_normalized(p, kNormalizationTol)) {
    throw PreconditionError("poly: --normalized given but P(0) = 0, P'(0) = 1 does not hold");
  }
  const CriticalContext ctx(p, c.rootfind);
  SampleConfig sc;
  sc.samples = a.samples;
  sc.seed = c.seed;
  const ScalarReport report = bound_report(ctx, sc);

  RatioStats s_stats;
  RatioStats ds_stats;
  const std::uint64_t stream_seed = derive_seed(c.seed, 0x51a7);
  for (int i = 0; i < a.samples; ++i) {
    CounterRng rng(stream_seed, static_cast<std::uint64_t>(i));
    const Scalar z = rng.in_disk(ctx.sampling_radius());
    if (!ctx.is_admissible(z)) continue;
    const auto& crit = ctx.critical_points();
    if (std::any_of(crit.begin(), crit.end(), [&](Scalar w) { return std::abs(z - w) <= kCoincidenceTol; })) continue;
    s_stats.add(s_at(ctx, z).ratio);
    ds_stats.add(ds_at(ctx, z).ratio);
  }

  bool ok = report.all_pass();
  json higher = json::array();
  const Scalar z = report.s_estimate.z;
  const QuotientWitness nearest = nearest_value_witness(ctx, z);
  const Scalar w = nearest.w;
  for (int k = 2; k <= p.degree(); ++k) {
    const double value = higher_order_quantity(ctx, z, nearest.index, k);
    const double bound = std::pow(4.0, k - 1);
    const bool pass = value <= bound + kBoundSlack;
    const bool quarter = value <= 0.25 + kBoundSlack;
    json row{{"k", k}, {"value", value}, {"bound", bound}, {"pass", pass}, {"within_quarter", quarter}};
    ok = ok && pass;
    // For quadratics the quarter is the exact value, so it is a check there.
    if (p.degree() == 2) ok = ok && quarter;
    higher.push_back(row);
  }

  Outcome o;
  o.result = {{"poly", io::to_json(p)},
              {"samples", a.samples},
              {"report", io::to_json(report)},
              {"s_at_ratio", s_stats.to_json()},
              {"ds_at_ratio", ds_stats.to_json()},
              {"higher_order", {{"z", io::to_json(z)}, {"w", io::to_json(w)}, {"values", higher}}}};
  o.exit_code = ok ? kExitOk : kExitError;
  std::ostringstream csv;
  csv << "name,relation,bound,observed,pass\n";
  for (const auto& chk : report.bound_checks) {
    const json j = io::to_json(chk);
    csv << chk.name << ',' << j["relation"].get<std::string>() << ',' << fmt(chk.bound) << ','
        << fmt(chk.observed) << ',' << (chk.pass ? "true" : "false") << '\n';
  }
  o.csv = csv.str();
  return o;
}

// ---- search ----------------------------------------------------------------

struct SearchArgs {
  std::string mode = "s0";
  std::vector<int> degrees;
  std::vector<int> dims{1};
  int restarts = 64;
  int trials = 1000;
  bool strong = false;
};

json row_json(int n, int k, double best, double bound, bool pass) {
  return {{"n", n}, {"k", k}, {"best_value", best}, {"bound", bound}, {"pass", pass}};
}

Outcome search(const SearchArgs& a, const Common& c) {
  Outcome o;
  json rows = json::array();
  json cells = json::array();
  bool theorem_ok = true;
  bool finding = false;

  if (a.mode == "s0" || a.mode == "ds0") {
    SearchConfig sc;
    sc.restarts = a.restarts;
    sc.seed = c.seed;
    sc.jobs = c.jobs;
    for (int n : a.degrees) {
      const bool max_mode = a.mode == "s0";
      const SearchState st = max_mode ? search_extremal_s0(n, sc) : search_extremal_ds0(n, sc);
      double bound;
      bool pass;
      json theorem = json::array();
      if (max_mode) {
        bound = static_cast<double>(n - 1) / n;
        pass = st.objective <= bound + kSearchSlack;
        const auto weak = make_check("weak_smale", st.objective, Relation::kLessEq, 1.0, kSearchSlack);
        const auto bmn = make_check("beardon_minda_ng_s0", st.objective, Relation::kLessEq,
                                    beardon_minda_ng_bound(n), kSearchSlack);
        theorem = {io::to_json(weak), io::to_json(bmn)};
        theorem_ok = theorem_ok && weak.pass && bmn.pass;
      } else {
        bound = 1.0 / n;
        pass = st.objective >= bound - kSearchSlack;
        const auto nz = make_check("ng_zhang_ds0", st.objective, Relation::kGreater, ng_zhang_floor(n), 0.0);
        const auto dt = make_check("dubinin_tan_ds0", st.objective, Relation::kGreaterEq, dubinin_tan_floor(n),
                                   kSearchSlack);
        theorem = {io::to_json(nz), io::to_json(dt)};
        theorem_ok = theorem_ok && nz.pass && dt.pass;
      }
      finding = finding || !pass;
      rows.push_back(row_json(n, 1, st.objective, bound, pass));
      cells.push_back({{"n", n}, {"k", 1}, {"state", io::to_json(st)}, {"theorem_checks", theorem}});
    }
  } else {
    HuntConfig hc;
    hc.seed = c.seed;
    hc.jobs = c.jobs;
    hc.strong = a.strong;
    hc.check.rootfind = c.rootfind;
    for (int n : a.degrees) {
      for (int k : a.dims) {
        const HuntSummary s = hunt_cstar(n, k, a.trials, hc);
        const bool pass = s.certificates.empty();
        // Degree 2 is a theorem in every dimension, and the strong form implies the norm form.
        if (n == 2 && !pass) theorem_ok = false;
        if (s.strong_implies_sharp_violations > 0) theorem_ok = false;
        finding = finding || !pass;
        rows.push_back(row_json(n, k, s.max_min_ratio, static_cast<double>(n - 1) / n, pass));
        cells.push_back(io::to_json(s));
      }
    }
  }

  o.result = {{"mode", a.mode}, {"rows", rows}, {"cells", cells}};
  o.exit_code = !theorem_ok ? kExitError : (finding ? kExitFinding : kExitOk);
  std::ostringstream csv;
  csv << "n,k,best_value,bound,pass\n";
  for (const auto& r : rows) {
    csv << r["n"].get<int>() << ',' << r["k"].get<int>() << ',' << fmt(r["best_value"].get<double>()) << ','
        << fmt(r["bound"].get<double>()) << ',' << (r["pass"].get<bool>() ? "true" : "false") << '\n';
  }
  o.csv = csv.str();
  return o;
}

// ---- cstar -----------------------------------------------------------------

struct CStarArgs {
  int degree = 2;
  int dim = 1;
  int trials = 1000;
  bool strong = false;
};

Outcome cstar(const CStarArgs& a, const Common& c) {
  HuntConfig hc;
  hc.seed = c.seed;
  hc.jobs = c.jobs;
  hc.strong = a.strong;
  hc.check.rootfind = c.rootfind;
  const HuntSummary s = hunt_cstar(a.degree, a.dim, a.trials, hc);

  Outcome o;
  o.result = {{"model", "C^k, pointwise operations, sup norm"}, {"summary", io::to_json(s)}};
  bool theorem_ok = s.strong_implies_sharp_violations == 0;

  if (a.degree == 2) {
    double max_residual = 0.0;
    double max_higher = 0.0;
    double max_ratio_dev = 0.0;
    int failures = 0;
    for (int t = 0; t < a.trials; ++t) {
      CriticalSet crit;
      auto [P, z] = random_cstar_trial(2, a.dim, hc.seed, static_cast<std::uint64_t>(t), hc, &crit);
      const auto& r = P.roots();
      const double residual = degree2_identity_residual(r[0], r[1], z);
      const double higher = degree2_higher_order(r[0], r[1], z);
      const CStarVerdict v = check_smale(P, crit, z, hc.check);
      const double dev = std::max(std::abs(v.min_ratio - 0.5), std::abs(v.max_ratio - 0.5));
      max_residual = std::max(max_residual, residual);
      max_higher = std::max(max_higher, higher);
      max_ratio_dev = std::max(max_ratio_dev, dev);
      failures += residual > 1e-10 || higher > 0.25 + kBoundSlack || dev > kBoundSlack;
    }
    o.result["degree2"] = {{"trials", a.trials},
                           {"max_identity_residual", max_residual},
                           {"max_higher_order", max_higher},
                           {"max_ratio_deviation_from_half", max_ratio_dev},
                           {"failures", failures},
                           {"pass", failures == 0}};
    theorem_ok = theorem_ok && failures == 0 && s.certificates.empty();
  }

  o.exit_code = !theorem_ok ? kExitError : (s.certificates.empty() ? kExitOk : kExitFinding);
  std::ostringstream csv;
  csv << "n,k,trials,max_min_ratio,min_max_ratio,sharp_failures,dual_failures,certificates\n";
  csv << s.degree << ',' << s.dim << ',' << s.trials << ',' << fmt(s.max_min_ratio) << ','
      << fmt(s.min_max_ratio) << ',' << s.sharp_failures << ',' << s.dual_failures << ','
      << s.certificates.size() << '\n';
  o.csv = csv.str();
  return o;
}

// ---- dynamics --------------------------------------------------------------

struct DynamicsArgs {
  std::string poly;
  std::string sweep;
};

json mlp_json(const MlpResult& r) {
  json orbits = json::array();
  for (const auto& o : r.orbits) orbits.push_back(io::to_json(o));
  return {{"holds", r.holds}, {"inconclusive", inconclusive(r)}, {"witness", io::to_json(r.witness)},
          {"orbits", orbits}};
}

std::pair<int, int> parse_sweep(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("");
    std::size_t used = 0;
    const int n = std::stoi(s.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("");
    const std::string rest = s.substr(comma + 1);
    const int trials = std::stoi(rest, &used);
    if (used != rest.size() || n < 2 || trials < 0) throw std::invalid_argument("");
    return {n, trials};
  } catch (const std::exception&) {
    throw io::InputError("--random-sweep: expected n,trials with n >= 2 and trials >= 0");
  }
}

Outcome dynamics(const DynamicsArgs& a, const Common& c) {
  const OrbitConfig oc;
  Outcome o;
  std::ostringstream csv;
  if (!a.poly.empty()) {
    const Poly p = io::parse_poly(a.poly);
    if (p.degree() < 2) throw DomainError("poly: degree must be at least 2");
    const MlpResult r = mlp_check(p, oc, c.rootfind);
    o.result = {{"poly", io::to_json(p)}, {"mlp", mlp_json(r)}};
    if (r.holds || inconclusive(r)) {
      o.exit_code = kExitOk;
    } else {
      o.exit_code = p.degree() <= 3 ? kExitError : kExitFinding;
    }
    csv << "index,w_re,w_im,ratio,verdict,trajectory_len\n";
    for (std::size_t i = 0; i < r.orbits.size(); ++i) {
      const auto& orb = r.orbits[i];
      csv << i << ',' << fmt(orb.w0.real()) << ',' << fmt(orb.w0.imag()) << ',' << fmt(orb.ratio) << ','
          << to_string(orb.verdict) << ',' << orb.trajectory_len << '\n';
    }
  } else {
    const auto [n, trials] = parse_sweep(a.sweep);
    const MlpSweep sw = mlp_sweep(n, trials, c.seed, oc, c.rootfind, c.jobs);
    json failures = json::array();
    for (const auto& f : sw.failures) {
      failures.push_back({{"trial", f.trial}, {"poly", io::to_json(f.poly)}, {"mlp", mlp_json(f.result)}});
    }
    o.result = {{"degree", n},
                {"trials", trials},
                {"holds", sw.holds},
                {"inconclusive", sw.inconclusive},
                {"failures", failures}};
    const int definite = static_cast<int>(sw.failures.size()) - sw.inconclusive;
    if (definite == 0) {
      o.exit_code = kExitOk;
    } else {
      o.exit_code = n <= 3 ? kExitError : kExitFinding;
    }
    csv << "n,trials,holds,inconclusive,failures\n";
    csv << n << ',' << trials << ',' << sw.holds << ',' << sw.inconclusive << ',' << sw.failures.size() << '\n';
  }
  o.csv = csv.str();
  return o;
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("SMALE_LAB_SEED");
  if (!s || !*s) return std::nullopt;
  try {
    std::size_t used = 0;
    const std::string str(s);
    if (str.front() == '-') throw std::invalid_argument("");
    const auto v = std::stoull(str, &used);
    if (used != str.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw io::InputError("SMALE_LAB_SEED: expected an unsigned 64-bit integer");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smale and Dubinin-Sugawa mean value experiments", "smale-lab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  AnalyzeArgs aa;
  SearchArgs sa;
  CStarArgs ca;
  DynamicsArgs da;

  auto* an = app.add_subcommand("analyze", "S, DS, S0, DS0 estimates and bound checks for one polynomial");
  an->add_option("--poly", aa.poly, R"(polynomial JSON: {"coeffs": [[re,im],...]} or {"roots": [...]})")->required();
  an->add_flag("--normalized", aa.normalized, "require P(0) = 0 and P'(0) = 1");
  an->add_option("--samples", aa.samples, "sample points")->check(CLI::PositiveNumber);
  add_common(an, common);

  auto* se = app.add_subcommand("search", "extremal searches and C* conjecture sweeps");
  se->add_option("--mode", sa.mode, "s0, ds0 or cstar")->check(CLI::IsMember({"s0", "ds0", "cstar"}));
  se->add_option("--degree", sa.degrees, "degree or comma list")->required()->delimiter(',')->check(CLI::Range(2, 12));
  se->add_option("--dim", sa.dims, "C* dimension or comma list (cstar mode)")->delimiter(',')->check(CLI::PositiveNumber);
  se->add_option("--restarts", sa.restarts, "simplex restarts per degree")->check(CLI::PositiveNumber);
  se->add_option("--trials", sa.trials, "trials per (n, k) cell (cstar mode)")->check(CLI::NonNegativeNumber);
  se->add_flag("--strong", sa.strong, "also decide the operator-order forms (cstar mode)");
  add_common(se, common);

  auto* cs = app.add_subcommand("cstar", "random trials of the C* mean value conjectures");
  cs->add_option("--degree", ca.degree, "polynomial degree n")->required()->check(CLI::Range(2, 12));
  cs->add_option("--dim", ca.dim, "algebra dimension k")->required()->check(CLI::PositiveNumber);
  cs->add_option("--trials", ca.trials, "trials")->check(CLI::NonNegativeNumber);
  cs->add_flag("--strong", ca.strong, "also decide the operator-order forms");
  add_common(cs, common);

  auto* dy = app.add_subcommand("dynamics", "critical orbits and the dynamical mean value property");
  auto* dp = dy->add_option("--poly", da.poly, "normalized polynomial JSON");
  auto* ds = dy->add_option("--random-sweep", da.sweep, "n,trials of random normalized polynomials");
  dp->excludes(ds);
  add_common(dy, common);

  const auto start = std::chrono::steady_clock::now();
  try {
    if (auto s = env_seed()) common.seed = *s;
    app.parse(argc, argv);
    if (dy->parsed() && da.poly.empty() && da.sweep.empty()) {
      throw CLI::RequiredError("dynamics: one of --poly or --random-sweep");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  } catch (const std::exception& e) {
    err << "smale-lab: " << e.what() << '\n';
    return kExitError;
  }

  Outcome o;
  std::string name;
  json extra;
  try {
    if (an->parsed()) {
      name = "analyze";
      extra = {{"samples", aa.samples}, {"normalized_flag", aa.normalized}};
      o = analyze(aa, common);
    } else if (se->parsed()) {
      name = "search";
      extra = {{"mode", sa.mode}, {"degrees", sa.degrees}, {"restarts", sa.restarts}};
      if (sa.mode == "cstar") {
        extra["dims"] = sa.dims;
        extra["trials"] = sa.trials;
        extra["strong"] = sa.strong;
      }
      o = search(sa, common);
    } else if (cs->parsed()) {
      name = "cstar";
      extra = {{"degree", ca.degree}, {"dim", ca.dim}, {"trials", ca.trials}, {"strong", ca.strong}};
      o = cstar(ca, common);
    } else {
      name = "dynamics";
      extra = da.poly.empty() ? json{{"random_sweep", da.sweep}} : json{{"poly", "given"}};
      o = dynamics(da, common);
    }
  } catch (const std::exception& e) {
    err << "smale-lab: " << e.what() << '\n';
    return kExitError;
  }

  json config = common_config(common);
  config.update(extra);
  json report{{"tool", "smale-lab"},
              {"version", kVersion},
              {"subcommand", name},
              {"seed", common.seed},
              {"config", config},
              {"result", o.result},
              {"exit_code", o.exit_code},
              {"wall_time_seconds",
               std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};

  const std::string text = common.format == "csv" ? o.csv : report.dump(2) + "\n";
  if (common.out.empty()) {
    out << text;
  } else {
    std::ofstream f(common.out, std::ios::binary);
    f << text;
    if (!f) {
      err << "smale-lab: cannot write " << common.out << '\n';
      return kExitError;
    }
  }
  if (o.exit_code == kExitFinding) err << "smale-lab: candidate counterexample reported\n";
  if (o.exit_code == kExitError) err << "smale-lab: a theorem-level check failed\n";
  return o.exit_code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"smale-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace smalelab::cli

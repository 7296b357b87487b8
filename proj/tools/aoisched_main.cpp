// aoisched: command-line driver for the AoI scheduling toolkit.
//
// Exit codes: 0 success, 1 parameter/IO error, 2 invariant violation,
// 3 resource budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "aoi/adversary_search.hpp"
#include "aoi/analysis.hpp"
#include "aoi/channel_gen.hpp"
#include "aoi/errors.hpp"
#include "aoi/experiments.hpp"
#include "aoi/opt_solver.hpp"
#include "aoi/policies.hpp"
#include "aoi/simulate.hpp"
#include "aoi/trace_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kParamError = 1, kViolation = 2, kBudget = 3 };

struct Common {
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;  // 0 = command default
  unsigned threads = 0;
};

struct TraceArgs {
  std::string file;
  std::string kind = "adv2";
  std::size_t delta = 8;
  std::size_t periods = 1;
  double p = 0.5;
  std::size_t users = 2;
  std::size_t horizon = 10;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "key=value file of option defaults; flags override it");
  sub->add_option("--out", c.out, "Output directory (default: print to stdout)");
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--budget", c.budget, "Resource budget (0 = command default)")
      ->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (0 = hardware)")->capture_default_str();
}

void add_trace_args(CLI::App* sub, TraceArgs& t) {
  sub->add_option("--trace", t.file, "Channel trace file; overrides the generator flags");
  sub->add_option("--kind", t.kind, "Generator: adv2, adv3 or iid")
      ->check(CLI::IsMember({"adv2", "adv3", "iid"}))
      ->capture_default_str();
  sub->add_option("--delta", t.delta, "Construction period length")->capture_default_str();
  sub->add_option("--periods", t.periods, "Construction periods")->capture_default_str();
  sub->add_option("--p", t.p, "Good probability for iid")->capture_default_str();
  sub->add_option("--users", t.users, "Users for iid")->capture_default_str();
  sub->add_option("--horizon", t.horizon, "Slots for iid")->capture_default_str();
}

aoi::ChannelTrace load_or_generate(const TraceArgs& t, std::uint64_t seed) {
  if (!t.file.empty()) return aoi::generate(aoi::FromFile{t.file});
  if (t.kind == "adv2") return aoi::generate(aoi::Adversarial2{t.delta, t.periods});
  if (t.kind == "adv3") return aoi::generate(aoi::Adversarial3{t.delta, t.periods});
  return aoi::generate(aoi::Iid{t.p, t.users, t.horizon, seed});
}

std::vector<std::size_t> parse_size_list(const std::string& text);

aoi::AgeVector initial_ages(const std::string& given, std::size_t n) {
  if (given.empty()) return aoi::AgeVector::ones(n);
  std::vector<aoi::Age> ages;
  for (std::size_t a : parse_size_list(given)) ages.push_back(static_cast<aoi::Age>(a));
  return aoi::AgeVector(std::move(ages));
}

std::string decimal(const aoi::Ratio& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(10) << r.value();
  return os.str();
}

json ratio_json(const aoi::Ratio& r) {
  return json{{"fraction", r.str()}, {"decimal", decimal(r)}};
}

// Every option of the subcommand with its effective value; no timestamps so
// the sidecar is reproducible.
json config_json(const CLI::App* sub) {
  json cfg = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string& name = opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames()[0];
    if (name == "help" || name == "config" || opt->get_lnames().empty()) continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (res.size() == 1)
        cfg[name] = res[0];
      else
        cfg[name] = res;
    } else if (opt->get_type_size() == 0) {
      cfg[name] = false;
    } else {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

class Output {
 public:
  Output(const Common& c, const CLI::App* sub) : dir_(c.out), sub_(sub) {
    if (!dir_.empty()) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) throw aoi::ParameterError("cannot create output directory " + dir_ + ": " + ec.message());
    }
  }

  bool to_files() const { return !dir_.empty(); }

  // Writes `text` to <out>/<name>, or to stdout when no directory was given.
  void write(const std::string& name, const std::string& text) const {
    if (!to_files()) {
      std::cout << text;
      return;
    }
    const fs::path path = fs::path(dir_) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw aoi::ParameterError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw aoi::ParameterError("write failed: " + path.string());
  }

  void sidecar(json extra = json::object()) const {
    if (!to_files()) return;
    json doc;
    doc["tool"] = aoi::kToolName;
    doc["version"] = aoi::tool_version();
    doc["command"] = sub_->get_name();
    doc["config"] = config_json(sub_);
    for (auto& [k, v] : extra.items()) doc[k] = v;
    write(sub_->get_name() + ".json", doc.dump(2) + "\n");
  }

 private:
  std::string dir_;
  const CLI::App* sub_;
};

std::string violations_text(const std::vector<aoi::Violation>& vs) {
  std::ostringstream os;
  for (const auto& v : vs) {
    os << v.check << " interval " << v.interval;
    if (v.slot) os << " slot " << v.slot;
    os << ": " << v.detail << "\n";
  }
  return os.str();
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size()) throw aoi::ParameterError("not an integer: '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw aoi::ParameterError("empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size()) throw aoi::ParameterError("not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw aoi::ParameterError("empty list");
  return out;
}

aoi::OptOptions opt_options(const Common& c) {
  aoi::OptOptions o;
  if (c.budget) o.node_budget = c.budget;
  return o;
}

// Expands `--config FILE` into `--key=value` arguments placed straight after
// the subcommand name, so flags given on the command line (parsed later, last
// value wins) override the file. Lines: key=value, '#' or ';' comments, blank
// lines and [section] headers are ignored.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (file.empty() || args.empty()) return args;

  std::ifstream in(file);
  if (!in) throw aoi::ParameterError("cannot read config file " + file);
  auto trim = [](std::string v) {
    const auto b = v.find_first_not_of(" \t\r");
    const auto e = v.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
  };
  std::vector<std::string> from_file;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw aoi::ParameterError(file + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    from_file.push_back("--" + key + "=" + value);
  }
  args.insert(args.begin() + 1, from_file.begin(), from_file.end());
  return args;
}

// ---------------------------------------------------------------------------

int cmd_gen(const CLI::App* sub, const Common& c, const TraceArgs& t) {
  const aoi::ChannelTrace trace = load_or_generate(t, c.seed);
  std::ostringstream os;
  aoi::write_trace(os, trace);
  Output out(c, sub);
  out.write("trace.txt", os.str());
  out.sidecar({{"num_users", trace.num_users()}, {"horizon", trace.horizon()}});
  return kOk;
}

int cmd_simulate(const CLI::App* sub, const Common& c, const TraceArgs& t,
                 const std::string& policy_name, const std::string& init) {
  const aoi::ChannelTrace trace = load_or_generate(t, c.seed);
  const aoi::PolicyKind kind = aoi::parse_policy_kind(policy_name);
  const aoi::SimTrace sim = aoi::simulate(trace, kind, initial_ages(init, trace.num_users()));

  std::ostringstream csv;
  csv << "slot";
  for (std::size_t i = 0; i < trace.num_users(); ++i) csv << ",age" << i;
  csv << ",decision,success,slot_cost\n";
  for (const auto& r : sim.records) {
    csv << r.slot;
    for (aoi::Age a : r.pre_ages) csv << ',' << a;
    csv << ',' << (r.decision.is_idle() ? std::string("-") : std::to_string(r.decision.user()))
        << ',' << (r.success ? 1 : 0) << ',' << r.slot_cost << '\n';
  }
  Output out(c, sub);
  out.write("simulate.csv", csv.str());
  const aoi::Ratio avg = aoi::average_aoi(sim);
  out.sidecar({{"policy", std::string(aoi::policy_name(kind))},
               {"total_cost", sim.total_cost},
               {"aoi_avg", ratio_json(avg)}});
  if (!out.to_files())
    std::cout << "total_cost " << sim.total_cost << "\naoi_avg " << decimal(avg) << "\n";
  return kOk;
}

int cmd_opt(const CLI::App* sub, const Common& c, const TraceArgs& t,
            const std::string& init, bool brute) {
  const aoi::ChannelTrace trace = load_or_generate(t, c.seed);
  const aoi::AgeVector ages = initial_ages(init, trace.num_users());
  const aoi::OptResult r =
      brute ? aoi::brute_force_opt(trace, ages, c.budget ? c.budget : aoi::kDefaultBruteForceBudget)
            : aoi::opt_exact(trace, ages, opt_options(c));
  std::ostringstream os;
  aoi::write_schedule(os, r.schedule);
  Output out(c, sub);
  out.write("opt_schedule.txt", os.str());
  out.sidecar({{"cost", r.cost}, {"aoi_avg", ratio_json(aoi::average_aoi(r.trace))}});
  if (!out.to_files()) std::cout << "cost " << r.cost << "\n";
  return kOk;
}

int cmd_analyze(const CLI::App* sub, const Common& c, const TraceArgs& t,
                const std::string& policy_name, const std::string& init) {
  const aoi::ChannelTrace trace = load_or_generate(t, c.seed);
  const aoi::PolicyKind kind = aoi::parse_policy_kind(policy_name);
  const aoi::RatioReport report =
      aoi::ratio_report(trace, kind, initial_ages(init, trace.num_users()), opt_options(c));
  Output out(c, sub);
  out.write("report.json", aoi::to_json(report) + "\n");
  out.sidecar({{"ratio", ratio_json(report.ratio)}, {"violations", report.violations.size()}});
  for (const auto& n : report.notes) std::cerr << "note: " << n << "\n";
  if (!report.violations.empty()) {
    std::cerr << violations_text(report.violations);
    return kViolation;
  }
  return kOk;
}

int cmd_sweep(const CLI::App* sub, const Common& c, const std::string& deltas,
              std::size_t periods, bool three) {
  const auto list = parse_size_list(deltas);
  const aoi::SweepResult r = three
      ? aoi::run_ratio_sweep_3user(list, periods, opt_options(c), c.threads)
      : aoi::run_ratio_sweep_2user(list, periods, opt_options(c), c.threads);
  std::ostringstream csv;
  aoi::write_sweep_csv(csv, r.rows);
  Output out(c, sub);
  out.write(sub->get_name() + ".csv", csv.str());
  json extra;
  extra["rows"] = r.rows.size();
  if (r.error) extra["error"] = *r.error;
  out.sidecar(extra);

  const aoi::Ratio bound = three ? aoi::Ratio(8, 3) : aoi::Ratio(2, 1);
  for (const auto& row : r.rows)
    if (row.ratio > bound) {
      std::cerr << "ratio " << row.ratio.str() << " at delta " << row.delta << " exceeds "
                << bound.str() << "\n";
      return kViolation;
    }
  if (r.error) {
    std::cerr << "partial sweep: " << *r.error << "\n";
    return kBudget;
  }
  return kOk;
}

int cmd_stochastic(const CLI::App* sub, const Common& c, const std::string& ps,
                   std::size_t users, std::size_t horizon, std::size_t seeds) {
  if (seeds == 0) throw aoi::ParameterError("--seeds must be >= 1");
  std::vector<std::uint64_t> seed_list;
  for (std::size_t k = 0; k < seeds; ++k) seed_list.push_back(c.seed + k);
  const auto r =
      aoi::run_stochastic_compare(parse_double_list(ps), users, horizon, seed_list, c.threads);
  std::ostringstream rows, summary;
  aoi::write_stochastic_csv(rows, r);
  aoi::write_stochastic_summary_csv(summary, r);
  Output out(c, sub);
  out.write("stochastic.csv", rows.str());
  if (out.to_files())
    out.write("stochastic_summary.csv", summary.str());
  else
    std::cout << "\n" << summary.str();
  out.sidecar();
  return kOk;
}

struct SearchArgs {
  std::string method = "exhaustive";
  std::size_t users = 2;
  std::size_t horizon = 8;
  std::uint64_t sample = 0;
  std::size_t iterations = 1000;
  std::size_t restarts = 4;
  std::string init;
};

int cmd_search(const CLI::App* sub, const Common& c, const SearchArgs& a) {
  const aoi::AgeVector ages = initial_ages(a.init, a.users);
  aoi::SearchResult r;
  if (a.method == "exhaustive") {
    aoi::ExhaustiveOptions o;
    if (c.budget) o.sequence_budget = c.budget;
    o.sample = a.sample;
    o.sample_seed = c.seed;
    o.threads = c.threads;
    r = aoi::exhaustive_search(a.users, a.horizon, ages, o);
  } else {
    aoi::LocalSearchOptions o;
    o.seed = c.seed;
    o.iterations = a.iterations;
    o.random_restarts = a.restarts;
    if (c.budget) o.opt.node_budget = c.budget;
    r = aoi::local_search(a.users, a.horizon, ages, o);
  }

  std::ostringstream trace_text;
  aoi::write_trace(trace_text, r.argmax_trace);
  Output out(c, sub);
  json doc;
  doc["method"] = a.method;
  doc["num_users"] = a.users;
  doc["horizon"] = a.horizon;
  doc["best_ratio"] = ratio_json(r.best_ratio);
  doc["cost_ma_csit"] = r.cost_ma_csit;
  doc["cost_opt"] = r.cost_opt;
  doc["sequences_examined"] = r.sequences_examined;
  doc["sampled"] = r.sampled;
  doc["argmax_trace"] = "argmax_trace.txt";
  if (out.to_files()) {
    out.write("argmax_trace.txt", trace_text.str());
    out.write("search_result.json", doc.dump(2) + "\n");
    out.sidecar();
  } else {
    std::cout << doc.dump(2) << "\n" << trace_text.str();
  }

  // The ratio bounds are stated for all-ones initial ages only.
  const bool ones = a.init.empty() || ages == aoi::AgeVector::ones(a.users);
  if (ones && ((a.users == 2 && r.best_ratio > aoi::Ratio(2, 1)) ||
               (a.users == 3 && r.best_ratio > aoi::Ratio(8, 3)))) {
    std::cerr << "best ratio " << r.best_ratio.str() << " exceeds the proven bound\n";
    return kViolation;
  }
  return kOk;
}

int cmd_verify(const CLI::App* sub, const Common& c, aoi::InvariantSuiteConfig cfg) {
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  cfg.opt = opt_options(c);
  const auto report = aoi::run_invariant_suite(cfg);

  json doc;
  doc["passed"] = report.passed();
  doc["cases_run"] = report.cases_run;
  doc["intervals_checked"] = report.intervals_checked;
  doc["max_ratio_2user"] = ratio_json(report.max_ratio_2user);
  doc["max_ratio_3user"] = ratio_json(report.max_ratio_3user);
  json failures = json::array();
  for (const auto& f : report.failures) {
    json item;
    item["case"] = f.case_name;
    std::ostringstream t;
    aoi::write_trace(t, f.trace);
    item["trace"] = t.str();
    json vs = json::array();
    for (const auto& v : f.violations)
      vs.push_back({{"check", v.check}, {"interval", v.interval}, {"slot", v.slot},
                    {"detail", v.detail}});
    item["violations"] = vs;
    failures.push_back(item);
  }
  doc["failures"] = failures;
  doc["notes"] = report.notes;

  Output out(c, sub);
  out.write("verify_report.json", doc.dump(2) + "\n");
  out.sidecar({{"passed", report.passed()}});
  for (const auto& f : report.failures) {
    std::cerr << "FAIL " << f.case_name << "\n" << violations_text(f.violations);
    if (out.to_files()) {
      std::ostringstream t;
      aoi::write_trace(t, f.trace);
      out.write("failure_" + f.case_name + ".txt", t.str());
    }
  }
  std::cerr << (report.passed() ? "PASS" : "FAIL") << ": " << report.cases_run << " cases, "
            << report.intervals_checked << " intervals\n";
  return report.passed() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age-of-Information scheduling toolkit", aoi::kToolName};
  app.set_version_flag("--version", std::string(aoi::tool_version()));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common common;
  TraceArgs targs;
  std::string policy = "ma-csit";
  std::string init;

  auto* gen = app.add_subcommand("gen", "Generate a channel trace");
  add_common(gen, common);
  add_trace_args(gen, targs);

  auto* sim = app.add_subcommand("simulate", "Run a policy on a channel trace");
  add_common(sim, common);
  add_trace_args(sim, targs);
  sim->add_option("--policy", policy, "ma-csit or max-age")->capture_default_str();
  sim->add_option("--init", init, "Comma-separated initial ages (default all ones)");

  bool brute = false;
  auto* opt = app.add_subcommand("opt", "Offline optimal schedule");
  add_common(opt, common);
  add_trace_args(opt, targs);
  opt->add_option("--init", init, "Comma-separated initial ages (default all ones)");
  opt->add_flag("--brute-force", brute, "Enumerate every schedule instead of the DP");

  auto* analyze = app.add_subcommand("analyze", "Ratio report with interval checks");
  add_common(analyze, common);
  add_trace_args(analyze, targs);
  analyze->add_option("--policy", policy, "ma-csit or max-age")->capture_default_str();
  analyze->add_option("--init", init, "Comma-separated initial ages (default all ones)");

  std::string deltas2 = "8,16,32,64,128", deltas3 = "24,48,96,192,384";
  std::size_t periods2 = 20, periods3 = 4;
  auto* sweep2 = app.add_subcommand("sweep2", "Ratio sweep on the two-user construction");
  add_common(sweep2, common);
  sweep2->add_option("--deltas", deltas2, "Comma-separated even deltas >= 4")
      ->capture_default_str();
  sweep2->add_option("--periods", periods2, "Periods per trace")->capture_default_str();

  auto* sweep3 = app.add_subcommand("sweep3", "Ratio sweep on the three-user construction");
  add_common(sweep3, common);
  sweep3->add_option("--deltas", deltas3, "Comma-separated multiples of 6, >= 24")
      ->capture_default_str();
  sweep3->add_option("--periods", periods3, "Periods per trace")->capture_default_str();

  std::string ps = "0.1,0.3,0.5";
  std::size_t st_users = 3, st_horizon = 10000, st_seeds = 50;
  auto* stoch = app.add_subcommand("stochastic", "Max-Age vs MA-CSIT on i.i.d. channels");
  add_common(stoch, common);
  stoch->add_option("--ps", ps, "Comma-separated Good probabilities")->capture_default_str();
  stoch->add_option("--users", st_users, "Users")->capture_default_str();
  stoch->add_option("--horizon", st_horizon, "Slots")->capture_default_str();
  stoch->add_option("--seeds", st_seeds, "Seeds per p: seed, seed+1, ...")->capture_default_str();

  SearchArgs sargs;
  auto* search = app.add_subcommand("search", "Worst-case channel trace search");
  add_common(search, common);
  search->add_option("--method", sargs.method, "exhaustive or local")
      ->check(CLI::IsMember({"exhaustive", "local"}))
      ->capture_default_str();
  search->add_option("--users", sargs.users, "Users")->capture_default_str();
  search->add_option("--horizon", sargs.horizon, "Slots")->capture_default_str();
  search->add_option("--sample", sargs.sample,
                     "Sequences to sample when the exhaustive budget is exceeded")
      ->capture_default_str();
  search->add_option("--iterations", sargs.iterations, "Local search flips per restart")
      ->capture_default_str();
  search->add_option("--restarts", sargs.restarts, "Random restarts for local search")
      ->capture_default_str();
  search->add_option("--init", sargs.init, "Comma-separated initial ages (default all ones)");

  aoi::InvariantSuiteConfig vcfg;
  bool no_constructions = false;
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  add_common(verify, common);
  verify->add_option("--n2-traces", vcfg.n2_traces, "Random two-user traces")
      ->capture_default_str();
  verify->add_option("--n2-horizon", vcfg.n2_horizon, "Two-user horizon")->capture_default_str();
  verify->add_option("--n3-traces", vcfg.n3_traces, "Random three-user traces")
      ->capture_default_str();
  verify->add_option("--n3-horizon", vcfg.n3_horizon, "Three-user horizon")
      ->capture_default_str();
  verify->add_option("--p", vcfg.p, "Good probability")->capture_default_str();
  verify->add_flag("--no-constructions", no_constructions, "Skip the adversarial constructions");
  verify->add_flag("--corrupt-fixture", vcfg.corrupt_fixture,
                   "Add a deliberately corrupted case (the suite must fail)");

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const aoi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParamError;
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParamError;
  }

  try {
    if (*gen) return cmd_gen(gen, common, targs);
    if (*sim) return cmd_simulate(sim, common, targs, policy, init);
    if (*opt) return cmd_opt(opt, common, targs, init, brute);
    if (*analyze) return cmd_analyze(analyze, common, targs, policy, init);
    if (*sweep2) return cmd_sweep(sweep2, common, deltas2, periods2, false);
    if (*sweep3) return cmd_sweep(sweep3, common, deltas3, periods3, true);
    if (*stoch) return cmd_stochastic(stoch, common, ps, st_users, st_horizon, st_seeds);
    if (*search) return cmd_search(search, common, sargs);
    if (*verify) {
      vcfg.include_constructions = !no_constructions;
      return cmd_verify(verify, common, vcfg);
    }
  } catch (const aoi::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const aoi::IntegrityError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kViolation;
  } catch (const aoi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParamError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParamError;
  }
  return kParamError;
}

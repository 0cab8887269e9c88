// tcpkit: command-line front end for tensor complementarity workflows.
// Subcommands: classify, solve, pareto, beta, bounds, feasible, gamma,
// pm-check. Every run emits a JSON report wrapping {config, report,
// timing_ms}; replays with the same config and seed are byte-identical
// apart from timing_ms.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tcpkit/bounds.hpp"
#include "tcpkit/classify.hpp"
#include "tcpkit/io.hpp"
#include "tcpkit/parallel.hpp"
#include "tcpkit/pareto.hpp"
#include "tcpkit/tcp.hpp"
#include "tcpkit/tensor.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

struct CommonOpts {
  bool json = false;
  bool quiet = false;
  std::string output;
  int threads = 0;
  double grid = 1.0 / 32.0;
  int starts = 64;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, int default_starts) {
  o.starts = default_starts;
  cmd->add_flag("--json", o.json, "print the JSON report to stdout");
  cmd->add_flag("--quiet", o.quiet, "suppress the human-readable summary");
  cmd->add_option("--output", o.output, "write the JSON report to a file");
  cmd->add_option("--threads", o.threads, "worker cap (default: TCPKIT_THREADS or hardware)");
  cmd->add_option("--grid", o.grid, "grid resolution per axis");
  cmd->add_option("--starts", o.starts, "multistart count");
  cmd->add_option("--tol", o.tol, "search/verdict tolerance");
  cmd->add_option("--seed", o.seed, "RNG seed");
}

tcpkit::SearchBudget budget_of(const CommonOpts& o) {
  tcpkit::SearchBudget b;
  b.grid_resolution = o.grid;
  b.multistarts = o.starts;
  b.tolerance = o.tol;
  b.seed = o.seed;
  return b;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

tcpkit::Vec parse_csv_vector(const std::string& text) {
  tcpkit::Vec v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      const double value = std::stod(item, &pos);
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument("");
      v.push_back(value);
    } catch (...) {
      throw std::invalid_argument("bad vector literal: '" + item + "'");
    }
  }
  if (v.empty()) throw std::invalid_argument("empty vector literal");
  return v;
}

ordered_json config_json(const std::string& command, const CommonOpts& o,
                         std::initializer_list<std::pair<const char*, ordered_json>> extra) {
  ordered_json cfg{{"command", command}};
  for (const auto& [k, v] : extra) cfg[k] = v;
  cfg["budget"] = ordered_json::parse(tcpkit::to_json(budget_of(o)));
  cfg["threads"] = tcpkit::worker_cap();
  cfg["json"] = o.json;
  cfg["quiet"] = o.quiet;
  cfg["output"] = o.output;
  return cfg;
}

int emit(const CommonOpts& o, const ordered_json& config, const ordered_json& report,
         double ms, const std::string& human, int exit_code) {
  ordered_json wrapper{{"config", config}, {"report", report}, {"timing_ms", ms}};
  const std::string text = wrapper.dump(2);
  if (!o.output.empty()) {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + o.output);
    out << text << "\n";
  }
  if (o.json) {
    std::cout << text << "\n";
  } else if (!o.quiet) {
    std::cout << human << "\n";
  }
  return exit_code;
}

ordered_json as_json(const std::string& serialized) { return ordered_json::parse(serialized); }

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

int run_classify(const CommonOpts& o, const std::string& tensor_path, const std::string& cls_name) {
  const tcpkit::Tensor a = tcpkit::parse_tensor(slurp(tensor_path));
  const tcpkit::SearchBudget budget = budget_of(o);
  const ordered_json cfg = config_json("classify", o, {{"tensor", tensor_path}, {"class", cls_name}});

  std::vector<tcpkit::TensorClass> classes;
  if (cls_name == "all") {
    classes = {tcpkit::TensorClass::SemiPositive,  tcpkit::TensorClass::StrictlySemiPositive,
               tcpkit::TensorClass::P,             tcpkit::TensorClass::P0,
               tcpkit::TensorClass::Copositive,    tcpkit::TensorClass::StrictlyCopositive,
               tcpkit::TensorClass::S,             tcpkit::TensorClass::S0,
               tcpkit::TensorClass::R0};
  } else {
    const auto cls = tcpkit::class_from_string(cls_name);
    if (!cls) throw std::invalid_argument("unknown class: " + cls_name);
    classes = {*cls};
  }

  Timer timer;
  std::vector<tcpkit::ClassificationReport> reports;
  reports.reserve(classes.size());
  for (const auto cls : classes) reports.push_back(tcpkit::run_class_check(a, cls, budget));
  const double ms = timer.ms();

  ordered_json rj;
  std::ostringstream human;
  bool any_violated = false;
  bool any_not_holds = false;
  for (const auto& r : reports) {
    any_violated = any_violated || r.verdict == tcpkit::Verdict::Violated;
    any_not_holds = any_not_holds || r.verdict != tcpkit::Verdict::Holds;
    human << tcpkit::to_string(r.class_name) << ": " << tcpkit::to_string(r.verdict);
    if (r.witness) human << "  (witness " << tcpkit::serialize_vector(*r.witness) << ")";
    human << "\n";
  }
  if (reports.size() == 1) {
    rj = as_json(tcpkit::to_json(reports[0]));
  } else {
    rj = ordered_json::array();
    for (const auto& r : reports) rj.push_back(as_json(tcpkit::to_json(r)));
  }
  std::string text = human.str();
  if (!text.empty()) text.pop_back();
  const int code = reports.size() == 1 ? (reports[0].verdict == tcpkit::Verdict::Holds ? 0 : 1)
                                       : (any_violated ? 1 : 0);
  return emit(o, cfg, rj, ms, text, code);
}

int run_solve(const CommonOpts& o, const std::string& instance_path, const std::string& method,
              int nmax) {
  const tcpkit::TCPInstance inst = tcpkit::parse_instance(slurp(instance_path));
  const ordered_json cfg = config_json(
      "solve", o, {{"instance", instance_path}, {"method", method}, {"nmax", nmax}});
  Timer timer;
  if (method == "enumerate") {
    tcpkit::EnumerateOptions opts;
    opts.max_dim = nmax;
    opts.budget = budget_of(o);
    const auto solutions = tcpkit::solve_enumerate(inst, opts);
    const double ms = timer.ms();
    std::ostringstream human;
    human << solutions.size() << " solution(s)";
    for (const auto& s : solutions) human << "\n  x = " << tcpkit::serialize_vector(s.x);
    return emit(o, cfg, as_json(tcpkit::to_json(solutions)), ms, human.str(),
                solutions.empty() ? 1 : 0);
  }
  if (method != "merit") throw std::invalid_argument("unknown method: " + method);
  const auto res = tcpkit::solve_merit(inst, budget_of(o));
  const double ms = timer.ms();
  std::ostringstream human;
  if (res.solution) {
    human << "solution x = " << tcpkit::serialize_vector(res.solution->x);
  } else {
    human << "not found (best merit " << fmt(res.best_merit) << ")";
  }
  return emit(o, cfg, as_json(tcpkit::to_json(res)), ms, human.str(), res.solution ? 0 : 1);
}

int run_pareto(const CommonOpts& o, const std::string& tensor_path, const std::string& kind) {
  const tcpkit::Tensor a = tcpkit::parse_tensor(slurp(tensor_path));
  if (kind != "h" && kind != "z") throw std::invalid_argument("kind must be h or z");
  const ordered_json cfg = config_json("pareto", o, {{"tensor", tensor_path}, {"kind", kind}});
  if (!a.is_symmetric() && !o.quiet) {
    std::cerr << "note: input is not symmetric; reporting the constrained minimum only\n";
  }
  Timer timer;
  const auto pair =
      kind == "h" ? tcpkit::lambda_min(a, budget_of(o)) : tcpkit::mu_min(a, budget_of(o));
  const double ms = timer.ms();
  std::ostringstream human;
  human << (kind == "h" ? "lambda = " : "mu = ") << fmt(pair.value)
        << " at x = " << tcpkit::serialize_vector(pair.vector);
  return emit(o, cfg, as_json(tcpkit::to_json(pair)), ms, human.str(), 0);
}

int run_beta(const CommonOpts& o, const std::string& tensor_path) {
  const tcpkit::Tensor a = tcpkit::parse_tensor(slurp(tensor_path));
  const ordered_json cfg = config_json("beta", o, {{"tensor", tensor_path}});
  Timer timer;
  const auto res = tcpkit::beta(a, budget_of(o));
  const double ms = timer.ms();
  std::ostringstream human;
  human << "beta = " << fmt(res.value) << " at x = " << tcpkit::serialize_vector(res.argmin);
  return emit(o, cfg, as_json(tcpkit::to_json(res)), ms, human.str(), 0);
}

int run_bounds(const CommonOpts& o, const std::string& instance_path, const std::string& x_csv,
               const std::string& solutions_path, std::optional<double> lambda_val,
               std::optional<double> mu_val, std::optional<double> beta_val, bool compute) {
  const tcpkit::TCPInstance inst = tcpkit::parse_instance(slurp(instance_path));
  std::vector<tcpkit::Vec> xs;
  if (!x_csv.empty()) xs.push_back(parse_csv_vector(x_csv));
  if (!solutions_path.empty()) {
    for (auto& v : tcpkit::parse_solution_vectors(slurp(solutions_path))) xs.push_back(std::move(v));
  }
  if (xs.empty()) throw std::invalid_argument("bounds: provide --x and/or --solutions");

  const ordered_json cfg = config_json(
      "bounds", o,
      {{"instance", instance_path},
       {"x", x_csv},
       {"solutions", solutions_path},
       {"lambda", lambda_val ? ordered_json(*lambda_val) : ordered_json(nullptr)},
       {"mu", mu_val ? ordered_json(*mu_val) : ordered_json(nullptr)},
       {"beta", beta_val ? ordered_json(*beta_val) : ordered_json(nullptr)},
       {"compute", compute}});

  Timer timer;
  if (compute) {
    const tcpkit::SearchBudget budget = budget_of(o);
    if (!lambda_val) lambda_val = tcpkit::lambda_min(inst.A, budget).value;
    if (!mu_val) mu_val = tcpkit::mu_min(inst.A, budget).value;
    if (!beta_val) beta_val = tcpkit::beta(inst.A, budget).value;
  }
  if (!lambda_val && !mu_val && !beta_val) {
    throw std::invalid_argument("bounds: provide --lambda/--mu/--beta or --compute");
  }

  ordered_json rj = ordered_json::array();
  std::ostringstream human;
  bool all_satisfied = true;
  for (const auto& x : xs) {
    ordered_json per{{"x", x}, {"bounds", ordered_json::array()}};
    for (int which = 0; which < 3; ++which) {
      std::optional<double> c = which == 0 ? lambda_val : which == 1 ? mu_val : beta_val;
      if (!c) continue;
      const tcpkit::BoundReport r = which == 0   ? tcpkit::bound_m_norm(inst, x, *c)
                                    : which == 1 ? tcpkit::bound_2_norm(inst, x, *c)
                                                 : tcpkit::bound_inf_norm(inst, x, *c);
      all_satisfied = all_satisfied && r.satisfied;
      per["bounds"].push_back(as_json(tcpkit::to_json(r)));
      human << tcpkit::to_string(r.kind) << " @ x=" << tcpkit::serialize_vector(x) << ": lhs "
            << fmt(r.lhs) << " <= rhs " << fmt(r.rhs) << (r.satisfied ? "  ok" : "  VIOLATED")
            << "\n";
    }
    rj.push_back(std::move(per));
  }
  const double ms = timer.ms();
  std::string text = human.str();
  if (!text.empty()) text.pop_back();
  return emit(o, cfg, rj, ms, text, all_satisfied ? 0 : 1);
}

int run_feasible(const CommonOpts& o, const std::string& instance_path,
                 const std::string& witness_csv, const std::string& witness_file) {
  const tcpkit::TCPInstance inst = tcpkit::parse_instance(slurp(instance_path));
  const ordered_json cfg = config_json(
      "feasible", o,
      {{"instance", instance_path}, {"witness", witness_csv}, {"witness_file", witness_file}});
  Timer timer;
  tcpkit::Vec witness;
  ordered_json search_report;
  if (!witness_csv.empty()) {
    witness = parse_csv_vector(witness_csv);
  } else if (!witness_file.empty()) {
    witness = tcpkit::parse_vector(slurp(witness_file));
  } else {
    const auto report = tcpkit::find_s_witness(inst.A, budget_of(o));
    search_report = as_json(tcpkit::to_json(report));
    if (report.verdict != tcpkit::Verdict::Holds || !report.witness) {
      const double ms = timer.ms();
      return emit(o, cfg, ordered_json{{"witness_search", search_report}, {"x", nullptr}}, ms,
                  "no positive witness found at this budget", 1);
    }
    witness = *report.witness;
  }
  const tcpkit::Vec x = tcpkit::find_feasible(inst, witness);
  tcpkit::Vec w = inst.A.apply(x);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += inst.q[i];
  const double ms = timer.ms();
  ordered_json rj{{"witness", witness}, {"x", x}, {"w", w}};
  if (!search_report.is_null()) rj["witness_search"] = search_report;
  std::ostringstream human;
  human << "feasible x = " << tcpkit::serialize_vector(x);
  return emit(o, cfg, rj, ms, human.str(), 0);
}

int run_gamma(const CommonOpts& o, const std::string& instance_path, double s, double t) {
  const tcpkit::TCPInstance inst = tcpkit::parse_instance(slurp(instance_path));
  const ordered_json cfg =
      config_json("gamma", o, {{"instance", instance_path}, {"s", s}, {"t", t}});
  Timer timer;
  const auto probe = tcpkit::gamma_probe(inst.A, inst.q, s, t, budget_of(o));
  const double ms = timer.ms();
  std::ostringstream human;
  human << "verdict: " << tcpkit::to_string(probe.verdict) << " (" << probe.members_found.size()
        << " member(s) found)";
  return emit(o, cfg, as_json(tcpkit::to_json(probe)), ms, human.str(),
              probe.verdict == tcpkit::GammaVerdict::LikelyBounded ? 0 : 1);
}

int run_pm_check(const CommonOpts& o, const std::string& instance_path, const std::string& x_csv,
                 const std::string& y_csv) {
  const tcpkit::TCPInstance inst = tcpkit::parse_instance(slurp(instance_path));
  const tcpkit::Vec x = parse_csv_vector(x_csv);
  const tcpkit::Vec y = parse_csv_vector(y_csv);
  const ordered_json cfg =
      config_json("pm-check", o, {{"instance", instance_path}, {"x", x_csv}, {"y", y_csv}});
  Timer timer;
  const auto check = tcpkit::check_pseudomonotone_violation(inst, x, y);
  const double ms = timer.ms();
  std::ostringstream human;
  human << "lhs = " << fmt(check.lhs) << ", rhs = " << fmt(check.rhs)
        << (check.violated ? "  -> pseudo-monotonicity violated" : "  -> no violation here");
  return emit(o, cfg, as_json(tcpkit::to_json(check)), ms, human.str(), 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensor complementarity toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tcpkit 0.1.0");

  CommonOpts copts;

  auto* classify = app.add_subcommand("classify", "class membership with witnesses");
  std::string tensor_path;
  std::string cls_name;
  classify->add_option("--tensor", tensor_path, "tensor JSON file")->required();
  classify->add_option("--class", cls_name, "class name or 'all'")->required();
  add_common(classify, copts, 64);

  auto* solve = app.add_subcommand("solve", "solve the complementarity problem");
  std::string instance_path;
  std::string method = "enumerate";
  int nmax = 4;
  solve->add_option("--instance", instance_path, "instance JSON file")->required();
  solve->add_option("--method", method, "enumerate | merit");
  solve->add_option("--nmax", nmax, "max dimension for support enumeration");
  add_common(solve, copts, 64);

  auto* pareto = app.add_subcommand("pareto", "extremal Pareto eigenvalue");
  std::string pareto_tensor;
  std::string kind = "h";
  pareto->add_option("--tensor", pareto_tensor, "tensor JSON file")->required();
  pareto->add_option("--kind", kind, "h | z");
  add_common(pareto, copts, 128);

  auto* betacmd = app.add_subcommand("beta", "minimax constant over the nonnegative inf-sphere");
  std::string beta_tensor;
  betacmd->add_option("--tensor", beta_tensor, "tensor JSON file")->required();
  add_common(betacmd, copts, 64);

  auto* bounds = app.add_subcommand("bounds", "evaluate solution norm bounds");
  std::string bounds_instance;
  std::string bounds_x;
  std::string bounds_solutions;
  double lambda_in = 0, mu_in = 0, beta_in = 0;
  bool compute = false;
  bounds->add_option("--instance", bounds_instance, "instance JSON file")->required();
  bounds->add_option("--x", bounds_x, "candidate solution, comma separated");
  bounds->add_option("--solutions", bounds_solutions, "solutions JSON file (solve output)");
  auto* lopt = bounds->add_option("--lambda", lambda_in, "m-norm constant");
  auto* mopt = bounds->add_option("--mu", mu_in, "2-norm constant");
  auto* bopt = bounds->add_option("--beta", beta_in, "inf-norm constant");
  bounds->add_flag("--compute", compute, "compute missing constants at this budget");
  add_common(bounds, copts, 128);

  auto* feasible = app.add_subcommand("feasible", "scale a positive witness to feasibility");
  std::string feas_instance;
  std::string feas_witness;
  std::string feas_witness_file;
  feasible->add_option("--instance", feas_instance, "instance JSON file")->required();
  feasible->add_option("--witness", feas_witness, "positive witness, comma separated");
  feasible->add_option("--witness-file", feas_witness_file, "vector JSON file");
  add_common(feasible, copts, 64);

  auto* gamma = app.add_subcommand("gamma", "probe level-set boundedness");
  std::string gamma_instance;
  double s_val = 0.0, t_val = 1.0;
  gamma->add_option("--instance", gamma_instance, "instance JSON file")->required();
  gamma->add_option("--s", s_val, "level");
  gamma->add_option("--t", t_val, "positive weight");
  add_common(gamma, copts, 64);

  auto* pm = app.add_subcommand("pm-check", "pseudo-monotonicity probe at two points");
  std::string pm_instance, pm_x, pm_y;
  pm->add_option("--instance", pm_instance, "instance JSON file")->required();
  pm->add_option("--x", pm_x, "first point, comma separated")->required();
  pm->add_option("--y", pm_y, "second point, comma separated")->required();
  add_common(pm, copts, 64);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
    app.exit(e);
    return 2;
  }

  if (copts.threads > 0) tcpkit::set_worker_cap(copts.threads);

  try {
    if (classify->parsed()) return run_classify(copts, tensor_path, cls_name);
    if (solve->parsed()) return run_solve(copts, instance_path, method, nmax);
    if (pareto->parsed()) return run_pareto(copts, pareto_tensor, kind);
    if (betacmd->parsed()) return run_beta(copts, beta_tensor);
    if (bounds->parsed()) {
      return run_bounds(copts, bounds_instance, bounds_x, bounds_solutions,
                        lopt->count() ? std::optional<double>(lambda_in) : std::nullopt,
                        mopt->count() ? std::optional<double>(mu_in) : std::nullopt,
                        bopt->count() ? std::optional<double>(beta_in) : std::nullopt, compute);
    }
    if (feasible->parsed()) return run_feasible(copts, feas_instance, feas_witness, feas_witness_file);
    if (gamma->parsed()) return run_gamma(copts, gamma_instance, s_val, t_val);
    if (pm->parsed()) return run_pm_check(copts, pm_instance, pm_x, pm_y);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

#include "tcpkit/tcp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "search.hpp"
#include "tcp_internal.hpp"
#include "tcpkit/parallel.hpp"

namespace tcpkit {

namespace {

constexpr double kDedupRadius = 1e-6;

Vec embed_support(const std::vector<int>& support, const Vec& u, int n) {
  Vec x(static_cast<std::size_t>(n), 0.0);
  for (std::size_t j = 0; j < support.size(); ++j) {
    x[static_cast<std::size_t>(support[j])] = u[j];
  }
  return x;
}

double inf_dist(const Vec& a, const Vec& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// diagonal guess x_i = ((-q_i)/a_{ii..i})^{1/(m-1)}: exact for diagonal
// tensors, a strong start for diagonally dominant ones
Vec diagonal_start(const TCPInstance& inst, const std::vector<int>& support) {
  const int m = inst.A.order();
  Vec u(support.size(), 1.0);
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (std::size_t j = 0; j < support.size(); ++j) {
    const int i = support[j];
    std::fill(idx.begin(), idx.end(), i);
    const double d = inst.A.entry(std::span<const int>(idx));
    const double qi = inst.q[static_cast<std::size_t>(i)];
    if (d > 1e-12 && qi < 0.0) {
      u[j] = std::pow(-qi / d, 1.0 / static_cast<double>(m - 1));
    }
  }
  return u;
}

}  // namespace

TCPInstance::TCPInstance(Tensor tensor, Vec offset) : A(std::move(tensor)), q(std::move(offset)) {
  if (q.size() != static_cast<std::size_t>(A.dim())) {
    throw std::invalid_argument("offset length does not match tensor dimension");
  }
  if (!all_finite(q)) throw std::invalid_argument("offset entries must be finite");
}

TCPSolution verify_solution(const TCPInstance& inst, const Vec& x, double tol, SolveMethod method) {
  if (x.size() != static_cast<std::size_t>(inst.dim())) {
    throw std::invalid_argument("candidate length does not match instance dimension");
  }
  TCPSolution s;
  s.x = x;
  s.w = inst.A.apply(x);
  for (std::size_t i = 0; i < s.w.size(); ++i) s.w[i] += inst.q[i];
  double min_x = std::numeric_limits<double>::infinity();
  double min_w = std::numeric_limits<double>::infinity();
  double worst_prod = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    min_x = std::min(min_x, s.x[i]);
    min_w = std::min(min_w, s.w[i]);
    worst_prod = std::max(worst_prod, std::abs(s.x[i] * s.w[i]));
  }
  s.residuals.x_neg = std::max(0.0, -min_x);
  s.residuals.w_neg = std::max(0.0, -min_w);
  s.residuals.complementarity = worst_prod;
  s.method = method;
  s.verified = s.residuals.x_neg <= tol && s.residuals.w_neg <= tol &&
               s.residuals.complementarity <= tol;
  return s;
}

std::vector<TCPSolution> solve_enumerate(const TCPInstance& inst, const EnumerateOptions& opts) {
  const int n = inst.dim();
  if (n > opts.max_dim) {
    throw std::invalid_argument("dimension too large for support enumeration");
  }
  const SearchBudget& budget = opts.budget;
  const double tol = budget.tolerance;
  const double q_scale = 1.0 + inf_norm(inst.q);
  const int starts_per_support = std::max(8, budget.multistarts);

  struct Task {
    unsigned mask;
    int start;
  };
  std::vector<Task> tasks;
  const unsigned mask_count = 1u << n;
  for (unsigned mask = 0; mask < mask_count; ++mask) {
    const int count = mask == 0 ? 1 : starts_per_support;
    for (int s = 0; s < count; ++s) tasks.push_back({mask, s});
  }

  std::vector<std::optional<Vec>> roots(tasks.size());
  detail::parallel_for(tasks.size(), [&](std::size_t ti) {
    const unsigned mask = tasks[ti].mask;
    const int start_id = tasks[ti].start;
    if (mask == 0) {
      // empty support: x = 0 solves iff q is (tolerantly) nonnegative
      double min_q = std::numeric_limits<double>::infinity();
      for (double v : inst.q) min_q = std::min(min_q, v);
      if (min_q >= -tol) roots[ti] = Vec(static_cast<std::size_t>(n), 0.0);
      return;
    }
    std::vector<int> support;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) support.push_back(i);
    }
    const int k = static_cast<int>(support.size());

    auto residual = [&](const Vec& u) {
      const Vec x = embed_support(support, u, n);
      const Vec w = inst.A.apply(x);
      Vec out(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) {
        out[static_cast<std::size_t>(j)] =
            inst.q[static_cast<std::size_t>(support[static_cast<std::size_t>(j)])] +
            w[static_cast<std::size_t>(support[static_cast<std::size_t>(j)])];
      }
      return out;
    };

    Vec u0(static_cast<std::size_t>(k), 1.0);
    if (start_id == 0) {
      u0 = diagonal_start(inst, support);
    } else if (start_id == 1) {
      std::fill(u0.begin(), u0.end(), 0.5);
    } else {
      detail::Rng rng(detail::mix_seed(budget.seed, (std::uint64_t(tasks[ti].mask) << 32) + start_id));
      const double radius =
          1.0 + std::pow(inf_norm(inst.q), 1.0 / static_cast<double>(inst.A.order() - 1));
      for (double& c : u0) c = rng.uniform(0.0, radius);
    }

    detail::NewtonOptions nopts;
    nopts.f_tol = 1e-11 * q_scale;
    const auto root = detail::newton_root(residual, u0, nopts);
    if (!root) return;

    // keep roots that stay in the orthant and leave the off-support slack
    // nonnegative
    for (double c : *root) {
      if (c < -tol) return;
    }
    const Vec x = embed_support(support, *root, n);
    const Vec w = inst.A.apply(x);
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i)) && inst.q[static_cast<std::size_t>(i)] + w[static_cast<std::size_t>(i)] < -tol) {
        return;
      }
    }
    roots[ti] = x;
  });

  std::vector<TCPSolution> out;
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
    if (!roots[ti]) continue;
    const Vec& x = *roots[ti];
    bool dup = false;
    for (const auto& kept : out) {
      if (inf_dist(kept.x, x) <= kDedupRadius) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    out.push_back(verify_solution(inst, x, tol, SolveMethod::Enumerate));
  }
  std::sort(out.begin(), out.end(),
            [](const TCPSolution& a, const TCPSolution& b) { return lex_less(a.x, b.x); });
  return out;
}

namespace {

double merit_value(const TCPInstance& inst, const Vec& x) {
  const Vec w = inst.A.apply(x);
  double theta = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::min(x[i], inst.q[i] + w[i]);
    theta += r * r;
  }
  return theta;
}

}  // namespace

namespace detail {

std::optional<Vec> complementarity_polish(const TCPInstance& inst, const Vec& x, double tol) {
  const int n = inst.dim();
  Vec w = inst.A.apply(x);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += inst.q[i];
  std::vector<int> support;
  for (int i = 0; i < n; ++i) {
    if (x[static_cast<std::size_t>(i)] >= w[static_cast<std::size_t>(i)]) support.push_back(i);
  }
  if (support.empty()) {
    double min_q = std::numeric_limits<double>::infinity();
    for (double v : inst.q) min_q = std::min(min_q, v);
    if (min_q >= -tol) return Vec(static_cast<std::size_t>(n), 0.0);
    return std::nullopt;
  }
  const int k = static_cast<int>(support.size());
  auto residual = [&](const Vec& u) {
    const Vec full = embed_support(support, u, n);
    const Vec aw = inst.A.apply(full);
    Vec out(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      const int i = support[static_cast<std::size_t>(j)];
      out[static_cast<std::size_t>(j)] = inst.q[static_cast<std::size_t>(i)] + aw[static_cast<std::size_t>(i)];
    }
    return out;
  };
  Vec u0(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) u0[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(support[static_cast<std::size_t>(j)])];
  detail::NewtonOptions nopts;
  nopts.f_tol = 1e-12 * (1.0 + inf_norm(inst.q));
  const auto root = detail::newton_root(residual, u0, nopts);
  if (!root) return std::nullopt;
  for (double c : *root) {
    if (c < -tol) return std::nullopt;
  }
  return embed_support(support, *root, n);
}

}  // namespace detail

MeritSolveResult solve_merit(const TCPInstance& inst, const SearchBudget& budget) {
  const int n = inst.dim();
  const double tol = budget.tolerance;
  const double theta_accept = tol * tol;

  std::vector<Vec> starts;
  starts.emplace_back(static_cast<std::size_t>(n), 0.0);
  {
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    starts.push_back(embed_support(all, diagonal_start(inst, all), n));
  }
  starts.emplace_back(static_cast<std::size_t>(n), 1.0);
  const std::size_t random_base = starts.size();
  starts.resize(random_base + static_cast<std::size_t>(std::max(0, budget.multistarts)));
  const double radius =
      1.0 + std::pow(inf_norm(inst.q), 1.0 / static_cast<double>(inst.A.order() - 1));
  for (std::size_t i = random_base; i < starts.size(); ++i) {
    detail::Rng rng(detail::mix_seed(budget.seed, 0x4E217 + i));
    Vec x(static_cast<std::size_t>(n));
    for (double& c : x) c = rng.uniform(0.0, radius);
    starts[i] = std::move(x);
  }

  struct StartOutcome {
    std::optional<Vec> solution;
    double merit = std::numeric_limits<double>::infinity();
    Vec x;
  };
  std::vector<StartOutcome> outcomes(starts.size());
  detail::parallel_for(starts.size(), [&](std::size_t i) {
    detail::Objective f = [&inst](const Vec& x) { return merit_value(inst, x); };
    detail::Projection proj = [](Vec& v) {
      for (double& c : v) c = std::max(c, 0.0);
    };
    detail::DescentOptions dopts;
    dopts.max_iters = 400;
    detail::DescentResult res = detail::projected_descent(f, proj, starts[i], dopts);
    StartOutcome& out = outcomes[i];
    out.merit = res.value;
    out.x = res.x;
    if (auto polished = detail::complementarity_polish(inst, res.x, tol)) {
      const double theta = merit_value(inst, *polished);
      if (theta < out.merit) {
        out.merit = theta;
        out.x = *polished;
      }
    }
    if (out.merit <= theta_accept) {
      TCPSolution sol = verify_solution(inst, out.x, tol, SolveMethod::Merit);
      if (sol.verified) out.solution = out.x;
    }
  });

  MeritSolveResult result;
  result.best_merit = std::numeric_limits<double>::infinity();
  for (const auto& oc : outcomes) {
    if (oc.merit < result.best_merit) {
      result.best_merit = oc.merit;
      result.best_x = oc.x;
    }
  }
  for (const auto& oc : outcomes) {
    if (oc.solution) {
      result.solution = verify_solution(inst, *oc.solution, tol, SolveMethod::Merit);
      break;  // first start wins: replay-stable regardless of thread count
    }
  }
  return result;
}

Vec find_feasible(const TCPInstance& inst, const Vec& s_witness) {
  const int n = inst.dim();
  if (s_witness.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("witness length does not match instance dimension");
  }
  for (double v : s_witness) {
    if (!(v > 0.0)) throw std::invalid_argument("witness must be strictly positive");
  }
  const Vec wy = inst.A.apply(s_witness);
  for (double v : wy) {
    if (!(v > 0.0)) {
      throw std::invalid_argument("invalid witness: A y^{m-1} has a nonpositive component");
    }
  }
  double t = 0.0;
  for (int i = 0; i < n; ++i) {
    t = std::max(t, -inst.q[static_cast<std::size_t>(i)] / wy[static_cast<std::size_t>(i)]);
  }
  if (t <= 0.0) return Vec(static_cast<std::size_t>(n), 0.0);  // q >= 0: the origin is feasible

  const double exponent = 1.0 / static_cast<double>(inst.A.order() - 1);
  const double slack_floor = -1e-10 * (1.0 + inf_norm(inst.q));
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec x(static_cast<std::size_t>(n));
    const double scale = std::pow(t, exponent);
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = scale * s_witness[static_cast<std::size_t>(i)];
    const Vec w = inst.A.apply(x);
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      if (inst.q[static_cast<std::size_t>(i)] + w[static_cast<std::size_t>(i)] < slack_floor) ok = false;
    }
    if (ok) return x;
    t *= 1.0 + 1e-9;  // absorb rounding in the scaling
  }
  throw std::runtime_error("feasibility scaling failed to verify");
}

PseudomonotoneCheck check_pseudomonotone_violation(const TCPInstance& inst, const Vec& x,
                                                   const Vec& y) {
  const std::size_t n = static_cast<std::size_t>(inst.dim());
  if (x.size() != n || y.size() != n) {
    throw std::invalid_argument("vector length does not match instance dimension");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < 0.0 || y[i] < 0.0) {
      throw std::invalid_argument("pseudo-monotonicity probe needs nonnegative vectors");
    }
  }
  Vec fx = inst.A.apply(x);
  Vec fy = inst.A.apply(y);
  for (std::size_t i = 0; i < n; ++i) {
    fx[i] += inst.q[i];
    fy[i] += inst.q[i];
  }
  Vec diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = x[i] - y[i];
  PseudomonotoneCheck c;
  c.lhs = dot(diff, fy);
  c.rhs = dot(diff, fx);
  c.violated = c.lhs >= 0.0 && c.rhs < 0.0;
  return c;
}

std::string to_string(SolveMethod m) {
  return m == SolveMethod::Enumerate ? "enumerate" : "merit";
}

}  // namespace tcpkit

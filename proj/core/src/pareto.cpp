#include "tcpkit/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "search.hpp"
#include "tcpkit/parallel.hpp"

namespace tcpkit {

namespace {

double powi(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

void require_nonzero(const Vec& x) {
  for (double v : x) {
    if (v != 0.0) return;
  }
  throw std::invalid_argument("eigenpair verification needs a nonzero vector");
}

// clip to the nonnegative orthant, then renormalize onto the p-sphere;
// a fully clipped iterate falls back to the uniform direction
void project_nonneg_sphere(Vec& x, double p) {
  double mass = 0.0;
  for (double& v : x) {
    if (v < 0.0) v = 0.0;
    mass += v;
  }
  if (mass <= 0.0) {
    std::fill(x.begin(), x.end(), 1.0);
  }
  const double nrm = norm(x, p);
  for (double& v : x) v /= nrm;
}

struct PgdOptions {
  int max_iters = 800;
  double armijo = 1e-4;
};

// projected gradient on the nonnegative p-sphere with exact gradients
void pgd_min(const Tensor& sym, double p, Vec& x, double& fx, const PgdOptions& opts) {
  const int m = sym.order();
  project_nonneg_sphere(x, p);
  fx = sym.poly_value(x);
  double step = 0.5;
  for (int it = 0; it < opts.max_iters; ++it) {
    Vec g = sym.apply(x);
    double gnorm2 = 0.0;
    for (double& v : g) {
      v *= static_cast<double>(m);
      gnorm2 += v * v;
    }
    if (gnorm2 <= 1e-26) break;

    bool accepted = false;
    for (double alpha = step; alpha >= 1e-16; alpha *= 0.5) {
      Vec xt(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] - alpha * g[i];
      project_nonneg_sphere(xt, p);
      double move2 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = xt[i] - x[i];
        move2 += d * d;
      }
      if (move2 <= 1e-30) break;
      const double ft = sym.poly_value(xt);
      if (ft <= fx - (opts.armijo / alpha) * move2) {
        x = std::move(xt);
        fx = ft;
        step = std::min(alpha * 2.0, 2.0);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
}

// Newton polish of the first-order system on the detected active set.
// H form:  (B x^{m-1})_i = v x_i^{m-1} on the free set, sum x_i^m = 1.
// Z form:  (B x^{m-1})_i = v x_i     on the free set, sum x_i^2  = 1.
bool polish(const Tensor& sym, bool h_form, Vec& x, double& value) {
  const int m = sym.order();
  const int n = sym.dim();
  std::vector<int> free_idx;
  for (int i = 0; i < n; ++i) {
    if (x[static_cast<std::size_t>(i)] > 1e-8) free_idx.push_back(i);
  }
  if (free_idx.empty()) return false;
  const int k = static_cast<int>(free_idx.size());

  auto embed = [&](const Vec& u) {
    Vec full(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < k; ++j) full[static_cast<std::size_t>(free_idx[static_cast<std::size_t>(j)])] = u[static_cast<std::size_t>(j)];
    return full;
  };
  auto system = [&](const Vec& uv) {
    Vec u(uv.begin(), uv.begin() + k);
    const double v = uv[static_cast<std::size_t>(k)];
    const Vec full = embed(u);
    const Vec w = sym.apply(full);
    Vec out(static_cast<std::size_t>(k + 1), 0.0);
    double constraint = 0.0;
    for (int j = 0; j < k; ++j) {
      const double xj = u[static_cast<std::size_t>(j)];
      const double target = h_form ? v * powi(xj, m - 1) : v * xj;
      out[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(free_idx[static_cast<std::size_t>(j)])] - target;
      constraint += h_form ? powi(xj, m) : xj * xj;
    }
    out[static_cast<std::size_t>(k)] = constraint - 1.0;
    return out;
  };

  Vec uv(static_cast<std::size_t>(k + 1));
  for (int j = 0; j < k; ++j) uv[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(free_idx[static_cast<std::size_t>(j)])];
  uv[static_cast<std::size_t>(k)] = value;

  detail::NewtonOptions nopts;
  nopts.f_tol = 1e-13;
  const auto root = detail::newton_root(system, uv, nopts);
  if (!root) return false;

  Vec u(root->begin(), root->begin() + k);
  const double v = (*root)[static_cast<std::size_t>(k)];
  for (double c : u) {
    if (c < -1e-10) return false;
  }
  Vec cand = embed(u);
  for (double& c : cand) c = std::max(c, 0.0);
  // off-support multiplier sign: slack must stay nonnegative there
  const Vec w = sym.apply(cand);
  for (int i = 0; i < n; ++i) {
    if (cand[static_cast<std::size_t>(i)] == 0.0 && w[static_cast<std::size_t>(i)] < -1e-9) return false;
  }
  const double fv = sym.poly_value(cand);
  if (!(fv <= value + 1e-9 * (1.0 + std::abs(value)))) return false;
  x = std::move(cand);
  value = v;
  return true;
}

// normalized coarse-grid directions used as extra descent seeds
std::vector<Vec> direction_seeds(int n, double p, std::size_t keep, const Tensor& sym) {
  int steps = 8;
  auto points_of = [&](int s) { return std::pow(s + 1.0, n - 1) * n; };
  while (steps > 1 && points_of(steps) > double(1 << 16)) steps /= 2;
  if (points_of(steps) > double(1 << 16)) return {};  // grid unenumerable at this n

  struct Scored {
    double value;
    Vec x;
  };
  std::vector<Scored> best;
  Vec x(static_cast<std::size_t>(n), 0.0);
  for (int face = 0; face < n; ++face) {
    std::vector<int> digits(static_cast<std::size_t>(n > 1 ? n - 1 : 0), 0);
    std::size_t total = 1;
    for (int j = 0; j < n - 1; ++j) total *= static_cast<std::size_t>(steps + 1);
    for (std::size_t t = 0; t < total; ++t) {
      int d = 0;
      for (int i = 0; i < n; ++i) {
        if (i == face) {
          x[static_cast<std::size_t>(i)] = 1.0;
        } else {
          x[static_cast<std::size_t>(i)] =
              static_cast<double>(digits[static_cast<std::size_t>(d)]) / static_cast<double>(steps);
          ++d;
        }
      }
      Vec dir = x;
      const double nrm = norm(dir, p);
      for (double& c : dir) c /= nrm;
      const double val = sym.poly_value(dir);
      if (best.size() < keep) {
        best.push_back({val, dir});
      } else {
        auto worst = std::max_element(best.begin(), best.end(), [](const Scored& a, const Scored& b) {
          return a.value < b.value;
        });
        if (val < worst->value) *worst = {val, dir};
      }
      for (int j = static_cast<int>(digits.size()) - 1; j >= 0; --j) {
        if (++digits[static_cast<std::size_t>(j)] < steps + 1) break;
        digits[static_cast<std::size_t>(j)] = 0;
      }
    }
  }
  std::sort(best.begin(), best.end(),
            [](const Scored& a, const Scored& b) { return a.value < b.value; });
  std::vector<Vec> out;
  out.reserve(best.size());
  for (auto& s : best) out.push_back(std::move(s.x));
  return out;
}

ParetoEigenpair extremal_min(const Tensor& a, const SearchBudget& budget, bool h_form) {
  const int n = a.dim();
  const int m = a.order();
  const double p = h_form ? static_cast<double>(m) : 2.0;
  const bool sym_input = a.is_symmetric();
  const Tensor sym = sym_input ? a : a.symmetrize();  // same polynomial, exact gradients

  std::vector<Vec> starts;
  {
    Vec e(static_cast<std::size_t>(n), 1.0);
    const double nrm = norm(e, p);
    for (double& c : e) c /= nrm;
    starts.push_back(std::move(e));
  }
  for (int k = 0; k < n; ++k) {
    Vec ek(static_cast<std::size_t>(n), 0.0);
    ek[static_cast<std::size_t>(k)] = 1.0;
    starts.push_back(std::move(ek));
  }
  for (Vec& seed : direction_seeds(n, p, 8, sym)) starts.push_back(std::move(seed));
  const std::size_t random_base = starts.size();
  starts.resize(random_base + static_cast<std::size_t>(std::max(0, budget.multistarts)));
  for (std::size_t i = random_base; i < starts.size(); ++i) {
    detail::Rng rng(detail::mix_seed(budget.seed, 0xE16000 + i));
    Vec x(static_cast<std::size_t>(n));
    for (double& c : x) c = rng.uniform01();
    starts[i] = std::move(x);
  }

  struct StartResult {
    Vec x;
    double value = std::numeric_limits<double>::infinity();
  };
  std::vector<StartResult> results(starts.size());
  detail::parallel_for(starts.size(), [&](std::size_t i) {
    Vec x = starts[i];
    double fx = 0.0;
    pgd_min(sym, p, x, fx, {});
    double v = fx;
    if (polish(sym, h_form, x, v)) {
      project_nonneg_sphere(x, p);
      v = sym.poly_value(x);
    }
    results[i] = {std::move(x), v};
  });

  StartResult best;
  for (const auto& r : results) {
    if (r.value < best.value) best = r;
  }

  project_nonneg_sphere(best.x, p);
  ParetoEigenpair pair;
  pair.kind = h_form ? EigKind::H : EigKind::Z;
  pair.vector = best.x;
  pair.value = a.poly_value(best.x);
  pair.budget = budget;
  pair.symmetric_input = sym_input;
  pair.residuals = h_form ? verify_pareto_h(a, pair.value, pair.vector)
                          : verify_pareto_z(a, pair.value, pair.vector);
  return pair;
}

}  // namespace

EigResiduals verify_pareto_h(const Tensor& a, double value, const Vec& x) {
  if (x.size() != static_cast<std::size_t>(a.dim())) {
    throw std::invalid_argument("vector length does not match tensor dimension");
  }
  require_nonzero(x);
  const int m = a.order();
  const Vec w = a.apply(x);
  double sum_m = 0.0;
  double min_slack = std::numeric_limits<double>::infinity();
  double min_x = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum_m += x[i] * powi(x[i], m - 1);
    min_slack = std::min(min_slack, w[i] - value * powi(x[i], m - 1));
    min_x = std::min(min_x, x[i]);
  }
  EigResiduals r;
  r.eigen_equation = std::abs(dot(x, w) - value * sum_m);
  r.slackness = std::max(0.0, -min_slack);
  r.nonneg_violation = std::max(0.0, -min_x);
  return r;
}

EigResiduals verify_pareto_z(const Tensor& a, double value, const Vec& x) {
  if (x.size() != static_cast<std::size_t>(a.dim())) {
    throw std::invalid_argument("vector length does not match tensor dimension");
  }
  require_nonzero(x);
  const int m = a.order();
  const Vec w = a.apply(x);
  const double nsq = dot(x, x);
  const double scale = std::pow(nsq, 0.5 * m - 1.0);
  double min_slack = std::numeric_limits<double>::infinity();
  double min_x = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    min_slack = std::min(min_slack, w[i] - value * scale * x[i]);
    min_x = std::min(min_x, x[i]);
  }
  EigResiduals r;
  r.eigen_equation = std::abs(dot(x, w) - value * std::pow(nsq, 0.5 * m));
  r.slackness = std::max(0.0, -min_slack);
  r.nonneg_violation = std::max(0.0, -min_x);
  return r;
}

ParetoEigenpair lambda_min(const Tensor& a, const SearchBudget& budget) {
  return extremal_min(a, budget, true);
}

ParetoEigenpair mu_min(const Tensor& a, const SearchBudget& budget) {
  return extremal_min(a, budget, false);
}

std::string to_string(EigKind k) { return k == EigKind::H ? "H" : "Z"; }

}  // namespace tcpkit

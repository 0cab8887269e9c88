#include "search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <vector>

#include "tcpkit/parallel.hpp"

namespace tcpkit::detail {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vec fd_gradient(const Objective& f, const Vec& x, double h0) {
  Vec g(x.size(), 0.0);
  Vec xp = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = h0 * (1.0 + std::abs(x[i]));
    xp[i] = x[i] + h;
    const double fp = f(xp);
    xp[i] = x[i] - h;
    const double fm = f(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

DescentResult projected_descent(const Objective& f, const Projection& proj, Vec x0,
                                const DescentOptions& opts) {
  proj(x0);
  Vec x = std::move(x0);
  double fx = f(x);
  double step = opts.initial_step;
  for (int it = 0; it < opts.max_iters; ++it) {
    Vec g = fd_gradient(f, x, opts.fd_step);
    double gnorm2 = 0.0;
    for (double v : g) gnorm2 += v * v;
    if (gnorm2 <= 1e-28) break;

    bool accepted = false;
    double alpha = step;
    while (alpha >= opts.min_step) {
      Vec xt(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] - alpha * g[i];
      proj(xt);
      double move2 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = xt[i] - x[i];
        move2 += d * d;
      }
      if (move2 <= 1e-30) break;  // projection pinned us in place at this step
      const double ft = f(xt);
      if (ft <= fx - (opts.armijo / alpha) * move2) {
        x = std::move(xt);
        fx = ft;
        step = std::min(alpha * 2.0, 4.0);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
  }
  return {std::move(x), fx};
}

namespace {

struct Face {
  int axis;
  double sign;
};

int effective_steps(double resolution, int free_dims, bool signed_axes) {
  int steps = std::max(1, static_cast<int>(std::lround(1.0 / std::max(resolution, 1e-6))));
  const double cap = 1 << 18;  // grid points per face
  auto points_of = [&](int s) {
    const double per_axis = signed_axes ? 2.0 * s + 1.0 : s + 1.0;
    return std::pow(per_axis, free_dims);
  };
  while (steps > 1 && points_of(steps) > cap) steps /= 2;
  return steps;
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  Vec x;
};

// keep the best few grid points as descent seeds
void push_best(std::vector<Candidate>& best, std::size_t keep, double value, const Vec& x) {
  if (best.size() < keep) {
    best.push_back({value, x});
  } else {
    auto worst = std::max_element(best.begin(), best.end(),
                                  [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
    if (value < worst->value) *worst = {value, x};
  }
}

}  // namespace

SphereMinResult minimize_over_inf_sphere(int n, bool signed_sphere, const Objective& f,
                                         const SearchBudget& budget, const DescentOptions& dopts) {
  std::vector<Face> faces;
  for (int k = 0; k < n; ++k) {
    faces.push_back({k, 1.0});
    if (signed_sphere) faces.push_back({k, -1.0});
  }
  const double lo = signed_sphere ? -1.0 : 0.0;
  const int steps = effective_steps(budget.grid_resolution, n - 1, signed_sphere);
  const int per_axis = signed_sphere ? 2 * steps + 1 : steps + 1;

  std::atomic<bool> nonfinite{false};
  Objective guarded = [&](const Vec& x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      nonfinite.store(true, std::memory_order_relaxed);
      return 1e300;
    }
    return v;
  };

  // Stage 1: grid scan per face, keeping a handful of seeds each. For
  // dimensions where even the coarsest grid is unenumerable the stage is
  // skipped and the random multistarts carry the search.
  std::size_t points_per_face = 1;
  bool grid_feasible = true;
  for (int j = 0; j < n - 1 && grid_feasible; ++j) {
    points_per_face *= static_cast<std::size_t>(per_axis);
    if (points_per_face > (std::size_t{1} << 20)) grid_feasible = false;
  }
  const std::size_t seeds_per_face = 4;
  std::vector<std::vector<Candidate>> face_seeds(faces.size());
  parallel_for(grid_feasible ? faces.size() : 0, [&](std::size_t fi) {
    const Face face = faces[fi];
    std::vector<Candidate> best;
    Vec x(static_cast<std::size_t>(n), 0.0);
    std::vector<int> digits(static_cast<std::size_t>(n > 1 ? n - 1 : 0), 0);
    const std::size_t total = points_per_face;
    for (std::size_t t = 0; t < total; ++t) {
      int d = 0;
      for (int i = 0; i < n; ++i) {
        if (i == face.axis) {
          x[static_cast<std::size_t>(i)] = face.sign;
        } else {
          x[static_cast<std::size_t>(i)] =
              lo + (1.0 - lo) * static_cast<double>(digits[static_cast<std::size_t>(d)]) /
                       static_cast<double>(steps);
          ++d;
        }
      }
      push_best(best, seeds_per_face, guarded(x), x);
      for (int j = static_cast<int>(digits.size()) - 1; j >= 0; --j) {
        if (++digits[static_cast<std::size_t>(j)] < per_axis) break;
        digits[static_cast<std::size_t>(j)] = 0;
      }
    }
    std::sort(best.begin(), best.end(),
              [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
    face_seeds[fi] = std::move(best);
  });

  // Stage 2: descent from grid seeds plus seeded random starts.
  std::vector<Vec> starts;
  for (const auto& seeds : face_seeds) {
    for (const auto& c : seeds) starts.push_back(c.x);
  }
  const std::size_t random_base = starts.size();
  const std::size_t total_starts = random_base + static_cast<std::size_t>(std::max(0, budget.multistarts));
  starts.resize(total_starts);
  for (std::size_t i = random_base; i < total_starts; ++i) {
    Rng rng(mix_seed(budget.seed, 0x5EED0000 + i));
    const Face face = faces[i % faces.size()];
    Vec x(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = rng.uniform(lo, 1.0);
    x[static_cast<std::size_t>(face.axis)] = face.sign;
    starts[i] = std::move(x);
  }

  std::vector<DescentResult> results(total_starts);
  parallel_for(total_starts, [&](std::size_t i) {
    // pin whichever coordinate sits at +-1; any such face contains the start
    int axis = -1;
    double sign = 1.0;
    for (int j = 0; j < n; ++j) {
      const double c = starts[i][static_cast<std::size_t>(j)];
      if (c == 1.0) {
        axis = j;
        sign = 1.0;
        break;
      }
      if (signed_sphere && c == -1.0) {
        axis = j;
        sign = -1.0;
        break;
      }
    }
    if (axis < 0) {
      const Face fallback = faces[i % faces.size()];
      axis = fallback.axis;
      sign = fallback.sign;
    }
    Projection proj = [n, lo, axis, sign](Vec& v) {
      for (int j = 0; j < n; ++j) {
        double& c = v[static_cast<std::size_t>(j)];
        c = std::clamp(c, lo, 1.0);
      }
      v[static_cast<std::size_t>(axis)] = sign;
    };
    results[i] = projected_descent(guarded, proj, starts[i], dopts);
  });

  SphereMinResult out;
  out.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].value < out.value) {
      out.value = results[i].value;
      out.x = results[i].x;
    }
  }
  out.nonfinite = nonfinite.load(std::memory_order_relaxed);
  return out;
}

bool solve_dense(std::vector<double>& a, Vec& b, int k) {
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    double best = std::abs(a[static_cast<std::size_t>(col) * k + col]);
    for (int r = col + 1; r < k; ++r) {
      const double v = std::abs(a[static_cast<std::size_t>(r) * k + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best < 1e-300) return false;
    if (pivot != col) {
      for (int c = col; c < k; ++c) {
        std::swap(a[static_cast<std::size_t>(col) * k + c], a[static_cast<std::size_t>(pivot) * k + c]);
      }
      std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(pivot)]);
    }
    const double inv = 1.0 / a[static_cast<std::size_t>(col) * k + col];
    for (int r = col + 1; r < k; ++r) {
      const double factor = a[static_cast<std::size_t>(r) * k + col] * inv;
      if (factor == 0.0) continue;
      for (int c = col; c < k; ++c) {
        a[static_cast<std::size_t>(r) * k + c] -= factor * a[static_cast<std::size_t>(col) * k + c];
      }
      b[static_cast<std::size_t>(r)] -= factor * b[static_cast<std::size_t>(col)];
    }
  }
  for (int r = k - 1; r >= 0; --r) {
    double s = b[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < k; ++c) s -= a[static_cast<std::size_t>(r) * k + c] * b[static_cast<std::size_t>(c)];
    b[static_cast<std::size_t>(r)] = s / a[static_cast<std::size_t>(r) * k + r];
  }
  return true;
}

std::optional<Vec> newton_root(const std::function<Vec(const Vec&)>& F, Vec x0,
                               const NewtonOptions& opts) {
  const int k = static_cast<int>(x0.size());
  Vec x = std::move(x0);
  Vec fx = F(x);
  auto rnorm = [](const Vec& v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
  };
  double r = rnorm(fx);
  if (!std::isfinite(r)) return std::nullopt;
  for (int it = 0; it < opts.max_iters; ++it) {
    if (r <= opts.f_tol) return x;
    std::vector<double> jac(static_cast<std::size_t>(k) * k);
    Vec xh = x;
    for (int j = 0; j < k; ++j) {
      const double h = opts.fd_step * (1.0 + std::abs(x[static_cast<std::size_t>(j)]));
      xh[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] + h;
      Vec fh = F(xh);
      xh[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)];
      for (int i = 0; i < k; ++i) {
        jac[static_cast<std::size_t>(i) * k + j] =
            (fh[static_cast<std::size_t>(i)] - fx[static_cast<std::size_t>(i)]) / h;
      }
    }
    Vec step = fx;
    for (double& v : step) v = -v;
    if (!solve_dense(jac, step, k)) return std::nullopt;

    bool accepted = false;
    double alpha = 1.0;
    while (alpha >= 1.0 / (1 << 22)) {
      Vec xt(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        xt[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + alpha * step[static_cast<std::size_t>(i)];
      }
      Vec ft = F(xt);
      const double rt = rnorm(ft);
      if (std::isfinite(rt) && (rt < (1.0 - 0.25 * alpha) * r || rt <= opts.f_tol)) {
        x = std::move(xt);
        fx = std::move(ft);
        r = rt;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) return std::nullopt;
  }
  return r <= opts.f_tol ? std::optional<Vec>(x) : std::nullopt;
}

EscapeSearchResult r0_escape_search(const Tensor& a, const SearchBudget& budget) {
  const int n = a.dim();
  Objective obj = [&a](const Vec& x) {
    const Vec w = a.apply(x);
    double worst = 0.0;
    for (double v : w) worst = std::max(worst, -v);
    return std::max(worst, std::abs(dot(x, w)));
  };
  SphereMinResult res = minimize_over_inf_sphere(n, false, obj, budget);
  EscapeSearchResult out;
  out.nonfinite = res.nonfinite;
  if (!res.nonfinite && res.value <= budget.tolerance) out.direction = res.x;
  return out;
}

}  // namespace tcpkit::detail

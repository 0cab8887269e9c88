#include "tcpkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "search.hpp"
#include "tcp_internal.hpp"
#include "tcpkit/parallel.hpp"

namespace tcpkit {

namespace {

constexpr double kSatisfiedSlack = 1e-10;
constexpr double kMemberDedup = 1e-6;

BoundReport make_bound(BoundKind kind, double lhs, double rhs, double constant) {
  BoundReport r;
  r.kind = kind;
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant_used = constant;
  r.satisfied = lhs <= rhs + kSatisfiedSlack;
  r.slack = rhs - lhs;
  return r;
}

double inf_dist(const Vec& a, const Vec& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

BetaResult beta(const Tensor& a, const SearchBudget& budget) {
  // max_i x_i (A x^{m-1})_i over each inf-sphere face, min-merged
  detail::Objective obj = [&a](const Vec& x) {
    const Vec w = a.apply(x);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, x[i] * w[i]);
    return best;
  };
  const detail::SphereMinResult res = detail::minimize_over_inf_sphere(a.dim(), false, obj, budget);
  BetaResult out;
  out.value = res.value;
  out.argmin = res.x;
  return out;
}

BoundReport bound_m_norm(const TCPInstance& inst, const Vec& x, double lambda_val) {
  if (!(lambda_val > 0.0)) throw std::invalid_argument("bound needs a positive constant");
  const int m = inst.A.order();
  const double lhs = std::pow(norm(x, static_cast<double>(m)), m - 1);
  Vec neg_q = inst.q;
  for (double& v : neg_q) v = -v;
  const double rhs =
      norm(positive_part(neg_q), static_cast<double>(m) / static_cast<double>(m - 1)) / lambda_val;
  return make_bound(BoundKind::MNorm, lhs, rhs, lambda_val);
}

BoundReport bound_2_norm(const TCPInstance& inst, const Vec& x, double mu_val) {
  if (!(mu_val > 0.0)) throw std::invalid_argument("bound needs a positive constant");
  const int m = inst.A.order();
  const double lhs = std::pow(norm(x, 2.0), m - 1);
  Vec neg_q = inst.q;
  for (double& v : neg_q) v = -v;
  const double rhs = norm(positive_part(neg_q), 2.0) / mu_val;
  return make_bound(BoundKind::TwoNorm, lhs, rhs, mu_val);
}

BoundReport bound_inf_norm(const TCPInstance& inst, const Vec& x, double beta_val) {
  if (!(beta_val > 0.0)) throw std::invalid_argument("bound needs a positive constant");
  const int m = inst.A.order();
  const double lhs = std::pow(inf_norm(x), m - 1);
  Vec neg_q = inst.q;
  for (double& v : neg_q) v = -v;
  const double rhs = inf_norm(positive_part(neg_q)) / beta_val;
  return make_bound(BoundKind::InfNorm, lhs, rhs, beta_val);
}

GammaProbe gamma_probe(const Tensor& a, const Vec& q, double s, double t,
                       const SearchBudget& budget) {
  if (!(t > 0.0)) throw std::invalid_argument("gamma probe needs t > 0");
  if (q.size() != static_cast<std::size_t>(a.dim())) {
    throw std::invalid_argument("offset length does not match tensor dimension");
  }
  GammaProbe probe;
  probe.q = q;
  probe.s = s;
  probe.t = t;

  const int n = a.dim();
  const double tol = budget.tolerance;

  // violation of the two membership constraints (0 on members)
  detail::Objective feas = [&](const Vec& x) {
    const Vec w = a.apply(x);
    double worst = 0.0;
    double xq = 0.0;
    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, -(q[static_cast<std::size_t>(i)] + w[static_cast<std::size_t>(i)]));
      xq += x[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(i)];
    }
    return std::max(worst, xq + t * dot(x, w) - s);
  };

  // Gamma(q, 0, 1) is the solution set itself; there the set can have an
  // empty interior and plain descent stalls near the kinks, so candidates
  // get the complementarity polish before the membership test.
  const bool solution_set_case = s == 0.0 && t == 1.0;
  std::optional<TCPInstance> inst;
  if (solution_set_case) inst.emplace(a, q);
  const double near_scale = 1e-3 * (1.0 + inf_norm(q));

  const int caps = 11;  // norm caps 2^0 .. 2^10
  const int starts_per_cap = std::max(8, budget.multistarts);
  struct Found {
    std::optional<Vec> member;
  };
  std::vector<Found> found(static_cast<std::size_t>(caps) * starts_per_cap);
  detail::parallel_for(found.size(), [&](std::size_t ti) {
    const int cap_id = static_cast<int>(ti) / starts_per_cap;
    const double cap = std::pow(2.0, cap_id);
    detail::Rng rng(detail::mix_seed(budget.seed, 0x6A77A + ti));
    Vec x(static_cast<std::size_t>(n));
    for (double& c : x) c = rng.uniform(0.0, cap);
    // keep a share of the starts in the outer half of the box so growing
    // members are actually looked for
    if (ti % 2 == 0) {
      const double nrm = inf_norm(x);
      if (nrm > 1e-12) {
        const double target = rng.uniform(0.5 * cap, cap);
        for (double& c : x) c *= target / nrm;
      }
    }
    detail::Projection proj = [cap](Vec& v) {
      for (double& c : v) c = std::clamp(c, 0.0, cap);
    };
    detail::DescentOptions dopts;
    dopts.max_iters = 350;
    dopts.initial_step = 0.1 * cap;
    const detail::DescentResult res = detail::projected_descent(feas, proj, x, dopts);
    if (solution_set_case && res.value <= near_scale) {
      if (auto polished = detail::complementarity_polish(*inst, res.x, tol)) {
        if (feas(*polished) <= tol) {
          found[ti].member = *polished;
          return;
        }
      }
    }
    if (res.value <= tol) found[ti].member = res.x;
  });

  double largest_member_norm = 0.0;
  for (const auto& f : found) {
    if (!f.member) continue;
    largest_member_norm = std::max(largest_member_norm, inf_norm(*f.member));
    bool dup = false;
    for (const auto& kept : probe.members_found) {
      if (inf_dist(kept, *f.member) <= kMemberDedup) {
        dup = true;
        break;
      }
    }
    if (!dup && probe.members_found.size() < 64) probe.members_found.push_back(*f.member);
  }
  std::sort(probe.members_found.begin(), probe.members_found.end(),
            [](const Vec& x, const Vec& y) {
              return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
            });

  const detail::EscapeSearchResult esc = detail::r0_escape_search(a, budget);
  if (esc.direction) {
    probe.escape_direction = esc.direction;
    probe.verdict = GammaVerdict::UnboundedWitness;
  } else if (esc.nonfinite) {
    probe.verdict = GammaVerdict::Undetermined;
  } else if (largest_member_norm < std::pow(2.0, caps - 1) / 2.0) {
    // members stopped growing well before the final cap
    probe.verdict = GammaVerdict::LikelyBounded;
  } else {
    probe.verdict = GammaVerdict::Undetermined;
  }
  return probe;
}

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::MNorm:
      return "m-norm";
    case BoundKind::TwoNorm:
      return "2-norm";
    case BoundKind::InfNorm:
      return "inf-norm";
  }
  return "?";
}

std::string to_string(GammaVerdict v) {
  switch (v) {
    case GammaVerdict::LikelyBounded:
      return "likely-bounded";
    case GammaVerdict::UnboundedWitness:
      return "unbounded-witness";
    case GammaVerdict::Undetermined:
      return "undetermined";
  }
  return "?";
}

}  // namespace tcpkit

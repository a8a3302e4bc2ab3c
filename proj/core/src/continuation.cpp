#include "plap/continuation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "plap/verify.hpp"

namespace plap {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs fn(0..n-1) on up to `threads` workers. Results must go into
// preallocated slots indexed by i, so the outcome does not depend on
// scheduling. The first exception wins and is rethrown after the join.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (n == 0) return;
  const std::size_t nt =
      std::min<std::size_t>(std::max(threads, 1), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Narrow scan around a previous solution; widened once before giving up.
std::optional<Bracket> local_bracket(const ProblemParams& params,
                                     double a_center,
                                     const IntegratorControl& ctrl) {
  double widen = 1.3;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const BracketScan scan =
        bracket_scan(params, a_center / widen, a_center * widen, 9, ctrl);
    if (!scan.brackets.empty()) return scan.brackets.front();
    widen *= 1.3;
  }
  return std::nullopt;
}

}  // namespace

EpsPath eps_continuation(const ProblemParams& params,
                         const ContinuationOptions& opts,
                         const IntegratorControl& ctrl) {
  if (params.mode != ForcingMode::full)
    throw std::invalid_argument(
        "eps_continuation: needs the full forcing mode");
  if (!(params.lambda > 0.0))
    throw std::invalid_argument(
        "eps_continuation: nothing to regularize at lambda = 0");
  if (!(opts.eps0 > 0.0) || !(opts.factor > 0.0 && opts.factor < 1.0) ||
      opts.steps < 1)
    throw std::invalid_argument("eps_continuation: bad schedule");

  EpsPath path;
  double a_prev = kNaN;
  for (int k = 0; k < opts.steps; ++k) {
    ProblemParams prm = params;
    prm.eps = opts.eps0 * std::pow(opts.factor, k);

    std::optional<Bracket> br;
    if (std::isfinite(a_prev)) br = local_bracket(prm, a_prev, ctrl);
    if (!br) {
      const BracketScan scan = bracket_scan(prm, opts.scan.a_min,
                                            opts.scan.a_max,
                                            opts.scan.points, ctrl);
      if (!scan.brackets.empty()) br = scan.brackets.front();
    }
    if (!br) {
      path.diagnostic =
          "no shooting bracket at eps = " + std::to_string(prm.eps);
      break;
    }
    try {
      ShotResult sol = solve_bvp(prm, *br, ctrl);
      path.eps_values.push_back(prm.eps);
      path.a_stars.push_back(sol.a);
      path.profiles.push_back(std::move(sol.profile));
      a_prev = sol.a;
    } catch (const BvpError& err) {
      path.diagnostic = "solve failed at eps = " + std::to_string(prm.eps) +
                        ": " + err.what();
      break;
    }
  }

  path.cauchy_increments.assign(path.size(), kNaN);
  if (path.size() >= 2) {
    double worst = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (const auto& prof : path.profiles)
      scale = std::max(scale, prof.sup_norm());
    for (std::size_t k = 1; k < path.size(); ++k) {
      const auto prev = path.profiles[k - 1].uniform_u();
      const auto cur = path.profiles[k].uniform_u();
      const std::size_t m = std::min(prev.size(), cur.size());
      double sup = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double d = cur[i] - prev[i];
        sup = std::max(sup, std::abs(d));
        worst = std::min(worst, d);
      }
      path.cauchy_increments[k] = sup;
    }
    path.ordering_worst = worst;
    path.ordering_ok = worst >= -1e-9 * scale;
  }
  return path;
}

LimitResult singular_limit(const EpsPath& path, double tol_rel) {
  LimitResult res;
  if (path.size() < 3) {
    res.diagnostic = "need at least 3 continuation steps";
    return res;
  }
  res.limit = path.profiles.back();
  res.last_increment = path.cauchy_increments.back();
  res.tolerance = tol_rel * res.limit.sup_norm();
  res.converged = res.last_increment < res.tolerance;
  if (!res.converged)
    res.diagnostic = "tail increment above tolerance";
  const ConeBound cone = check_cone_bound(res.limit);
  res.cone_constant = cone.pass ? cone.constant : 0.0;
  return res;
}

LambdaSweepResult lambda_sweep(const ProblemParams& base,
                               const std::vector<double>& lambdas,
                               const ScanOptions& scan,
                               const IntegratorControl& ctrl, int threads) {
  struct Sol {
    double a_star = 0.0;
    double sup = 0.0;
    bool converged = false;
    double weak = kNaN;
  };
  std::vector<std::vector<Sol>> per_lambda(lambdas.size());

  parallel_for(lambdas.size(), threads, [&](std::size_t i) {
    ProblemParams prm = base;
    prm.lambda = lambdas[i];
    const BracketScan bs =
        bracket_scan(prm, scan.a_min, scan.a_max, scan.points, ctrl);
    for (const Bracket& br : bs.brackets) {
      try {
        const ShotResult sol = solve_bvp(prm, br, ctrl);
        per_lambda[i].push_back({sol.a, sol.profile.sup_norm(), true,
                                 weak_residual(sol.profile, prm)});
      } catch (const BvpError& err) {
        per_lambda[i].push_back(
            {err.best.a, err.best.profile.sup_norm(), false, kNaN});
      }
    }
    std::sort(per_lambda[i].begin(), per_lambda[i].end(),
              [](const Sol& a, const Sol& b) { return a.a_star < b.a_star; });
  });

  LambdaSweepResult out;
  std::vector<std::pair<int, double>> live;  // branch id, log a_star
  int next_branch = 0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto& sols = per_lambda[i];
    if (sols.empty()) {
      SweepRecord rec;
      rec.param_value = lambdas[i];
      out.records.push_back(rec);
      continue;
    }
    std::vector<bool> used(live.size(), false);
    std::vector<std::pair<int, double>> next_live;
    for (const Sol& s : sols) {
      const double la = std::log(s.a_star);
      int branch = -1;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < live.size(); ++b) {
        if (used[b]) continue;
        const double d = std::abs(la - live[b].second);
        if (d < best) {
          best = d;
          branch = static_cast<int>(b);
        }
      }
      int id;
      if (branch >= 0) {
        used[branch] = true;
        id = live[branch].first;
      } else {
        id = next_branch++;
      }
      next_live.push_back({id, la});
      out.records.push_back(
          {lambdas[i], id, s.a_star, s.sup, s.converged, s.weak});
      if (s.converged &&
          !(out.lambda_max_existence >= lambdas[i]))
        out.lambda_max_existence = lambdas[i];
    }
    live = std::move(next_live);
  }
  return out;
}

MuProbeResult mu_probe(const ProblemParams& base,
                       const std::vector<double>& mus,
                       const ScanOptions& scan,
                       const IntegratorControl& ctrl) {
  MuProbeResult out;
  const EigenPair eigen =
      first_eigenpair(base.p, base.dim_n, base.radius, ctrl);
  out.lambda1 = eigen.lambda1;

  for (const double mu : mus) {
    ProblemParams prm = base;
    prm.mu = mu;
    MuProbeRow row;
    row.mu = mu;
    row.lambda1 = eigen.lambda1;
    row.k = (prm.lambda > 0.0 || prm.mu > 0.0) ? picone_threshold(prm).k : 0.0;

    const BracketScan bs =
        bracket_scan(prm, scan.a_min, scan.a_max, scan.points, ctrl);
    for (const Bracket& br : bs.brackets) {
      try {
        solve_bvp(prm, br, ctrl);
        row.exists = true;
        break;
      } catch (const BvpError&) {
      }
    }
    row.consistent = !(row.exists && row.k > eigen.lambda1 * (1.0 + 1e-6));
    out.all_consistent = out.all_consistent && row.consistent;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace plap

#include "mklkit/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace mklkit::solvers {

namespace {

constexpr double kSymmetryTol = 1e-9;

// Index sets the vertex search runs over: one group for the unit simplex,
// one per class for the bi-simplex.
struct VertexGroups {
  std::vector<std::vector<Eigen::Index>> groups;
};

VertexGroups build_groups(const SimplexQP& p) {
  const Eigen::Index n = p.Q.rows();
  VertexGroups v;
  if (p.region == RegionKind::UnitSimplex) {
    v.groups.emplace_back();
    v.groups[0].reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) v.groups[0].push_back(i);
    return v;
  }
  if (!p.labels || p.labels->size() != n) {
    throw std::invalid_argument("solve: BiSimplex requires labels matching Q");
  }
  v.groups.resize(2);
  const auto& y = p.labels->values();
  for (Eigen::Index i = 0; i < n; ++i) {
    v.groups[y[static_cast<std::size_t>(i)] == 1 ? 0 : 1].push_back(i);
  }
  if (v.groups[0].empty() || v.groups[1].empty()) {
    throw std::invalid_argument("solve: BiSimplex region is infeasible (a class is empty)");
  }
  return v;
}

}  // namespace

QPSolution solve(const SimplexQP& p, const SolveOptions& opts) {
  const Eigen::Index n = p.Q.rows();
  if (n == 0 || p.Q.cols() != n || p.q.size() != n) {
    throw std::invalid_argument("solve: inconsistent problem dimensions");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (!(std::abs(p.Q(i, j) - p.Q(j, i)) <= kSymmetryTol * (1.0 + std::abs(p.Q(i, j))))) {
        throw std::invalid_argument("solve: Q is not symmetric");
      }
    }
  }
  if (!(opts.tol > 0.0)) {
    throw std::invalid_argument("solve: tol must be positive");
  }

  const VertexGroups vg = build_groups(p);

  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(n);
  for (const auto& group : vg.groups) {
    const double w = 1.0 / static_cast<double>(group.size());
    for (Eigen::Index i : group) gamma[i] = w;
  }

  Eigen::VectorXd Qg = p.Q * gamma;  // cached Q * gamma, updated in O(n) per step
  const auto exact_objective = [&](const Eigen::VectorXd& x) {
    return 0.5 * x.dot(p.Q * x) + p.q.dot(x);
  };

  QPSolution sol;
  std::vector<Eigen::Index> vertex(vg.groups.size());
  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    const Eigen::VectorXd g = Qg + p.q;

    double g_at_s = 0.0;
    for (std::size_t c = 0; c < vg.groups.size(); ++c) {
      Eigen::Index best = vg.groups[c].front();
      for (Eigen::Index i : vg.groups[c]) {
        if (g[i] < g[best]) best = i;
      }
      vertex[c] = best;
      g_at_s += g[best];
    }
    const double gap = g.dot(gamma) - g_at_s;

    const double f = 0.5 * gamma.dot(Qg) + p.q.dot(gamma);
    if (opts.objective_trace) opts.objective_trace->push_back(exact_objective(gamma));

    sol.iterations = iter;
    sol.gap = gap;
    if (gap <= opts.tol * (1.0 + std::abs(f))) {
      sol.converged = true;
      break;
    }
    if (iter == opts.max_iter) break;

    // d = s - gamma; the quadratic form pieces come from the cache and single
    // Q entries, so a step costs O(n).
    double sQs = 0.0;
    double sQg = 0.0;
    for (std::size_t a = 0; a < vertex.size(); ++a) {
      sQg += Qg[vertex[a]];
      for (std::size_t b = 0; b < vertex.size(); ++b) sQs += p.Q(vertex[a], vertex[b]);
    }
    const double dQd = sQs - 2.0 * sQg + gamma.dot(Qg);
    const double t = dQd > 0.0 ? std::clamp(gap / dQd, 0.0, 1.0) : 1.0;

    gamma *= 1.0 - t;
    Qg *= 1.0 - t;
    for (Eigen::Index i : vertex) {
      gamma[i] += t;
      Qg += t * p.Q.col(i);
    }
    if ((iter + 1) % 256 == 0) Qg = p.Q * gamma;  // keep the cache from drifting
  }

  sol.gamma = std::move(gamma);
  sol.objective = exact_objective(sol.gamma);
  return sol;
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  if (n == 0) {
    throw std::invalid_argument("project_simplex: empty input");
  }
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumulative += u[static_cast<std::size_t>(k)];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[static_cast<std::size_t>(k)] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).max(0.0);
}

}  // namespace mklkit::solvers

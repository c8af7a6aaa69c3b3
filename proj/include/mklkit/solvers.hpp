#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "mklkit/core.hpp"

namespace mklkit::solvers {

enum class RegionKind {
  // {gamma >= 0, sum gamma = 1}
  UnitSimplex,
  // {gamma >= 0, sum over each label class = 1}; requires labels with both
  // classes present.
  BiSimplex,
};

// min over the region of 0.5 * gamma' Q gamma + q' gamma, Q symmetric PSD.
struct SimplexQP {
  Eigen::MatrixXd Q;
  Eigen::VectorXd q;
  RegionKind region = RegionKind::UnitSimplex;
  std::optional<Labels> labels;
};

struct SolveOptions {
  double tol = 1e-7;
  int max_iter = 20000;
  // When set, receives the exactly evaluated objective of every iterate.
  std::vector<double>* objective_trace = nullptr;
};

struct QPSolution {
  Eigen::VectorXd gamma;
  double objective = 0.0;
  int iterations = 0;
  double gap = 0.0;
  bool converged = false;
};

// Frank-Wolfe with exact line search. The linear subproblem over a simplex is
// an argmin over vertices (one coordinate per class for the bi-simplex), the
// duality gap g'(gamma - s) is the stopping certificate, and the line-search
// minimizer along d = s - gamma is clamp(-g'd / d'Qd, 0, 1). Starts from the
// uniform feasible point; on a flat objective that point is returned.
QPSolution solve(const SimplexQP& problem, const SolveOptions& opts = {});

// Euclidean projection onto the unit simplex (sort-based threshold rule).
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v);

}  // namespace mklkit::solvers

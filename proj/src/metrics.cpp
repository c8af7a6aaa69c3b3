#include "mklkit/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace mklkit::metrics {

namespace {

Eigen::MatrixXd centered(const Eigen::MatrixXd& K) {
  const Eigen::Index n = K.rows();
  const Eigen::VectorXd row_mean = K.rowwise().mean();
  const Eigen::VectorXd col_mean = K.colwise().mean();
  const double total_mean = K.mean();
  Eigen::MatrixXd C(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      C(i, j) = K(i, j) - row_mean[i] - col_mean[j] + total_mean;
    }
  }
  return C;
}

double alignment_values(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.rows() != B.rows()) {
    throw std::invalid_argument("alignment: sample counts differ");
  }
  const double na = A.norm();
  const double nb = B.norm();
  if (na == 0.0 || nb == 0.0) {
    throw std::domain_error("alignment: zero matrix");
  }
  return A.cwiseProduct(B).sum() / (na * nb);
}

}  // namespace

MarginResult margin(const GramMatrix& K, const Labels& y, const solvers::SolveOptions& opts) {
  if (y.size() != K.size()) {
    throw std::invalid_argument("margin: label count does not match kernel size");
  }
  if (!y.both_classes()) {
    throw std::invalid_argument("margin: both classes must be present");
  }
  const Eigen::VectorXd yv = y.as_vector();
  // Objective gamma' (Y K Y) gamma, encoded as 0.5 gamma' Q gamma with Q = 2 Y K Y.
  solvers::SimplexQP qp;
  qp.Q = 2.0 * (yv.asDiagonal() * K.values() * yv.asDiagonal());
  qp.q = Eigen::VectorXd::Zero(K.size());
  qp.region = solvers::RegionKind::BiSimplex;
  qp.labels = y;
  const auto sol = solvers::solve(qp, opts);
  const double squared = std::max(0.0, sol.objective);
  MarginResult r;
  r.squared_hull_distance = squared;
  r.margin = 0.5 * std::sqrt(squared);
  r.gamma = sol.gamma;
  return r;
}

RadiusResult radius(const GramMatrix& K, const solvers::SolveOptions& opts) {
  if (K.size() < 1) {
    throw std::invalid_argument("radius: empty kernel");
  }
  // max sum_i gamma_i K_ii - gamma' K gamma, solved as the negated minimum.
  solvers::SimplexQP qp;
  qp.Q = 2.0 * K.values();
  qp.q = -K.values().diagonal();
  const auto sol = solvers::solve(qp, opts);
  const double squared = std::max(0.0, -sol.objective);
  RadiusResult r;
  r.squared_radius = squared;
  r.radius = std::sqrt(squared);
  r.gamma = sol.gamma;
  return r;
}

double spectral_ratio(const GramMatrix& K, bool normalized) {
  const double fro = frobenius_norm(K);
  if (fro == 0.0) {
    throw std::domain_error("spectral_ratio: zero matrix");
  }
  const double raw = trace_norm(K) / fro;
  if (!normalized) return raw;
  const Eigen::Index n = K.size();
  if (n < 2) {
    throw std::domain_error("spectral_ratio: normalized form needs n >= 2");
  }
  return (raw - 1.0) / (std::sqrt(static_cast<double>(n)) - 1.0);
}

double alignment(const GramMatrix& K1, const GramMatrix& K2) {
  return alignment_values(K1.values(), K2.values());
}

double centered_alignment(const GramMatrix& K1, const GramMatrix& K2) {
  if (K1.size() != K2.size()) {
    throw std::invalid_argument("alignment: sample counts differ");
  }
  return alignment_values(centered(K1.values()), centered(K2.values()));
}

GramMatrix normalize_kernel(const GramMatrix& K) {
  Eigen::MatrixXd values = K.values();
  detail::normalize_gram_in_place(values);
  return GramMatrix(std::move(values));
}

double trace_norm(const GramMatrix& K) { return K.values().trace(); }

double frobenius_norm(const GramMatrix& K) { return K.values().norm(); }

}  // namespace mklkit::metrics

#include "mklkit/algorithms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mklkit/metrics.hpp"

namespace mklkit::algorithms {

namespace {

void require_fittable(const KernelList& list, const Labels& y) {
  if (list.size() == 0) {
    throw std::invalid_argument("fit: empty kernel list");
  }
  if (y.size() != list.samples()) {
    throw std::invalid_argument("fit: label count does not match kernel size");
  }
  if (!y.both_classes()) {
    throw std::invalid_argument("fit: both classes must be present");
  }
}

solvers::QPSolution solve_komd_qp(const Eigen::MatrixXd& K, const Labels& y, double lambda,
                                  const solvers::SolveOptions& opts) {
  const Eigen::Index n = K.rows();
  const Eigen::VectorXd yv = y.as_vector();
  solvers::SimplexQP qp;
  qp.Q = 2.0 * ((1.0 - lambda) * (yv.asDiagonal() * K * yv.asDiagonal()).eval() +
                lambda * Eigen::MatrixXd::Identity(n, n));
  qp.q = Eigen::VectorXd::Zero(n);
  qp.region = solvers::RegionKind::BiSimplex;
  qp.labels = y;
  return solvers::solve(qp, opts);
}

double komd_bias(const Eigen::MatrixXd& K, const Labels& y, const Eigen::VectorXd& gamma) {
  const Eigen::Index n = K.rows();
  Eigen::VectorXd gpos = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd gneg = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    (y.values()[static_cast<std::size_t>(i)] == 1 ? gpos : gneg)[i] = gamma[i];
  }
  const Eigen::VectorXd kp = K * gpos;
  const Eigen::VectorXd kn = K * gneg;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    acc += y.values()[static_cast<std::size_t>(j)] * gamma[j] * (kp[j] + kn[j]);
  }
  return -0.5 * acc;
}

void finish(MKLModel& model, const FitCallbacks& cb) {
  if (cb.on_finish) cb.on_finish(model);
}

}  // namespace

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Average:
      return "average";
    case Algorithm::EasyMkl:
      return "easymkl";
    case Algorithm::Gram:
      return "gram";
  }
  throw std::logic_error("algorithm_name: unknown algorithm");
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "average") return Algorithm::Average;
  if (name == "easymkl") return Algorithm::EasyMkl;
  if (name == "gram") return Algorithm::Gram;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

FitCallbacks record_into(FitTrace& trace) {
  FitCallbacks cb;
  cb.on_iteration = [&trace](int iteration, const Eigen::VectorXd& eta, double objective) {
    trace.records.push_back({iteration, eta, objective});
  };
  return cb;
}

KomdResult komd_fit(const GramMatrix& K, const Labels& y, double lambda,
                    const solvers::SolveOptions& opts) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw std::invalid_argument("komd_fit: lambda must lie in [0, 1]");
  }
  if (y.size() != K.size()) {
    throw std::invalid_argument("komd_fit: label count does not match kernel size");
  }
  if (!y.both_classes()) {
    throw std::invalid_argument("komd_fit: both classes must be present");
  }
  const auto sol = solve_komd_qp(K.values(), y, lambda, opts);
  KomdResult r;
  r.gamma = sol.gamma;
  r.objective = sol.objective;
  r.bias = komd_bias(K.values(), y, sol.gamma);
  return r;
}

MKLModel average_mkl_fit(KernelList& list, const Labels& y, double lambda,
                         const solvers::SolveOptions& opts, const FitCallbacks& cb) {
  require_fittable(list, y);
  const auto P = static_cast<Eigen::Index>(list.size());
  const Eigen::VectorXd eta = Eigen::VectorXd::Constant(P, 1.0 / static_cast<double>(P));
  const GramMatrix combined = combine(list, eta);
  const KomdResult base = komd_fit(combined, y, lambda, opts);

  MKLModel model;
  model.algorithm = Algorithm::Average;
  model.eta = eta;
  model.gamma = base.gamma;
  model.bias = base.bias;
  model.labels = y;
  model.lambda = lambda;
  model.objective = base.objective;
  if (cb.on_iteration) cb.on_iteration(1, model.eta, model.objective);
  finish(model, cb);
  return model;
}

Eigen::VectorXd kernel_margin_contributions(KernelList& list, const Labels& y,
                                            const Eigen::VectorXd& gamma) {
  if (y.size() != list.samples() || gamma.size() != list.samples()) {
    throw std::invalid_argument("kernel_margin_contributions: size mismatch");
  }
  const Eigen::VectorXd v = y.as_vector().cwiseProduct(gamma);
  Eigen::VectorXd d(static_cast<Eigen::Index>(list.size()));
  for (std::size_t r = 0; r < list.size(); ++r) {
    const auto K = list.get(r);
    d[static_cast<Eigen::Index>(r)] = v.dot(K->values() * v);
  }
  return d;
}

MKLModel easymkl_fit(KernelList& list, const Labels& y, double lambda,
                     const solvers::SolveOptions& opts, const FitCallbacks& cb) {
  require_fittable(list, y);
  if (lambda < 0.0 || lambda > 1.0) {
    throw std::invalid_argument("easymkl_fit: lambda must lie in [0, 1]");
  }
  const auto P = static_cast<Eigen::Index>(list.size());

  // Stage 1: KOMD-style coefficients on the plain sum of the base kernels.
  // The sum is dropped before the next pass so only one matrix stays live.
  Eigen::VectorXd gamma_star;
  {
    const GramMatrix sum = combine(list, Eigen::VectorXd::Ones(P));
    gamma_star = solve_komd_qp(sum.values(), y, lambda, opts).gamma;
  }

  // Stage 2: per-kernel margin contributions at gamma_star.
  const Eigen::VectorXd d = kernel_margin_contributions(list, y, gamma_star);
  const double total = d.sum();
  const Eigen::VectorXd eta =
      total > 0.0 ? Eigen::VectorXd(d / total)
                  : Eigen::VectorXd(Eigen::VectorXd::Constant(P, 1.0 / static_cast<double>(P)));

  // Stage 3: final base learner on the weighted combination.
  const GramMatrix combined = combine(list, eta);
  const KomdResult base = komd_fit(combined, y, lambda, opts);

  MKLModel model;
  model.algorithm = Algorithm::EasyMkl;
  model.eta = eta;
  model.gamma = base.gamma;
  model.bias = base.bias;
  model.labels = y;
  model.lambda = lambda;
  model.objective = base.objective;
  if (cb.on_iteration) cb.on_iteration(1, model.eta, model.objective);
  finish(model, cb);
  return model;
}

bool RatioEval::degenerate() const { return !(psi < std::numeric_limits<double>::infinity()); }

RatioEval radius_margin_ratio(KernelList& list, const Labels& y, const Eigen::VectorXd& eta,
                              const solvers::SolveOptions& inner) {
  require_fittable(list, y);
  const auto P = static_cast<Eigen::Index>(list.size());
  if (eta.size() != P) {
    throw std::invalid_argument("radius_margin_ratio: weight count mismatch");
  }

  Eigen::VectorXd alpha;   // MEB support coefficients
  Eigen::VectorXd gammam;  // hull coefficients
  double kernel_scale = 0.0;
  RatioEval eval;
  {
    const GramMatrix combined = combine(list, eta);
    kernel_scale = combined.values().diagonal().maxCoeff();
    const auto rad = metrics::radius(combined, inner);
    const auto mar = metrics::margin(combined, y, inner);
    eval.squared_radius = rad.squared_radius;
    eval.squared_distance = mar.squared_hull_distance;
    alpha = rad.gamma;
    gammam = mar.gamma;
  }

  eval.gradient = Eigen::VectorXd::Zero(P);
  // A hull distance at rounding-noise scale relative to the kernel means the
  // hulls intersect; the ratio is undefined there.
  if (eval.squared_distance <= 1e-12 * std::max(kernel_scale, 1e-300)) {
    eval.psi = std::numeric_limits<double>::infinity();
    return eval;
  }
  eval.psi = eval.squared_radius / eval.squared_distance;

  // Envelope theorem: differentiate both inner optima at their fixed
  // optimizers, then apply the quotient rule.
  const Eigen::VectorXd v = y.as_vector().cwiseProduct(gammam);
  const double rho2 = eval.squared_distance;
  const double rho4 = rho2 * rho2;
  for (std::size_t r = 0; r < list.size(); ++r) {
    const auto K = list.get(r);
    const double d_radius = alpha.dot(K->values().diagonal()) - alpha.dot(K->values() * alpha);
    const double d_dist = v.dot(K->values() * v);
    eval.gradient[static_cast<Eigen::Index>(r)] =
        (rho2 * d_radius - eval.squared_radius * d_dist) / rho4;
  }
  return eval;
}

MKLModel gram_fit(KernelList& list, const Labels& y, const GramOptions& opts,
                  const FitCallbacks& cb) {
  require_fittable(list, y);
  const auto P = static_cast<Eigen::Index>(list.size());

  Eigen::VectorXd eta = Eigen::VectorXd::Constant(P, 1.0 / static_cast<double>(P));
  RatioEval current = radius_margin_ratio(list, y, eta, opts.inner);
  if (current.degenerate()) {
    throw std::runtime_error(
        "gram_fit: zero margin at the initial uniform weights (the class hulls intersect); "
        "the radius/margin ratio is undefined on this data");
  }

  for (int t = 1; t <= opts.max_iter; ++t) {
    double step = opts.step_size;
    bool accepted = false;
    Eigen::VectorXd candidate;
    RatioEval next;
    for (int halving = 0; halving <= 30; ++halving) {
      candidate = solvers::project_simplex(eta - step * current.gradient);
      next = radius_margin_ratio(list, y, candidate, opts.inner);
      if (next.psi <= current.psi) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    const double previous = current.psi;
    eta = candidate;
    current = next;
    if (cb.on_iteration) cb.on_iteration(t, eta, current.psi);
    if (std::abs(current.psi - previous) <= opts.tol * previous) break;
  }

  const GramMatrix combined = combine(list, eta);
  const KomdResult base = komd_fit(combined, y, opts.lambda, opts.inner);

  MKLModel model;
  model.algorithm = Algorithm::Gram;
  model.eta = eta;
  model.gamma = base.gamma;
  model.bias = base.bias;
  model.labels = y;
  model.lambda = opts.lambda;
  model.objective = base.objective;
  model.gram_max_iter = opts.max_iter;
  model.gram_step_size = opts.step_size;
  model.gram_tol = opts.tol;
  finish(model, cb);
  return model;
}

Prediction predict(const MKLModel& model, const std::vector<RectKernelMatrix>& test_kernels) {
  if (static_cast<Eigen::Index>(test_kernels.size()) != model.eta.size()) {
    throw std::invalid_argument("predict: kernel count does not match the model weights");
  }
  if (test_kernels.empty()) {
    throw std::invalid_argument("predict: empty kernel list");
  }
  const Eigen::Index n = model.labels.size();
  const Eigen::Index m = test_kernels.front().rows();
  for (const auto& K : test_kernels) {
    if (K.cols() != n || K.rows() != m) {
      throw std::invalid_argument("predict: test kernel dimensions do not match the model");
    }
  }

  Eigen::MatrixXd combined = Eigen::MatrixXd::Zero(m, n);
  for (std::size_t r = 0; r < test_kernels.size(); ++r) {
    combined.noalias() += model.eta[static_cast<Eigen::Index>(r)] * test_kernels[r].values();
  }

  const Eigen::VectorXd coef = model.labels.as_vector().cwiseProduct(model.gamma);
  Prediction pred;
  pred.scores = combined * coef + Eigen::VectorXd::Constant(m, model.bias);
  pred.labels.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    pred.labels.push_back(pred.scores[j] >= 0.0 ? 1 : -1);
  }
  return pred;
}

double accuracy(const Prediction& pred, const Labels& truth) {
  if (static_cast<Eigen::Index>(pred.labels.size()) != truth.size()) {
    throw std::invalid_argument("accuracy: size mismatch");
  }
  if (truth.size() == 0) {
    throw std::invalid_argument("accuracy: empty label set");
  }
  int correct = 0;
  for (std::size_t i = 0; i < pred.labels.size(); ++i) {
    if (pred.labels[i] == truth.values()[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

}  // namespace mklkit::algorithms

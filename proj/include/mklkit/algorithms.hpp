#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mklkit/core.hpp"
#include "mklkit/kernels.hpp"
#include "mklkit/solvers.hpp"

namespace mklkit::algorithms {

enum class Algorithm { Average, EasyMkl, Gram };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

// Fitted combination plus the base learner state needed for prediction.
struct MKLModel {
  Algorithm algorithm = Algorithm::Average;
  Eigen::VectorXd eta;    // simplex weights over the base kernels
  Eigen::VectorXd gamma;  // bi-simplex dual coefficients of the base learner
  double bias = 0.0;
  Labels labels;
  double lambda = 0.1;
  double objective = 0.0;  // base-learner objective on the combined kernel

  // Recorded when algorithm == Gram.
  int gram_max_iter = 0;
  double gram_step_size = 0.0;
  double gram_tol = 0.0;

  // Kernel provenance: the specs that produced the list, or nullopt for
  // externally supplied matrices.
  std::optional<std::vector<kernels::KernelSpec>> specs;
  bool normalized = false;
};

// Observation hooks; callbacks never mutate training state. on_iteration
// fires once per accepted iteration for GRAM and once for the single-shot
// algorithms.
struct FitCallbacks {
  std::function<void(int iteration, const Eigen::VectorXd& eta, double objective)> on_iteration;
  std::function<void(const MKLModel& model)> on_finish;
};

struct FitTrace {
  struct Record {
    int iteration = 0;
    Eigen::VectorXd eta;
    double objective = 0.0;
  };
  std::vector<Record> records;
};

// Callbacks appending every on_iteration event to the trace.
FitCallbacks record_into(FitTrace& trace);

struct KomdResult {
  Eigen::VectorXd gamma;
  double bias = 0.0;
  double objective = 0.0;
};

// Base learner: minimizes (1 - lambda) gamma' Y K Y gamma + lambda |gamma|^2
// over the bi-simplex. The bias places the decision boundary through the
// midpoint of the two hull points. Decision score of a kernel row k:
// sum_i y_i gamma_i k_i + bias.
KomdResult komd_fit(const GramMatrix& K, const Labels& y, double lambda,
                    const solvers::SolveOptions& opts = {});

// Uniform weights 1/P, then KOMD on the streamed combination.
MKLModel average_mkl_fit(KernelList& list, const Labels& y, double lambda = 0.1,
                         const solvers::SolveOptions& opts = {}, const FitCallbacks& cb = {});

// Margin contribution gamma' (Y K_r Y) gamma of every kernel in the list at a
// fixed coefficient vector; one streaming pass.
Eigen::VectorXd kernel_margin_contributions(KernelList& list, const Labels& y,
                                            const Eigen::VectorXd& gamma);

// EasyMKL: a KOMD-style coefficient vector on the plain sum of the base
// kernels, weights proportional to each kernel's margin contribution, then a
// final KOMD fit on the weighted combination. Three streaming passes, one
// resident matrix at a time.
MKLModel easymkl_fit(KernelList& list, const Labels& y, double lambda = 0.1,
                     const solvers::SolveOptions& opts = {}, const FitCallbacks& cb = {});

struct GramOptions {
  int max_iter = 1000;
  double step_size = 1.0;
  double tol = 1e-6;
  double lambda = 0.1;  // final KOMD regularization
  solvers::SolveOptions inner;
};

// One evaluation of the radius/margin ratio objective psi(eta) =
// R^2(eta) / rho^2(eta) together with its envelope-theorem gradient.
struct RatioEval {
  double psi = 0.0;
  Eigen::VectorXd gradient;
  double squared_radius = 0.0;
  double squared_distance = 0.0;

  bool degenerate() const;  // intersecting hulls: psi is +inf
};

RatioEval radius_margin_ratio(KernelList& list, const Labels& y, const Eigen::VectorXd& eta,
                              const solvers::SolveOptions& inner = {});

// GRAM: projected-gradient minimization of psi over the unit simplex with
// halving backtracking; accepted iterations have non-increasing psi.
MKLModel gram_fit(KernelList& list, const Labels& y, const GramOptions& opts = {},
                  const FitCallbacks& cb = {});

struct Prediction {
  Eigen::VectorXd scores;
  std::vector<int> labels;  // sign(score) with sign(0) = +1
};

// Scores test rows against the model: combined test kernel row dotted with
// y .* gamma, plus the bias.
Prediction predict(const MKLModel& model, const std::vector<RectKernelMatrix>& test_kernels);

double accuracy(const Prediction& pred, const Labels& truth);

}  // namespace mklkit::algorithms

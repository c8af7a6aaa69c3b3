#pragma once

#include <Eigen/Dense>

#include "mklkit/core.hpp"
#include "mklkit/solvers.hpp"

namespace mklkit::metrics {

struct MarginResult {
  double margin = 0.0;             // half the distance between the class hulls
  Eigen::VectorXd gamma;           // bi-simplex optimizer (hull coefficients)
  double squared_hull_distance = 0.0;  // optimum of min gamma' Y K Y gamma
};

struct RadiusResult {
  double radius = 0.0;
  Eigen::VectorXd gamma;       // unit-simplex optimizer (MEB support coefficients)
  double squared_radius = 0.0;
};

// Distance between the class convex hulls in feature space, computed as the
// bi-simplex minimum of gamma' (Y K Y) gamma. Returns half the distance.
MarginResult margin(const GramMatrix& K, const Labels& y, const solvers::SolveOptions& opts = {});

// Radius of the minimum enclosing ball, via the unit-simplex maximum of
// sum_i gamma_i K_ii - gamma' K gamma.
RadiusResult radius(const GramMatrix& K, const solvers::SolveOptions& opts = {});

// trace(K) / ||K||_F; the normalized form maps [1, sqrt(n)] onto [0, 1].
double spectral_ratio(const GramMatrix& K, bool normalized);

// Frobenius inner product of the two matrices over the product of their
// Frobenius norms.
double alignment(const GramMatrix& K1, const GramMatrix& K2);

// Alignment of H K1 H and H K2 H with H = I - ones/n. Errors when a centered
// input vanishes (constant-feature kernel).
double centered_alignment(const GramMatrix& K1, const GramMatrix& K2);

// Unit-diagonal normalization K_ij / sqrt(K_ii K_jj). Requires a strictly
// positive diagonal.
GramMatrix normalize_kernel(const GramMatrix& K);

double trace_norm(const GramMatrix& K);
double frobenius_norm(const GramMatrix& K);

}  // namespace mklkit::metrics

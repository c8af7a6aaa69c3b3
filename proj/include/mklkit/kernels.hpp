#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mklkit/core.hpp"

namespace mklkit::kernels {

enum class KernelKind { Linear, Hpk, MonotoneConjunctive, MonotoneDisjunctive, PSpectrum };

// One base-kernel configuration. The parameter is the HPK degree, the boolean
// arity, or the spectrum substring length; it is ignored for Linear.
struct KernelSpec {
  KernelKind kind = KernelKind::Linear;
  int parameter = 1;

  void validate() const;
  std::string name() const;

  // Parses a single spec token: "linear", "hpk:3", "mck:2", "mdk:1",
  // "spectrum:4".
  static KernelSpec parse(std::string_view token);
};

// Expands a comma-separated spec list with ranges, e.g. "hpk:1-5,linear".
std::vector<KernelSpec> parse_spec_list(std::string_view text);

// Entry (i, j) = dot(Z_i, X_j); result is Z.rows() x X.rows(). Symmetric PSD
// when called with the same matrix twice.
Eigen::MatrixXd linear_kernel(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z);

// Homogeneous polynomial kernel: entrywise degree-th power of the linear
// kernel.
Eigen::MatrixXd hpk(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z, int degree);

// Counts monotone conjunctions of exactly `arity` variables satisfied by both
// rows: binomial(dot(z, x), arity). Inputs must be 0/1 valued.
Eigen::MatrixXd monotone_conjunctive_kernel(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z,
                                            int arity);

// Counts monotone disjunctions of exactly `arity` variables satisfied by both
// rows, via inclusion-exclusion over the complements of the supports.
Eigen::MatrixXd monotone_disjunctive_kernel(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z,
                                            int arity);

// Entry (i, j) = sum over length-p substrings u of occ(u, T_i) * occ(u, S_j),
// counting overlapping occurrences. Strings are raw byte sequences.
Eigen::MatrixXd p_spectrum_kernel(const std::vector<std::string>& S,
                                  const std::vector<std::string>& T, int p);

// binomial(m, k) in 64-bit integers; 0 when m < k, throws std::overflow_error
// when the value does not fit.
std::int64_t checked_binomial(std::int64_t m, int k);

// Integer power by repeated squaring.
double powi(double base, int exponent);

// Typed entry points dispatching on the dataset kind. `gram` is the square
// train-vs-train path, `cross_kernel` evaluates test rows against training
// rows, `self_values` gives k(x, x) per row (used to normalize test kernels).
GramMatrix gram(const Dataset& data, const KernelSpec& spec);
Eigen::MatrixXd gram_values(const Dataset& data, const KernelSpec& spec);
RectKernelMatrix cross_kernel(const Dataset& train, const Dataset& test, const KernelSpec& spec);
Eigen::VectorXd self_values(const Dataset& data, const KernelSpec& spec);

MaterializedKernelList compute_list(const Dataset& data, const std::vector<KernelSpec>& specs);

namespace detail {

// Shared entry formulas so generators reproduce the direct computation
// bit for bit.
double conjunctive_entry(double dot, int arity);
double disjunctive_entry(Eigen::Index dims, double ones_x, double ones_z, double dot, int arity);

}  // namespace detail

}  // namespace mklkit::kernels

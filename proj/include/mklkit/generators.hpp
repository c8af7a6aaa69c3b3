#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mklkit/core.hpp"
#include "mklkit/kernels.hpp"

namespace mklkit::generators {

struct GeneratorOptions {
  // Keep the shared auxiliary matrix resident between accesses; off
  // reproduces it on every get.
  bool cache = true;
  // Unit-diagonal normalization of every produced kernel (applied in place,
  // no extra resident matrix).
  bool normalize = false;
};

// Lazy list of homogeneous polynomial kernels over one sample matrix. The
// linear Gram is the cached auxiliary; each access raises it entrywise to the
// requested degree into a single fresh buffer.
class HpkGenerator final : public KernelList {
 public:
  HpkGenerator(Eigen::MatrixXd X, std::vector<int> degrees, GeneratorOptions opts = {});

  std::size_t size() const override { return degrees_.size(); }
  Eigen::Index samples() const override { return X_.rows(); }
  std::shared_ptr<const GramMatrix> get(std::size_t r) override;

 private:
  Eigen::MatrixXd X_;
  std::vector<int> degrees_;
  GeneratorOptions opts_;
  std::optional<GramMatrix> linear_;
};

enum class BooleanKind { Conjunctive, Disjunctive };

// Lazy list of monotone conjunctive or disjunctive kernels. The integer
// dot-product matrix is the cached auxiliary; per-row popcounts are kept
// alongside (O(n), not metered).
class BooleanGenerator final : public KernelList {
 public:
  BooleanGenerator(Eigen::MatrixXd X, BooleanKind kind, std::vector<int> arities,
                   GeneratorOptions opts = {});

  std::size_t size() const override { return arities_.size(); }
  Eigen::Index samples() const override { return X_.rows(); }
  std::shared_ptr<const GramMatrix> get(std::size_t r) override;

 private:
  Eigen::MatrixXd X_;
  BooleanKind kind_;
  std::vector<int> arities_;
  GeneratorOptions opts_;
  Eigen::VectorXd ones_count_;
  std::optional<GramMatrix> dots_;
};

// Generic lazy list over arbitrary kernel specs. No shared auxiliary; every
// access recomputes the spec from the dataset.
class LazySpecList final : public KernelList {
 public:
  LazySpecList(Dataset data, std::vector<kernels::KernelSpec> specs, bool normalize = false);

  std::size_t size() const override { return specs_.size(); }
  Eigen::Index samples() const override { return data_.size(); }
  std::shared_ptr<const GramMatrix> get(std::size_t r) override;

 private:
  Dataset data_;
  std::vector<kernels::KernelSpec> specs_;
  bool normalize_ = false;
};

// Pulls every matrix of the list into resident storage; get becomes a
// constant-time lookup. Materializing a materialized list shares storage.
MaterializedKernelList materialize(KernelList& list);

// (live, peak) tracked Gram bytes since the last reset.
std::pair<std::int64_t, std::int64_t> meter_report();
void meter_reset();

}  // namespace mklkit::generators

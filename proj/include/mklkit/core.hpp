#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mklkit {

// Running account of tracked Gram-matrix storage. Every GramMatrix registers
// its buffer here, so the peak reflects how many n x n blocks were ever
// resident at once. Updates are atomic; lists running on different threads
// aggregate into the same account.
class AllocationMeter {
 public:
  static AllocationMeter& global();

  void add(std::int64_t bytes);
  void remove(std::int64_t bytes);

  // Restarts peak tracking from the current live count. Live bytes are never
  // cleared; they reflect storage that is actually held.
  void reset();

  std::int64_t live_bytes() const { return live_.load(); }
  std::int64_t peak_bytes() const { return peak_.load(); }

 private:
  std::atomic<std::int64_t> live_{0};
  std::atomic<std::int64_t> peak_{0};
};

// RAII registration of a byte count with the global meter. Movable; copies
// register the same amount again.
class TrackedBytes {
 public:
  TrackedBytes() = default;
  explicit TrackedBytes(std::int64_t bytes);
  TrackedBytes(const TrackedBytes& other);
  TrackedBytes(TrackedBytes&& other) noexcept;
  TrackedBytes& operator=(TrackedBytes other) noexcept;
  ~TrackedBytes();

  std::int64_t bytes() const { return bytes_; }

 private:
  std::int64_t bytes_ = 0;
};

// n x n symmetric kernel matrix. Symmetry and the diagonal sign are checked
// on construction; positive semi-definiteness is an invariant verified in
// tests, not a construction gate. Immutable once built.
class GramMatrix {
 public:
  // Validates and registers the storage with the allocation meter.
  explicit GramMatrix(Eigen::MatrixXd values);

  // Adopts storage whose registration already exists (streaming accumulators
  // hand their TrackedBytes over so the bytes are not counted twice).
  GramMatrix(Eigen::MatrixXd values, TrackedBytes tracked);

  Eigen::Index size() const { return values_.rows(); }
  const Eigen::MatrixXd& values() const { return values_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

  static std::int64_t tracked_bytes(Eigen::Index n) {
    return static_cast<std::int64_t>(n) * n * static_cast<std::int64_t>(sizeof(double));
  }

 private:
  Eigen::MatrixXd values_;
  TrackedBytes tracked_;
};

// m x n kernel evaluations of m test rows against n training rows.
class RectKernelMatrix {
 public:
  explicit RectKernelMatrix(Eigen::MatrixXd values);

  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  Eigen::MatrixXd values_;
};

// Binary class labels over {+1, -1}. Presence of both classes is required by
// margin and classifier operations, not by construction.
class Labels {
 public:
  Labels() = default;
  explicit Labels(std::vector<int> y);

  const std::vector<int>& values() const { return y_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(y_.size()); }
  int positives() const { return positives_; }
  int negatives() const { return static_cast<int>(y_.size()) - positives_; }
  bool both_classes() const { return positives_ > 0 && negatives() > 0; }
  Eigen::VectorXd as_vector() const;

 private:
  std::vector<int> y_;
  int positives_ = 0;
};

enum class DataKind { Real, Strings };

// Sample collection: an n x d real matrix or n raw byte strings, with
// optional labels.
class Dataset {
 public:
  static Dataset from_matrix(Eigen::MatrixXd X, std::optional<Labels> y = {});
  static Dataset from_strings(std::vector<std::string> rows, std::optional<Labels> y = {});

  DataKind kind() const { return kind_; }
  Eigen::Index size() const;
  Eigen::Index features() const;

  const Eigen::MatrixXd& matrix() const;
  const std::vector<std::string>& strings() const;
  const std::optional<Labels>& labels() const { return labels_; }

  // True for real data whose entries are all exactly 0 or 1.
  bool is_binary() const;

  Dataset subset(const std::vector<Eigen::Index>& rows) const;

 private:
  Dataset() = default;

  DataKind kind_ = DataKind::Real;
  Eigen::MatrixXd X_;
  std::vector<std::string> strings_;
  std::optional<Labels> labels_;
};

// Ordered source of P Gram matrices over one sample set. get() hands out
// shared ownership: lazy implementations return a fresh matrix the caller
// should release before the next access, materialized lists alias resident
// storage. Accessors are single-consumer; distinct lists may run in
// parallel.
class KernelList {
 public:
  virtual ~KernelList() = default;

  virtual std::size_t size() const = 0;
  virtual Eigen::Index samples() const = 0;
  virtual std::shared_ptr<const GramMatrix> get(std::size_t r) = 0;
};

class MaterializedKernelList final : public KernelList {
 public:
  explicit MaterializedKernelList(std::vector<std::shared_ptr<const GramMatrix>> matrices);
  explicit MaterializedKernelList(std::vector<GramMatrix> matrices);

  std::size_t size() const override { return matrices_.size(); }
  Eigen::Index samples() const override { return matrices_.front()->size(); }
  std::shared_ptr<const GramMatrix> get(std::size_t r) override;

 private:
  std::vector<std::shared_ptr<const GramMatrix>> matrices_;
};

// True iff K is symmetric within tol (relative) and its diagonal is bounded
// below by -1e-12. Pure predicate; never throws on finite input.
bool validate_gram(const Eigen::MatrixXd& K, double tol);
bool validate_gram(const GramMatrix& K, double tol);

// Weighted sum over the list, streamed one matrix at a time so a lazy list
// never has more than one output resident. Weights must be non-negative and
// match the list length.
GramMatrix combine(KernelList& list, const Eigen::VectorXd& eta);

namespace detail {

// K[i][j] / sqrt(K[i][i] * K[j][j]) in place. Throws std::domain_error on a
// non-positive diagonal entry. Shared by metrics::normalize_kernel and the
// generators so every path produces bit-identical values.
void normalize_gram_in_place(Eigen::MatrixXd& K);

}  // namespace detail

}  // namespace mklkit

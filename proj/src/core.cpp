#include "mklkit/core.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mklkit {

AllocationMeter& AllocationMeter::global() {
  static AllocationMeter meter;
  return meter;
}

void AllocationMeter::add(std::int64_t bytes) {
  const std::int64_t now = live_.fetch_add(bytes) + bytes;
  std::int64_t peak = peak_.load();
  while (now > peak && !peak_.compare_exchange_weak(peak, now)) {
  }
}

void AllocationMeter::remove(std::int64_t bytes) { live_.fetch_sub(bytes); }

void AllocationMeter::reset() { peak_.store(live_.load()); }

TrackedBytes::TrackedBytes(std::int64_t bytes) : bytes_(bytes) {
  if (bytes_ < 0) throw std::invalid_argument("TrackedBytes: negative byte count");
  if (bytes_ > 0) AllocationMeter::global().add(bytes_);
}

TrackedBytes::TrackedBytes(const TrackedBytes& other) : TrackedBytes(other.bytes_) {}

TrackedBytes::TrackedBytes(TrackedBytes&& other) noexcept : bytes_(other.bytes_) {
  other.bytes_ = 0;
}

TrackedBytes& TrackedBytes::operator=(TrackedBytes other) noexcept {
  std::swap(bytes_, other.bytes_);
  return *this;
}

TrackedBytes::~TrackedBytes() {
  if (bytes_ > 0) AllocationMeter::global().remove(bytes_);
}

namespace {

constexpr double kSymmetryTol = 1e-9;
constexpr double kDiagonalFloor = -1e-12;

void check_gram_invariants(const Eigen::MatrixXd& values) {
  if (values.rows() != values.cols()) {
    throw std::invalid_argument("GramMatrix: matrix is not square");
  }
  if (!validate_gram(values, kSymmetryTol)) {
    throw std::invalid_argument("GramMatrix: symmetry or diagonal invariant violated");
  }
}

}  // namespace

GramMatrix::GramMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  check_gram_invariants(values_);
  tracked_ = TrackedBytes(tracked_bytes(values_.rows()));
}

GramMatrix::GramMatrix(Eigen::MatrixXd values, TrackedBytes tracked)
    : values_(std::move(values)), tracked_(std::move(tracked)) {
  check_gram_invariants(values_);
}

RectKernelMatrix::RectKernelMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (!values_.allFinite()) {
    throw std::invalid_argument("RectKernelMatrix: non-finite entries");
  }
}

Labels::Labels(std::vector<int> y) : y_(std::move(y)) {
  for (int v : y_) {
    if (v == 1) {
      ++positives_;
    } else if (v != -1) {
      throw std::invalid_argument("Labels: values must be +1 or -1");
    }
  }
}

Eigen::VectorXd Labels::as_vector() const {
  Eigen::VectorXd v(size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = static_cast<double>(y_[i]);
  return v;
}

Dataset Dataset::from_matrix(Eigen::MatrixXd X, std::optional<Labels> y) {
  if (y && y->size() != X.rows()) {
    throw std::invalid_argument("Dataset: label count does not match sample count");
  }
  Dataset d;
  d.kind_ = DataKind::Real;
  d.X_ = std::move(X);
  d.labels_ = std::move(y);
  return d;
}

Dataset Dataset::from_strings(std::vector<std::string> rows, std::optional<Labels> y) {
  if (y && y->size() != static_cast<Eigen::Index>(rows.size())) {
    throw std::invalid_argument("Dataset: label count does not match sample count");
  }
  Dataset d;
  d.kind_ = DataKind::Strings;
  d.strings_ = std::move(rows);
  d.labels_ = std::move(y);
  return d;
}

Eigen::Index Dataset::size() const {
  return kind_ == DataKind::Real ? X_.rows() : static_cast<Eigen::Index>(strings_.size());
}

Eigen::Index Dataset::features() const {
  if (kind_ != DataKind::Real) {
    throw std::logic_error("Dataset: string data has no feature dimension");
  }
  return X_.cols();
}

const Eigen::MatrixXd& Dataset::matrix() const {
  if (kind_ != DataKind::Real) {
    throw std::logic_error("Dataset: no matrix view of string data");
  }
  return X_;
}

const std::vector<std::string>& Dataset::strings() const {
  if (kind_ != DataKind::Strings) {
    throw std::logic_error("Dataset: no string view of real data");
  }
  return strings_;
}

bool Dataset::is_binary() const {
  if (kind_ != DataKind::Real) return false;
  return ((X_.array() == 0.0) || (X_.array() == 1.0)).all();
}

Dataset Dataset::subset(const std::vector<Eigen::Index>& rows) const {
  std::optional<Labels> sub_labels;
  if (labels_) {
    std::vector<int> y;
    y.reserve(rows.size());
    for (Eigen::Index i : rows) y.push_back(labels_->values()[static_cast<std::size_t>(i)]);
    sub_labels = Labels(std::move(y));
  }
  if (kind_ == DataKind::Real) {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), X_.cols());
    for (std::size_t k = 0; k < rows.size(); ++k) X.row(static_cast<Eigen::Index>(k)) = X_.row(rows[k]);
    return from_matrix(std::move(X), std::move(sub_labels));
  }
  std::vector<std::string> s;
  s.reserve(rows.size());
  for (Eigen::Index i : rows) s.push_back(strings_[static_cast<std::size_t>(i)]);
  return from_strings(std::move(s), std::move(sub_labels));
}

MaterializedKernelList::MaterializedKernelList(
    std::vector<std::shared_ptr<const GramMatrix>> matrices)
    : matrices_(std::move(matrices)) {
  if (matrices_.empty()) {
    throw std::invalid_argument("MaterializedKernelList: empty list");
  }
  const Eigen::Index n = matrices_.front()->size();
  for (const auto& m : matrices_) {
    if (!m) throw std::invalid_argument("MaterializedKernelList: null entry");
    if (m->size() != n) {
      throw std::invalid_argument("MaterializedKernelList: sample counts differ");
    }
  }
}

MaterializedKernelList::MaterializedKernelList(std::vector<GramMatrix> matrices)
    : MaterializedKernelList([&] {
        std::vector<std::shared_ptr<const GramMatrix>> ptrs;
        ptrs.reserve(matrices.size());
        for (auto& m : matrices) ptrs.push_back(std::make_shared<const GramMatrix>(std::move(m)));
        return ptrs;
      }()) {}

std::shared_ptr<const GramMatrix> MaterializedKernelList::get(std::size_t r) {
  if (r >= matrices_.size()) {
    throw std::out_of_range("MaterializedKernelList: index out of range");
  }
  return matrices_[r];
}

bool validate_gram(const Eigen::MatrixXd& K, double tol) {
  if (K.rows() != K.cols()) return false;
  const Eigen::Index n = K.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(K(i, i) >= kDiagonalFloor)) return false;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (!(std::abs(K(i, j) - K(j, i)) <= tol * (1.0 + std::abs(K(i, j))))) return false;
    }
  }
  return true;
}

bool validate_gram(const GramMatrix& K, double tol) { return validate_gram(K.values(), tol); }

GramMatrix combine(KernelList& list, const Eigen::VectorXd& eta) {
  if (static_cast<std::size_t>(eta.size()) != list.size()) {
    throw std::invalid_argument("combine: weight count does not match list length");
  }
  if ((eta.array() < 0.0).any()) {
    throw std::invalid_argument("combine: negative weight");
  }
  const Eigen::Index n = list.samples();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  TrackedBytes reg(GramMatrix::tracked_bytes(n));
  for (std::size_t r = 0; r < list.size(); ++r) {
    auto K = list.get(r);
    acc.noalias() += eta[static_cast<Eigen::Index>(r)] * K->values();
  }
  return GramMatrix(std::move(acc), std::move(reg));
}

namespace detail {

void normalize_gram_in_place(Eigen::MatrixXd& K) {
  const Eigen::Index n = K.rows();
  Eigen::VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = K(i, i);
    if (!(d > 0.0)) {
      throw std::domain_error("normalize_kernel: non-positive diagonal entry");
    }
    scale[i] = std::sqrt(d);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      K(i, j) /= scale[i] * scale[j];
    }
  }
}

}  // namespace detail

}  // namespace mklkit

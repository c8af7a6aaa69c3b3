#include "mklkit/generators.hpp"

#include <stdexcept>

namespace mklkit::generators {

namespace {

void check_index(std::size_t r, std::size_t size) {
  if (r >= size) throw std::out_of_range("KernelList: index out of range");
}

}  // namespace

HpkGenerator::HpkGenerator(Eigen::MatrixXd X, std::vector<int> degrees, GeneratorOptions opts)
    : X_(std::move(X)), degrees_(std::move(degrees)), opts_(opts) {
  if (degrees_.empty()) {
    throw std::invalid_argument("HpkGenerator: empty degree list");
  }
  for (int d : degrees_) {
    if (d < 1) throw std::invalid_argument("HpkGenerator: degrees must be >= 1");
  }
}

std::shared_ptr<const GramMatrix> HpkGenerator::get(std::size_t r) {
  check_index(r, degrees_.size());
  const int degree = degrees_[r];
  Eigen::MatrixXd out;
  if (opts_.cache) {
    if (!linear_) linear_.emplace(Eigen::MatrixXd(X_ * X_.transpose()));
    out = linear_->values();
  } else {
    out = X_ * X_.transpose();
  }
  TrackedBytes reg(GramMatrix::tracked_bytes(out.rows()));
  if (degree > 1) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        out(i, j) = kernels::powi(out(i, j), degree);
      }
    }
  }
  if (opts_.normalize) detail::normalize_gram_in_place(out);
  return std::make_shared<const GramMatrix>(std::move(out), std::move(reg));
}

BooleanGenerator::BooleanGenerator(Eigen::MatrixXd X, BooleanKind kind, std::vector<int> arities,
                                   GeneratorOptions opts)
    : X_(std::move(X)), kind_(kind), arities_(std::move(arities)), opts_(opts) {
  if (arities_.empty()) {
    throw std::invalid_argument("BooleanGenerator: empty arity list");
  }
  if (!((X_.array() == 0.0) || (X_.array() == 1.0)).all()) {
    throw std::invalid_argument("BooleanGenerator: input is not 0/1 valued");
  }
  for (int a : arities_) {
    if (a < 1 || a > X_.cols()) {
      throw std::invalid_argument("BooleanGenerator: arity out of range");
    }
  }
  ones_count_ = X_.rowwise().sum();
}

std::shared_ptr<const GramMatrix> BooleanGenerator::get(std::size_t r) {
  check_index(r, arities_.size());
  const int arity = arities_[r];
  Eigen::MatrixXd out;
  if (opts_.cache) {
    if (!dots_) dots_.emplace(Eigen::MatrixXd(X_ * X_.transpose()));
    out = dots_->values();
  } else {
    out = X_ * X_.transpose();
  }
  TrackedBytes reg(GramMatrix::tracked_bytes(out.rows()));
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      out(i, j) = kind_ == BooleanKind::Conjunctive
                      ? kernels::detail::conjunctive_entry(out(i, j), arity)
                      : kernels::detail::disjunctive_entry(X_.cols(), ones_count_[j],
                                                           ones_count_[i], out(i, j), arity);
    }
  }
  if (opts_.normalize) detail::normalize_gram_in_place(out);
  return std::make_shared<const GramMatrix>(std::move(out), std::move(reg));
}

LazySpecList::LazySpecList(Dataset data, std::vector<kernels::KernelSpec> specs, bool normalize)
    : data_(std::move(data)), specs_(std::move(specs)), normalize_(normalize) {
  if (specs_.empty()) {
    throw std::invalid_argument("LazySpecList: empty spec list");
  }
  for (const auto& spec : specs_) spec.validate();
}

std::shared_ptr<const GramMatrix> LazySpecList::get(std::size_t r) {
  check_index(r, specs_.size());
  Eigen::MatrixXd out = kernels::gram_values(data_, specs_[r]);
  TrackedBytes reg(GramMatrix::tracked_bytes(out.rows()));
  if (normalize_) detail::normalize_gram_in_place(out);
  return std::make_shared<const GramMatrix>(std::move(out), std::move(reg));
}

MaterializedKernelList materialize(KernelList& list) {
  std::vector<std::shared_ptr<const GramMatrix>> matrices;
  matrices.reserve(list.size());
  for (std::size_t r = 0; r < list.size(); ++r) matrices.push_back(list.get(r));
  return MaterializedKernelList(std::move(matrices));
}

std::pair<std::int64_t, std::int64_t> meter_report() {
  auto& meter = AllocationMeter::global();
  return {meter.live_bytes(), meter.peak_bytes()};
}

void meter_reset() { AllocationMeter::global().reset(); }

}  // namespace mklkit::generators

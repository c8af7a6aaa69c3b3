#include "mklkit/kernels.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace mklkit::kernels {

namespace {

int parse_positive_int(std::string_view s, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value < 1) {
    throw std::invalid_argument("kernel spec: bad " + std::string(what) + " '" + std::string(s) +
                                "'");
  }
  return value;
}

void require_binary(const Eigen::MatrixXd& M, std::string_view who) {
  if (!((M.array() == 0.0) || (M.array() == 1.0)).all()) {
    throw std::invalid_argument(std::string(who) + ": input is not 0/1 valued");
  }
}

void require_same_dim(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z) {
  if (X.cols() != Z.cols()) {
    throw std::invalid_argument("kernel: feature dimensions differ");
  }
}

// Occurrence counts of the length-p substrings of s.
std::unordered_map<std::string_view, std::int64_t> spectrum_index(const std::string& s, int p) {
  std::unordered_map<std::string_view, std::int64_t> counts;
  const auto len = static_cast<std::ptrdiff_t>(s.size());
  for (std::ptrdiff_t i = 0; i + p <= len; ++i) {
    ++counts[std::string_view(s).substr(static_cast<std::size_t>(i), static_cast<std::size_t>(p))];
  }
  return counts;
}

}  // namespace

void KernelSpec::validate() const {
  if (parameter < 1) {
    throw std::invalid_argument("kernel spec: parameter must be a positive integer");
  }
}

std::string KernelSpec::name() const {
  switch (kind) {
    case KernelKind::Linear:
      return "linear";
    case KernelKind::Hpk:
      return "hpk:" + std::to_string(parameter);
    case KernelKind::MonotoneConjunctive:
      return "mck:" + std::to_string(parameter);
    case KernelKind::MonotoneDisjunctive:
      return "mdk:" + std::to_string(parameter);
    case KernelKind::PSpectrum:
      return "spectrum:" + std::to_string(parameter);
  }
  throw std::logic_error("KernelSpec: unknown kind");
}

KernelSpec KernelSpec::parse(std::string_view token) {
  const auto colon = token.find(':');
  const std::string_view head = token.substr(0, colon);
  KernelSpec spec;
  if (head == "linear") {
    spec.kind = KernelKind::Linear;
    if (colon != std::string_view::npos) {
      throw std::invalid_argument("kernel spec: 'linear' takes no parameter");
    }
    return spec;
  }
  if (head == "hpk") {
    spec.kind = KernelKind::Hpk;
  } else if (head == "mck") {
    spec.kind = KernelKind::MonotoneConjunctive;
  } else if (head == "mdk") {
    spec.kind = KernelKind::MonotoneDisjunctive;
  } else if (head == "spectrum") {
    spec.kind = KernelKind::PSpectrum;
  } else {
    throw std::invalid_argument("kernel spec: unknown kind '" + std::string(head) + "'");
  }
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("kernel spec: '" + std::string(head) + "' needs a parameter");
  }
  spec.parameter = parse_positive_int(token.substr(colon + 1), "parameter");
  return spec;
}

std::vector<KernelSpec> parse_spec_list(std::string_view text) {
  std::vector<KernelSpec> specs;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(start, end - start);
    if (token.empty()) {
      throw std::invalid_argument("kernel spec list: empty token");
    }
    const auto dash = token.find('-', token.find(':') == std::string_view::npos
                                          ? 0
                                          : token.find(':') + 1);
    if (token.find(':') != std::string_view::npos && dash != std::string_view::npos) {
      const auto colon = token.find(':');
      const std::string_view head = token.substr(0, colon + 1);
      const int lo = parse_positive_int(token.substr(colon + 1, dash - colon - 1), "range start");
      const int hi = parse_positive_int(token.substr(dash + 1), "range end");
      if (hi < lo) {
        throw std::invalid_argument("kernel spec: descending range");
      }
      for (int v = lo; v <= hi; ++v) {
        specs.push_back(KernelSpec::parse(std::string(head) + std::to_string(v)));
      }
    } else {
      specs.push_back(KernelSpec::parse(token));
    }
    start = end + 1;
  }
  return specs;
}

Eigen::MatrixXd linear_kernel(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z) {
  require_same_dim(X, Z);
  return Z * X.transpose();
}

double powi(double base, int exponent) {
  double result = 1.0;
  double factor = base;
  for (int e = exponent; e > 0; e /= 2) {
    if (e % 2 == 1) result *= factor;
    factor *= factor;
  }
  return result;
}

Eigen::MatrixXd hpk(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z, int degree) {
  if (degree < 1) {
    throw std::invalid_argument("hpk: degree must be >= 1");
  }
  Eigen::MatrixXd K = linear_kernel(X, Z);
  if (degree == 1) return K;
  for (Eigen::Index i = 0; i < K.rows(); ++i) {
    for (Eigen::Index j = 0; j < K.cols(); ++j) {
      K(i, j) = powi(K(i, j), degree);
    }
  }
  return K;
}

std::int64_t checked_binomial(std::int64_t m, int k) {
  if (k < 0) throw std::invalid_argument("checked_binomial: negative k");
  if (m < k) return 0;
  if (k > m - k) k = static_cast<int>(m - k);
  std::int64_t result = 1;
  for (int i = 0; i < k; ++i) {
    // result * (m - i) stays an exact integer after the division below, but
    // the product itself can exceed 64 bits; widen and check.
    const __int128 wide = static_cast<__int128>(result) * (m - i);
    const __int128 next = wide / (i + 1);
    if (next > std::numeric_limits<std::int64_t>::max()) {
      throw std::overflow_error("checked_binomial: value exceeds 64-bit range");
    }
    result = static_cast<std::int64_t>(next);
  }
  return result;
}

namespace detail {

double conjunctive_entry(double dot, int arity) {
  return static_cast<double>(checked_binomial(std::llround(dot), arity));
}

double disjunctive_entry(Eigen::Index dims, double ones_x, double ones_z, double dot, int arity) {
  const auto d = static_cast<std::int64_t>(dims);
  const auto nx = std::llround(ones_x);
  const auto nz = std::llround(ones_z);
  const auto shared = std::llround(dot);
  const std::int64_t count = checked_binomial(d, arity) - checked_binomial(d - nx, arity) -
                             checked_binomial(d - nz, arity) +
                             checked_binomial(d - nx - nz + shared, arity);
  return static_cast<double>(count);
}

}  // namespace detail

Eigen::MatrixXd monotone_conjunctive_kernel(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z,
                                            int arity) {
  require_same_dim(X, Z);
  require_binary(X, "monotone_conjunctive_kernel");
  require_binary(Z, "monotone_conjunctive_kernel");
  if (arity < 1 || arity > X.cols()) {
    throw std::invalid_argument("monotone_conjunctive_kernel: arity out of range");
  }
  Eigen::MatrixXd K = linear_kernel(X, Z);
  for (Eigen::Index i = 0; i < K.rows(); ++i) {
    for (Eigen::Index j = 0; j < K.cols(); ++j) {
      K(i, j) = detail::conjunctive_entry(K(i, j), arity);
    }
  }
  return K;
}

Eigen::MatrixXd monotone_disjunctive_kernel(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z,
                                            int arity) {
  require_same_dim(X, Z);
  require_binary(X, "monotone_disjunctive_kernel");
  require_binary(Z, "monotone_disjunctive_kernel");
  if (arity < 1 || arity > X.cols()) {
    throw std::invalid_argument("monotone_disjunctive_kernel: arity out of range");
  }
  const Eigen::VectorXd ones_x = X.rowwise().sum();
  const Eigen::VectorXd ones_z = Z.rowwise().sum();
  Eigen::MatrixXd K = linear_kernel(X, Z);
  for (Eigen::Index i = 0; i < K.rows(); ++i) {
    for (Eigen::Index j = 0; j < K.cols(); ++j) {
      K(i, j) = detail::disjunctive_entry(X.cols(), ones_x[j], ones_z[i], K(i, j), arity);
    }
  }
  return K;
}

Eigen::MatrixXd p_spectrum_kernel(const std::vector<std::string>& S,
                                  const std::vector<std::string>& T, int p) {
  if (p < 1) {
    throw std::invalid_argument("p_spectrum_kernel: p must be >= 1");
  }
  std::vector<std::unordered_map<std::string_view, std::int64_t>> idx_s;
  idx_s.reserve(S.size());
  for (const auto& s : S) idx_s.push_back(spectrum_index(s, p));
  std::vector<std::unordered_map<std::string_view, std::int64_t>> idx_t;
  idx_t.reserve(T.size());
  for (const auto& t : T) idx_t.push_back(spectrum_index(t, p));

  Eigen::MatrixXd K(static_cast<Eigen::Index>(T.size()), static_cast<Eigen::Index>(S.size()));
  for (std::size_t i = 0; i < T.size(); ++i) {
    for (std::size_t j = 0; j < S.size(); ++j) {
      const auto& small = idx_t[i].size() <= idx_s[j].size() ? idx_t[i] : idx_s[j];
      const auto& large = idx_t[i].size() <= idx_s[j].size() ? idx_s[j] : idx_t[i];
      std::int64_t sum = 0;
      for (const auto& [u, count] : small) {
        const auto it = large.find(u);
        if (it != large.end()) sum += count * it->second;
      }
      K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(sum);
    }
  }
  return K;
}

namespace {

Eigen::MatrixXd compute_values(const Dataset& train, const Dataset& eval, const KernelSpec& spec) {
  spec.validate();
  if (spec.kind == KernelKind::PSpectrum) {
    if (train.kind() != DataKind::Strings || eval.kind() != DataKind::Strings) {
      throw std::invalid_argument("spectrum kernel requires string data");
    }
    return p_spectrum_kernel(train.strings(), eval.strings(), spec.parameter);
  }
  if (train.kind() != DataKind::Real || eval.kind() != DataKind::Real) {
    throw std::invalid_argument(spec.name() + " requires real-valued data");
  }
  switch (spec.kind) {
    case KernelKind::Linear:
      return linear_kernel(train.matrix(), eval.matrix());
    case KernelKind::Hpk:
      return hpk(train.matrix(), eval.matrix(), spec.parameter);
    case KernelKind::MonotoneConjunctive:
      return monotone_conjunctive_kernel(train.matrix(), eval.matrix(), spec.parameter);
    case KernelKind::MonotoneDisjunctive:
      return monotone_disjunctive_kernel(train.matrix(), eval.matrix(), spec.parameter);
    default:
      throw std::logic_error("compute_values: unreachable");
  }
}

}  // namespace

Eigen::MatrixXd gram_values(const Dataset& data, const KernelSpec& spec) {
  return compute_values(data, data, spec);
}

GramMatrix gram(const Dataset& data, const KernelSpec& spec) {
  return GramMatrix(gram_values(data, spec));
}

RectKernelMatrix cross_kernel(const Dataset& train, const Dataset& test, const KernelSpec& spec) {
  if (train.kind() != test.kind()) {
    throw std::invalid_argument("cross_kernel: train and test data kinds differ");
  }
  return RectKernelMatrix(compute_values(train, test, spec));
}

Eigen::VectorXd self_values(const Dataset& data, const KernelSpec& spec) {
  spec.validate();
  const Eigen::Index n = data.size();
  Eigen::VectorXd v(n);
  if (spec.kind == KernelKind::PSpectrum) {
    if (data.kind() != DataKind::Strings) {
      throw std::invalid_argument("spectrum kernel requires string data");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto idx = spectrum_index(data.strings()[static_cast<std::size_t>(i)], spec.parameter);
      std::int64_t sum = 0;
      for (const auto& [u, count] : idx) sum += count * count;
      v[i] = static_cast<double>(sum);
    }
    return v;
  }
  const Eigen::MatrixXd& X = data.matrix();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double dot = X.row(i).dot(X.row(i));
    switch (spec.kind) {
      case KernelKind::Linear:
        v[i] = dot;
        break;
      case KernelKind::Hpk:
        v[i] = powi(dot, spec.parameter);
        break;
      case KernelKind::MonotoneConjunctive:
        v[i] = detail::conjunctive_entry(dot, spec.parameter);
        break;
      case KernelKind::MonotoneDisjunctive:
        v[i] = detail::disjunctive_entry(X.cols(), dot, dot, dot, spec.parameter);
        break;
      default:
        throw std::logic_error("self_values: unreachable");
    }
  }
  return v;
}

MaterializedKernelList compute_list(const Dataset& data, const std::vector<KernelSpec>& specs) {
  if (specs.empty()) {
    throw std::invalid_argument("compute_list: empty spec list");
  }
  std::vector<std::shared_ptr<const GramMatrix>> matrices;
  matrices.reserve(specs.size());
  for (const auto& spec : specs) {
    matrices.push_back(std::make_shared<const GramMatrix>(gram(data, spec)));
  }
  return MaterializedKernelList(std::move(matrices));
}

}  // namespace mklkit::kernels

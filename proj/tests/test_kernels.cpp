#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "mklkit/kernels.hpp"
#include "oracles.hpp"

using namespace mklkit;
using namespace mklkit::kernels;

namespace {

bool psd_within_tolerance(const Eigen::MatrixXd& K) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K);
  const double floor = -1e-8 * std::max(1.0, K.diagonal().maxCoeff());
  return eig.eigenvalues().minCoeff() >= floor;
}

}  // namespace

TEST_CASE("linear kernel on orthonormal rows is the identity") {
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
  CHECK(linear_kernel(I, I) == I);
}

TEST_CASE("linear kernel basic arithmetic") {
  Eigen::MatrixXd X(1, 1);
  X << 2;
  CHECK(linear_kernel(X, X)(0, 0) == 4.0);
  Eigen::MatrixXd A(1, 2), B(1, 2);
  A << 1, 2;
  B << 3, 1;
  CHECK(linear_kernel(A, B)(0, 0) == 5.0);
}

TEST_CASE("linear kernel rejects mismatched dimensions") {
  CHECK_THROWS_AS(linear_kernel(Eigen::MatrixXd::Ones(2, 2), Eigen::MatrixXd::Ones(2, 3)),
                  std::invalid_argument);
}

TEST_CASE("hpk degree 1 equals the linear kernel") {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd X = oracle::random_matrix(rng, 4, 3);
  CHECK(hpk(X, X, 1) == linear_kernel(X, X));
}

TEST_CASE("hpk squares the dot products") {
  Eigen::MatrixXd X(2, 2);
  X << 1, 2, 3, 1;
  Eigen::MatrixXd expected(2, 2);
  expected << 25, 25, 25, 100;
  CHECK(hpk(X, X, 2) == expected);
}

TEST_CASE("hpk of the zero vector vanishes and bad degrees throw") {
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 2);
  CHECK(hpk(zero, zero, 5)(0, 0) == 0.0);
  CHECK_THROWS_AS(hpk(zero, zero, 0), std::invalid_argument);
}

TEST_CASE("hpk entries equal linear entries raised to the degree") {
  std::mt19937_64 rng(4);
  for (int d = 1; d <= 5; ++d) {
    const Eigen::MatrixXd X = oracle::random_matrix(rng, 6, 4);
    const Eigen::MatrixXd L = linear_kernel(X, X);
    const Eigen::MatrixXd K = hpk(X, X, d);
    for (Eigen::Index i = 0; i < K.rows(); ++i) {
      for (Eigen::Index j = 0; j < K.cols(); ++j) {
        const double expected = std::pow(L(i, j), d);
        CHECK(std::abs(K(i, j) - expected) <= 1e-9 * (1.0 + std::abs(expected)));
      }
    }
  }
}

TEST_CASE("conjunctive kernel spec examples") {
  Eigen::MatrixXd all_ones(1, 3);
  all_ones << 1, 1, 1;
  CHECK(monotone_conjunctive_kernel(all_ones, all_ones, 2)(0, 0) == 3.0);
  CHECK(oracle::count_conjunctions(all_ones.row(0), all_ones.row(0), 2) == 3);

  Eigen::MatrixXd pair(2, 3);
  pair << 1, 1, 0, 0, 1, 1;
  const Eigen::MatrixXd K = monotone_conjunctive_kernel(pair, pair, 2);
  CHECK(K(0, 1) == 0.0);
  CHECK(oracle::count_conjunctions(pair.row(0), pair.row(1), 2) == 0);
}

TEST_CASE("conjunctive kernel with arity 1 is the dot product") {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXd X = oracle::random_binary_matrix(rng, 6, 5);
  CHECK(monotone_conjunctive_kernel(X, X, 1) == linear_kernel(X, X));
}

TEST_CASE("disjunctive kernel spec examples") {
  Eigen::MatrixXd disjoint(2, 2);
  disjoint << 1, 0, 0, 1;
  const Eigen::MatrixXd K = monotone_disjunctive_kernel(disjoint, disjoint, 1);
  CHECK(K(0, 1) == 0.0);
  CHECK(K(0, 0) == 1.0);
  CHECK(oracle::count_disjunctions(disjoint.row(0), disjoint.row(1), 1) == 0);
  CHECK(oracle::count_disjunctions(disjoint.row(0), disjoint.row(0), 1) == 1);

  Eigen::MatrixXd full(1, 3);
  full << 1, 1, 1;
  CHECK(monotone_disjunctive_kernel(full, full, 3)(0, 0) == 1.0);
}

TEST_CASE("boolean kernels match the enumeration oracle") {
  std::mt19937_64 rng(6);
  int cases = 0;
  while (cases < 220) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 7);
    const Eigen::Index d = 3 + static_cast<Eigen::Index>(rng() % 8);
    const int arity = 1 + static_cast<int>(rng() % 3);
    const Eigen::MatrixXd X = oracle::random_binary_matrix(rng, n, d);
    const Eigen::MatrixXd Kc = monotone_conjunctive_kernel(X, X, arity);
    const Eigen::MatrixXd Kd = monotone_disjunctive_kernel(X, X, arity);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        CHECK(Kc(i, j) == static_cast<double>(oracle::count_conjunctions(X.row(i), X.row(j), arity)));
        CHECK(Kd(i, j) == static_cast<double>(oracle::count_disjunctions(X.row(i), X.row(j), arity)));
        ++cases;
      }
    }
  }
}

TEST_CASE("boolean kernels reject bad inputs") {
  Eigen::MatrixXd real(1, 2);
  real << 0.5, 1;
  CHECK_THROWS_AS(monotone_conjunctive_kernel(real, real, 1), std::invalid_argument);
  Eigen::MatrixXd binary(1, 2);
  binary << 1, 0;
  CHECK_THROWS_AS(monotone_conjunctive_kernel(binary, binary, 3), std::invalid_argument);
  CHECK_THROWS_AS(monotone_disjunctive_kernel(binary, binary, 0), std::invalid_argument);
}

TEST_CASE("checked_binomial handles edges and overflows loudly") {
  CHECK(checked_binomial(10, 3) == 120);
  CHECK(checked_binomial(2, 3) == 0);
  CHECK(checked_binomial(0, 0) == 1);
  CHECK(checked_binomial(61, 30) == 232714176627630544LL);
  CHECK_THROWS_AS(checked_binomial(130, 65), std::overflow_error);
}

TEST_CASE("disjunctive kernel reports binomial overflow instead of wrapping") {
  const Eigen::MatrixXd X = Eigen::MatrixXd::Ones(1, 130);
  CHECK_THROWS_AS(monotone_disjunctive_kernel(X, X, 65), std::overflow_error);
}

TEST_CASE("spectrum kernel spec examples") {
  CHECK(p_spectrum_kernel({"ab"}, {"cd"}, 1)(0, 0) == 0.0);
  CHECK(p_spectrum_kernel({"abab"}, {"abab"}, 2)(0, 0) == 5.0);
  CHECK(oracle::naive_spectrum("abab", "abab", 2) == 5);
  CHECK(p_spectrum_kernel({"aaa"}, {"aa"}, 2)(0, 0) == 2.0);
  CHECK(oracle::naive_spectrum("aaa", "aa", 2) == 2);
}

TEST_CASE("spectrum kernel handles short strings and bad p") {
  CHECK(p_spectrum_kernel({"a"}, {"abc"}, 2)(0, 0) == 0.0);
  CHECK(p_spectrum_kernel({""}, {""}, 1)(0, 0) == 0.0);
  CHECK_THROWS_AS(p_spectrum_kernel({"a"}, {"a"}, 0), std::invalid_argument);
}

TEST_CASE("spectrum kernel matches naive double-loop counting") {
  std::mt19937_64 rng(7);
  int cases = 0;
  while (cases < 220) {
    const int p = 1 + static_cast<int>(rng() % 4);
    std::vector<std::string> S{oracle::random_string(rng, 12, 3),
                               oracle::random_string(rng, 12, 3)};
    std::vector<std::string> T{oracle::random_string(rng, 12, 3),
                               oracle::random_string(rng, 12, 3)};
    const Eigen::MatrixXd K = p_spectrum_kernel(S, T, p);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CHECK(K(i, j) == static_cast<double>(oracle::naive_spectrum(
                             T[static_cast<std::size_t>(i)], S[static_cast<std::size_t>(j)], p)));
        ++cases;
      }
    }
  }
}

TEST_CASE("every kernel kind yields a PSD Gram on its own data") {
  std::mt19937_64 rng(8);
  const Eigen::MatrixXd X = oracle::random_matrix(rng, 30, 6);
  CHECK(psd_within_tolerance(linear_kernel(X, X)));
  CHECK(psd_within_tolerance(hpk(X, X, 3)));
  const Eigen::MatrixXd B = oracle::random_binary_matrix(rng, 30, 8);
  CHECK(psd_within_tolerance(monotone_conjunctive_kernel(B, B, 2)));
  CHECK(psd_within_tolerance(monotone_disjunctive_kernel(B, B, 2)));
  std::vector<std::string> strings;
  for (int i = 0; i < 30; ++i) strings.push_back(oracle::random_string(rng, 12, 3));
  CHECK(psd_within_tolerance(p_spectrum_kernel(strings, strings, 2)));
}

TEST_CASE("kernel specs parse, validate, and round-trip") {
  const KernelSpec hpk3 = KernelSpec::parse("hpk:3");
  CHECK(hpk3.kind == KernelKind::Hpk);
  CHECK(hpk3.parameter == 3);
  CHECK(hpk3.name() == "hpk:3");
  CHECK(KernelSpec::parse("linear").kind == KernelKind::Linear);
  CHECK_THROWS_AS(KernelSpec::parse("linear:2"), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec::parse("hpk"), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec::parse("hpk:0"), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec::parse("rbf:1"), std::invalid_argument);

  const auto specs = parse_spec_list("hpk:1-3,linear,spectrum:2");
  REQUIRE(specs.size() == 5);
  CHECK(specs[0].name() == "hpk:1");
  CHECK(specs[2].name() == "hpk:3");
  CHECK(specs[3].name() == "linear");
  CHECK(specs[4].name() == "spectrum:2");
  CHECK_THROWS_AS(parse_spec_list("hpk:5-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec_list(""), std::invalid_argument);
}

TEST_CASE("compute_list follows the specs in order") {
  Eigen::MatrixXd X(2, 2);
  X << 1, 0, 0, 1;
  const Dataset data = Dataset::from_matrix(X);
  auto list = compute_list(data, parse_spec_list("hpk:1"));
  CHECK(list.size() == 1);
  CHECK(list.get(0)->values() == Eigen::MatrixXd::Identity(2, 2));

  std::mt19937_64 rng(9);
  const Dataset random = Dataset::from_matrix(oracle::random_matrix(rng, 5, 3));
  auto hpks = compute_list(random, parse_spec_list("hpk:1-3"));
  const Eigen::MatrixXd base = hpks.get(0)->values();
  for (std::size_t r = 0; r < 3; ++r) {
    const Eigen::MatrixXd K = hpks.get(r)->values();
    for (Eigen::Index i = 0; i < K.rows(); ++i) {
      for (Eigen::Index j = 0; j < K.cols(); ++j) {
        CHECK(K(i, j) ==
              doctest::Approx(std::pow(base(i, j), static_cast<double>(r + 1))).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("compute_list of boolean specs matches the enumeration oracle") {
  std::mt19937_64 rng(10);
  const Eigen::MatrixXd B = oracle::random_binary_matrix(rng, 8, 6);
  const Dataset data = Dataset::from_matrix(B);
  auto list = compute_list(data, parse_spec_list("mck:1-3"));
  for (std::size_t r = 0; r < 3; ++r) {
    const auto K = list.get(r);
    for (Eigen::Index i = 0; i < 8; ++i) {
      for (Eigen::Index j = 0; j < 8; ++j) {
        CHECK((*K)(i, j) == static_cast<double>(oracle::count_conjunctions(
                                B.row(i), B.row(j), static_cast<int>(r + 1))));
      }
    }
  }
}

TEST_CASE("compute_list rejects spec and data-kind mismatches") {
  const Dataset strings = Dataset::from_strings({"ab", "ba"});
  CHECK_THROWS_AS(compute_list(strings, parse_spec_list("hpk:1")), std::invalid_argument);
  Eigen::MatrixXd real(2, 2);
  real << 0.5, 1, 1, 0;
  const Dataset data = Dataset::from_matrix(real);
  CHECK_THROWS_AS(compute_list(data, parse_spec_list("spectrum:2")), std::invalid_argument);
  CHECK_THROWS_AS(compute_list(data, parse_spec_list("mck:1")), std::invalid_argument);
}

TEST_CASE("self values agree with the gram diagonal") {
  std::mt19937_64 rng(13);
  const Dataset real = Dataset::from_matrix(oracle::random_matrix(rng, 6, 4));
  for (const char* spec_text : {"linear", "hpk:3"}) {
    const auto spec = KernelSpec::parse(spec_text);
    const Eigen::VectorXd diag = gram(real, spec).values().diagonal();
    const Eigen::VectorXd self = self_values(real, spec);
    CHECK((diag - self).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + diag.cwiseAbs().maxCoeff()));
  }
  const Dataset strings = Dataset::from_strings({"abab", "aa", ""});
  const auto spec = KernelSpec::parse("spectrum:2");
  CHECK(self_values(strings, spec) == gram(strings, spec).values().diagonal());
}

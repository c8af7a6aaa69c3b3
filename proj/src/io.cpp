#include "mklkit/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mklkit::io {

namespace {

using json = nlohmann::ordered_json;

int parse_label_token(const std::string& token, std::size_t line_no) {
  if (token == "+1" || token == "1") return 1;
  if (token == "-1") return -1;
  throw std::runtime_error("libsvm line " + std::to_string(line_no) + ": bad label '" + token +
                           "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double next_gaussian(std::mt19937_64& rng, bool& has_spare, double& spare) {
  if (has_spare) {
    has_spare = false;
    return spare;
  }
  // Box-Muller on 53-bit uniforms; pinned here so the stream does not depend
  // on the standard library's distribution implementation.
  double u1 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare = radius * std::sin(angle);
  has_spare = true;
  return radius * std::cos(angle);
}

json specs_to_json(const std::vector<kernels::KernelSpec>& specs) {
  json arr = json::array();
  for (const auto& s : specs) arr.push_back(s.name());
  return arr;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const auto& x : arr) v[i++] = x.get<double>();
  return v;
}

json dataset_to_json(const Dataset& data) {
  json j;
  if (data.kind() == DataKind::Strings) {
    j["kind"] = "strings";
    j["rows"] = data.strings();
  } else {
    j["kind"] = "real";
    json rows = json::array();
    const auto& X = data.matrix();
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < X.cols(); ++k) row.push_back(X(i, k));
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["features"] = X.cols();
  }
  return j;
}

Dataset dataset_from_json(const json& j) {
  if (j.at("kind") == "strings") {
    return Dataset::from_strings(j.at("rows").get<std::vector<std::string>>());
  }
  const auto& rows = j.at("rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = j.at("features").get<Eigen::Index>();
  Eigen::MatrixXd X(n, d);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index k = 0;
    for (const auto& x : row) X(i, k++) = x.get<double>();
    ++i;
  }
  return Dataset::from_matrix(std::move(X));
}

}  // namespace

Dataset parse_libsvm(std::istream& in, std::optional<int> expected_dim) {
  std::vector<int> labels;
  std::vector<std::vector<std::pair<int, double>>> rows;
  int max_index = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;  // blank line
    labels.push_back(parse_label_token(token, line_no));
    std::vector<std::pair<int, double>> row;
    int previous_index = 0;
    while (fields >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == token.size()) {
        throw std::runtime_error("libsvm line " + std::to_string(line_no) + ": malformed pair '" +
                                 token + "'");
      }
      int index = 0;
      double value = 0.0;
      try {
        std::size_t used = 0;
        index = std::stoi(token.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("trailing");
        const std::string value_text = token.substr(colon + 1);
        value = std::stod(value_text, &used);
        if (used != value_text.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw std::runtime_error("libsvm line " + std::to_string(line_no) + ": malformed pair '" +
                                 token + "'");
      }
      if (index < 1) {
        throw std::runtime_error("libsvm line " + std::to_string(line_no) +
                                 ": feature index must be >= 1");
      }
      if (index <= previous_index) {
        throw std::runtime_error("libsvm line " + std::to_string(line_no) +
                                 ": feature indices must be strictly increasing");
      }
      if (expected_dim && index > *expected_dim) {
        throw std::runtime_error("libsvm line " + std::to_string(line_no) + ": feature index " +
                                 std::to_string(index) + " exceeds the expected dimension " +
                                 std::to_string(*expected_dim));
      }
      previous_index = index;
      max_index = std::max(max_index, index);
      row.emplace_back(index, value);
    }
    rows.push_back(std::move(row));
  }

  const int d = expected_dim.value_or(max_index);
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& [index, value] : rows[static_cast<std::size_t>(i)]) {
      X(i, index - 1) = value;
    }
  }
  return Dataset::from_matrix(std::move(X), Labels(std::move(labels)));
}

void write_libsvm(std::ostream& out, const Dataset& data) {
  if (data.kind() != DataKind::Real) {
    throw std::invalid_argument("write_libsvm: only real-valued data has a libsvm form");
  }
  if (!data.labels()) {
    throw std::invalid_argument("write_libsvm: labels are required");
  }
  const auto& X = data.matrix();
  const auto& y = data.labels()->values();
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    out << (y[static_cast<std::size_t>(i)] == 1 ? "+1" : "-1");
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      if (X(i, j) != 0.0) {
        out << ' ' << (j + 1) << ':' << format_double(X(i, j));
      }
    }
    out << '\n';
  }
}

std::vector<std::string> read_string_lines(std::istream& in) {
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    rows.push_back(line);
  }
  return rows;
}

Labels read_label_lines(std::istream& in) {
  std::vector<int> y;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    y.push_back(parse_label_token(line, line_no));
  }
  return Labels(std::move(y));
}

Dataset make_two_gaussians(int n, int d, std::uint64_t seed, double margin) {
  if (n < 2) {
    throw std::invalid_argument("make_two_gaussians: n must be >= 2");
  }
  if (d < 1) {
    throw std::invalid_argument("make_two_gaussians: d must be >= 1");
  }
  std::mt19937_64 rng(seed);
  bool has_spare = false;
  double spare = 0.0;
  const double shift = 0.5 * margin / std::sqrt(static_cast<double>(d));
  const int positives = (n + 1) / 2;

  Eigen::MatrixXd X(n, d);
  std::vector<int> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int label = i < positives ? 1 : -1;
    y[static_cast<std::size_t>(i)] = label;
    for (int j = 0; j < d; ++j) {
      X(i, j) = label * shift + next_gaussian(rng, has_spare, spare);
    }
  }
  return Dataset::from_matrix(std::move(X), Labels(std::move(y)));
}

void save_model(std::ostream& out, const ModelFile& file) {
  const auto& m = file.model;
  json j;
  j["format_version"] = file.format_version;
  j["algorithm"] = algorithms::algorithm_name(m.algorithm);
  json hyper;
  hyper["lambda"] = m.lambda;
  if (m.algorithm == algorithms::Algorithm::Gram) {
    hyper["gram_max_iter"] = m.gram_max_iter;
    hyper["gram_step_size"] = m.gram_step_size;
    hyper["gram_tol"] = m.gram_tol;
  }
  j["hyperparameters"] = std::move(hyper);
  j["eta"] = vector_to_json(m.eta);
  j["gamma"] = vector_to_json(m.gamma);
  j["bias"] = m.bias;
  j["objective"] = m.objective;
  j["labels"] = m.labels.values();
  if (m.specs) {
    j["kernels"] = specs_to_json(*m.specs);
  } else {
    j["kernels"] = "precomputed";
  }
  j["normalize"] = m.normalized;
  j["seed"] = file.seed;
  j["split"] = file.split;
  if (file.training_data) {
    j["training_data"] = dataset_to_json(*file.training_data);
  } else {
    j["training_data"] = nullptr;
  }
  out << j.dump(2) << '\n';
}

ModelFile load_model(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("model file: parse error: ") + e.what());
  }
  ModelFile file;
  file.format_version = j.at("format_version").get<int>();
  if (file.format_version != 1) {
    throw std::runtime_error("model file: unsupported format_version " +
                             std::to_string(file.format_version));
  }
  auto& m = file.model;
  m.algorithm = algorithms::algorithm_from_name(j.at("algorithm").get<std::string>());
  const auto& hyper = j.at("hyperparameters");
  m.lambda = hyper.at("lambda").get<double>();
  if (m.algorithm == algorithms::Algorithm::Gram) {
    m.gram_max_iter = hyper.at("gram_max_iter").get<int>();
    m.gram_step_size = hyper.at("gram_step_size").get<double>();
    m.gram_tol = hyper.at("gram_tol").get<double>();
  }
  m.eta = vector_from_json(j.at("eta"));
  m.gamma = vector_from_json(j.at("gamma"));
  m.bias = j.at("bias").get<double>();
  m.objective = j.at("objective").get<double>();
  m.labels = Labels(j.at("labels").get<std::vector<int>>());
  if (j.at("kernels").is_string()) {
    if (j.at("kernels") != "precomputed") {
      throw std::runtime_error("model file: bad kernels field");
    }
  } else {
    std::vector<kernels::KernelSpec> specs;
    for (const auto& name : j.at("kernels")) {
      specs.push_back(kernels::KernelSpec::parse(name.get<std::string>()));
    }
    m.specs = std::move(specs);
  }
  m.normalized = j.at("normalize").get<bool>();
  file.seed = j.at("seed").get<std::uint64_t>();
  file.split = j.at("split").get<double>();
  if (!j.at("training_data").is_null()) {
    file.training_data = dataset_from_json(j.at("training_data"));
  }
  return file;
}

void save_model_file(const std::string& path, const ModelFile& file) {
  std::ostringstream buffer;
  save_model(buffer, file);
  write_text_file(path, buffer.str());
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open model file '" + path + "'");
  }
  return load_model(in);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file '" + path + "'");
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed for '" + path + "'");
  }
}

}  // namespace mklkit::io

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mklkit/algorithms.hpp"
#include "mklkit/core.hpp"
#include "mklkit/kernels.hpp"

namespace mklkit::cli {

enum class ListMode { Materialized, GeneratorCached, GeneratorNoCache };

std::string list_mode_name(ListMode mode);

// Builds the kernel list for a dataset. Generator modes pick the specialized
// lazy implementation when the spec list is homogeneous (HPK incl. linear,
// or one boolean kind) and fall back to the generic lazy list otherwise.
std::unique_ptr<KernelList> make_kernel_list(const Dataset& data,
                                             const std::vector<kernels::KernelSpec>& specs,
                                             bool normalize, ListMode mode);

struct DataOptions {
  std::string path;
  std::string format = "libsvm";  // libsvm | strings
  std::string labels_path;        // optional label file for string data
};

Dataset load_dataset(const DataOptions& opts);

struct SolverFlags {
  double tol = 1e-7;
  int max_iter = 20000;
};

struct GramFlags {
  int max_iter = 1000;
  double step_size = 1.0;
  double tol = 1e-6;
};

// Test-vs-train kernels from the model's spec provenance, then scoring.
algorithms::Prediction predict_dataset(const algorithms::MKLModel& model, const Dataset& train,
                                       const Dataset& test);

struct TrainOptions {
  DataOptions data;
  std::string kernels;
  std::string algorithm = "easymkl";
  double lambda = 0.1;
  std::string model_out;
  std::string trace_out;
  bool normalize = false;
  bool embed_data = true;
  double split = 1.0;
  std::uint64_t seed = 0;
  SolverFlags qp;
  GramFlags gram;
};

int run_train(const TrainOptions& opts, std::ostream& out, std::ostream& err);

struct PredictOptions {
  std::string model_path;
  DataOptions data;
  DataOptions train_data;  // used when the model has no embedded training data
  std::string out_path;    // prediction lines go to stdout when empty
};

int run_predict(const PredictOptions& opts, std::ostream& out, std::ostream& err);

struct EvalOptions {
  DataOptions data;
  std::string kernel;
  std::string kernel2;  // second spec for the alignment metrics
  std::vector<std::string> metrics;
  bool normalize = false;
  SolverFlags qp;
};

int run_eval_kernel(const EvalOptions& opts, std::ostream& out, std::ostream& err);

struct BenchmarkOptions {
  DataOptions data;
  std::string kernels;
  std::string algorithm = "easymkl";
  double lambda = 0.1;
  bool normalize = false;
  std::string out_path;  // machine-readable rows
  SolverFlags qp;
  GramFlags gram;
};

struct BenchmarkRow {
  std::string mode;
  bool ok = false;
  std::string error;
  double seconds = 0.0;
  std::int64_t peak_gram_bytes = 0;
  std::int64_t peak_rss_bytes = 0;  // OS-level, informational only
  Eigen::VectorXd eta;
  double train_accuracy = 0.0;
};

// Runs the identical fit under the three list modes with a meter reset per
// mode. A std::bad_alloc in one mode is reported in its row; anything else
// propagates.
std::vector<BenchmarkRow> benchmark_modes(const Dataset& data,
                                          const std::vector<kernels::KernelSpec>& specs,
                                          const std::string& algorithm, double lambda,
                                          bool normalize, const SolverFlags& qp,
                                          const GramFlags& gram);

int run_benchmark(const BenchmarkOptions& opts, std::ostream& out, std::ostream& err);

struct DatagenOptions {
  int n = 100;
  int d = 10;
  std::uint64_t seed = 0;
  double margin = 2.0;
  std::string out_path;
};

int run_datagen(const DatagenOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace mklkit::cli

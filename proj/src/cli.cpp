#include "mklkit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mklkit/generators.hpp"
#include "mklkit/io.hpp"
#include "mklkit/metrics.hpp"
#include "mklkit/solvers.hpp"

namespace mklkit::cli {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string basename_stem(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return name;
}

solvers::SolveOptions to_solve_options(const SolverFlags& flags) {
  solvers::SolveOptions opts;
  opts.tol = flags.tol;
  opts.max_iter = flags.max_iter;
  return opts;
}

algorithms::MKLModel fit_with(const std::string& algorithm, KernelList& list, const Labels& y,
                              double lambda, const SolverFlags& qp, const GramFlags& gram,
                              const algorithms::FitCallbacks& cb = {}) {
  const auto algo = algorithms::algorithm_from_name(algorithm);
  const auto solve_opts = to_solve_options(qp);
  switch (algo) {
    case algorithms::Algorithm::Average:
      return algorithms::average_mkl_fit(list, y, lambda, solve_opts, cb);
    case algorithms::Algorithm::EasyMkl:
      return algorithms::easymkl_fit(list, y, lambda, solve_opts, cb);
    case algorithms::Algorithm::Gram: {
      algorithms::GramOptions opts;
      opts.max_iter = gram.max_iter;
      opts.step_size = gram.step_size;
      opts.tol = gram.tol;
      opts.lambda = lambda;
      opts.inner = solve_opts;
      return algorithms::gram_fit(list, y, opts, cb);
    }
  }
  throw std::logic_error("fit_with: unreachable");
}

bool all_of_kind(const std::vector<kernels::KernelSpec>& specs,
                 std::initializer_list<kernels::KernelKind> kinds) {
  return std::all_of(specs.begin(), specs.end(), [&](const kernels::KernelSpec& s) {
    return std::find(kinds.begin(), kinds.end(), s.kind) != kinds.end();
  });
}

void write_eta(std::ostream& out, const Eigen::VectorXd& eta) {
  out << "eta";
  for (Eigen::Index r = 0; r < eta.size(); ++r) out << '\t' << format_double(eta[r]);
  out << '\n';
}

}  // namespace

// Peak resident-set size, informational only. Linux exposes VmHWM in
// /proc/self/status and allows resetting the high-water mark through
// /proc/self/clear_refs; both are best-effort and report 0 when unavailable.
void reset_process_peak_rss() {
  std::ofstream out("/proc/self/clear_refs");
  if (out) out << "5\n";
}

std::int64_t process_peak_rss_bytes() {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream fields(line.substr(6));
      std::int64_t kib = 0;
      fields >> kib;
      return kib * 1024;
    }
  }
  return 0;
}

std::string list_mode_name(ListMode mode) {
  switch (mode) {
    case ListMode::Materialized:
      return "list";
    case ListMode::GeneratorCached:
      return "generator_cached";
    case ListMode::GeneratorNoCache:
      return "generator_nocache";
  }
  throw std::logic_error("list_mode_name: unreachable");
}

std::unique_ptr<KernelList> make_kernel_list(const Dataset& data,
                                             const std::vector<kernels::KernelSpec>& specs,
                                             bool normalize, ListMode mode) {
  if (specs.empty()) {
    throw std::invalid_argument("make_kernel_list: empty spec list");
  }
  if (mode == ListMode::Materialized) {
    std::vector<std::shared_ptr<const GramMatrix>> matrices;
    matrices.reserve(specs.size());
    for (const auto& spec : specs) {
      Eigen::MatrixXd values = kernels::gram_values(data, spec);
      TrackedBytes reg(GramMatrix::tracked_bytes(values.rows()));
      if (normalize) detail::normalize_gram_in_place(values);
      matrices.push_back(
          std::make_shared<const GramMatrix>(std::move(values), std::move(reg)));
    }
    return std::make_unique<MaterializedKernelList>(std::move(matrices));
  }

  generators::GeneratorOptions gen_opts;
  gen_opts.cache = mode == ListMode::GeneratorCached;
  gen_opts.normalize = normalize;

  using kernels::KernelKind;
  if (data.kind() == DataKind::Real && all_of_kind(specs, {KernelKind::Hpk, KernelKind::Linear})) {
    std::vector<int> degrees;
    degrees.reserve(specs.size());
    for (const auto& s : specs) degrees.push_back(s.kind == KernelKind::Linear ? 1 : s.parameter);
    return std::make_unique<generators::HpkGenerator>(data.matrix(), std::move(degrees), gen_opts);
  }
  if (data.kind() == DataKind::Real && all_of_kind(specs, {KernelKind::MonotoneConjunctive})) {
    std::vector<int> arities;
    for (const auto& s : specs) arities.push_back(s.parameter);
    return std::make_unique<generators::BooleanGenerator>(
        data.matrix(), generators::BooleanKind::Conjunctive, std::move(arities), gen_opts);
  }
  if (data.kind() == DataKind::Real && all_of_kind(specs, {KernelKind::MonotoneDisjunctive})) {
    std::vector<int> arities;
    for (const auto& s : specs) arities.push_back(s.parameter);
    return std::make_unique<generators::BooleanGenerator>(
        data.matrix(), generators::BooleanKind::Disjunctive, std::move(arities), gen_opts);
  }
  return std::make_unique<generators::LazySpecList>(data, specs, normalize);
}

Dataset load_dataset(const DataOptions& opts) {
  if (opts.format == "libsvm") {
    std::ifstream in(opts.path);
    if (!in) {
      throw std::runtime_error("cannot open data file '" + opts.path + "'");
    }
    return io::parse_libsvm(in);
  }
  if (opts.format == "strings") {
    std::ifstream in(opts.path);
    if (!in) {
      throw std::runtime_error("cannot open data file '" + opts.path + "'");
    }
    auto rows = io::read_string_lines(in);
    std::optional<Labels> labels;
    if (!opts.labels_path.empty()) {
      std::ifstream lin(opts.labels_path);
      if (!lin) {
        throw std::runtime_error("cannot open labels file '" + opts.labels_path + "'");
      }
      labels = io::read_label_lines(lin);
    }
    return Dataset::from_strings(std::move(rows), std::move(labels));
  }
  throw std::invalid_argument("unknown data format '" + opts.format + "'");
}

algorithms::Prediction predict_dataset(const algorithms::MKLModel& model, const Dataset& train,
                                       const Dataset& test) {
  if (!model.specs) {
    throw std::runtime_error(
        "model was trained on precomputed kernels; prediction needs spec provenance");
  }
  std::vector<RectKernelMatrix> rect;
  rect.reserve(model.specs->size());
  for (const auto& spec : *model.specs) {
    if (!model.normalized) {
      rect.push_back(kernels::cross_kernel(train, test, spec));
      continue;
    }
    Eigen::MatrixXd values = kernels::cross_kernel(train, test, spec).values();
    const Eigen::VectorXd self_test = kernels::self_values(test, spec);
    const Eigen::VectorXd self_train = kernels::self_values(train, spec);
    if (!(self_test.array() > 0.0).all() || !(self_train.array() > 0.0).all()) {
      throw std::domain_error("normalize: non-positive self kernel value in the test path");
    }
    for (Eigen::Index t = 0; t < values.rows(); ++t) {
      for (Eigen::Index i = 0; i < values.cols(); ++i) {
        values(t, i) /= std::sqrt(self_test[t]) * std::sqrt(self_train[i]);
      }
    }
    rect.push_back(RectKernelMatrix(std::move(values)));
  }
  return algorithms::predict(model, rect);
}

int run_train(const TrainOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const Dataset full = load_dataset(opts.data);
    const auto specs = kernels::parse_spec_list(opts.kernels);
    if (!full.labels()) {
      throw std::runtime_error("training requires labeled data");
    }

    Dataset train = full;
    std::optional<Dataset> holdout;
    if (opts.split < 1.0) {
      if (!(opts.split > 0.0)) {
        throw std::invalid_argument("--split must lie in (0, 1]");
      }
      const auto n = full.size();
      std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      std::mt19937_64 rng(opts.seed);
      std::shuffle(order.begin(), order.end(), rng);
      const auto n_train = std::max<Eigen::Index>(
          1, static_cast<Eigen::Index>(std::llround(opts.split * static_cast<double>(n))));
      train = full.subset({order.begin(), order.begin() + std::min(n_train, n)});
      if (n_train < n) {
        holdout = full.subset({order.begin() + n_train, order.end()});
      }
    }
    if (!train.labels()->both_classes()) {
      throw std::runtime_error("training data contains a single class");
    }

    auto list = make_kernel_list(train, specs, opts.normalize, ListMode::GeneratorCached);

    algorithms::FitTrace trace;
    algorithms::FitCallbacks cb;
    if (!opts.trace_out.empty()) cb = algorithms::record_into(trace);

    algorithms::MKLModel model =
        fit_with(opts.algorithm, *list, *train.labels(), opts.lambda, opts.qp, opts.gram, cb);
    model.specs = specs;
    model.normalized = opts.normalize;

    out << "algorithm\t" << algorithms::algorithm_name(model.algorithm) << '\n';
    write_eta(out, model.eta);
    out << "objective\t" << format_double(model.objective) << '\n';

    if (holdout) {
      const auto pred = predict_dataset(model, train, *holdout);
      out << "holdout_accuracy\t" << format_double(algorithms::accuracy(pred, *holdout->labels()))
          << '\n';
    }

    if (!opts.model_out.empty()) {
      io::ModelFile file;
      file.model = model;
      file.seed = opts.seed;
      file.split = opts.split;
      if (opts.embed_data) file.training_data = train;
      io::save_model_file(opts.model_out, file);
    }

    if (!opts.trace_out.empty()) {
      std::ostringstream lines;
      for (const auto& rec : trace.records) {
        lines << rec.iteration << '\t' << format_double(rec.objective);
        for (Eigen::Index r = 0; r < rec.eta.size(); ++r) {
          lines << '\t' << format_double(rec.eta[r]);
        }
        lines << '\n';
      }
      io::write_text_file(opts.trace_out, lines.str());
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run_predict(const PredictOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const io::ModelFile file = io::load_model_file(opts.model_path);

    Dataset train = [&] {
      if (file.training_data) return *file.training_data;
      if (opts.train_data.path.empty()) {
        throw std::runtime_error(
            "model has no embedded training data; pass --train-data with the original file");
      }
      return load_dataset(opts.train_data);
    }();

    Dataset test = [&] {
      if (train.kind() == DataKind::Real && opts.data.format == "libsvm") {
        std::ifstream in(opts.data.path);
        if (!in) {
          throw std::runtime_error("cannot open data file '" + opts.data.path + "'");
        }
        return io::parse_libsvm(in, static_cast<int>(train.features()));
      }
      return load_dataset(opts.data);
    }();

    const auto pred = predict_dataset(file.model, train, test);

    std::ostringstream lines;
    for (Eigen::Index j = 0; j < pred.scores.size(); ++j) {
      lines << format_double(pred.scores[j]) << '\t'
            << pred.labels[static_cast<std::size_t>(j)] << '\n';
    }
    if (opts.out_path.empty()) {
      out << lines.str();
    } else {
      io::write_text_file(opts.out_path, lines.str());
    }
    if (test.labels()) {
      out << "accuracy\t" << format_double(algorithms::accuracy(pred, *test.labels())) << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run_eval_kernel(const EvalOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const Dataset data = load_dataset(opts.data);
    const auto spec = kernels::KernelSpec::parse(opts.kernel);
    GramMatrix K = opts.normalize ? metrics::normalize_kernel(kernels::gram(data, spec))
                                  : kernels::gram(data, spec);
    const auto solve_opts = to_solve_options(opts.qp);

    if (opts.metrics.empty()) {
      throw std::invalid_argument("no metrics requested");
    }
    for (const auto& metric : opts.metrics) {
      if (metric == "margin") {
        if (!data.labels()) {
          throw std::runtime_error("margin requires labeled data");
        }
        out << "margin\t"
            << format_double(metrics::margin(K, *data.labels(), solve_opts).margin) << '\n';
      } else if (metric == "radius") {
        out << "radius\t" << format_double(metrics::radius(K, solve_opts).radius) << '\n';
      } else if (metric == "spectral-ratio") {
        out << "spectral-ratio\t" << format_double(metrics::spectral_ratio(K, false)) << '\n';
        out << "spectral-ratio-normalized\t" << format_double(metrics::spectral_ratio(K, true))
            << '\n';
      } else if (metric == "alignment" || metric == "centered-alignment") {
        if (opts.kernel2.empty()) {
          throw std::invalid_argument(metric + " requires a second kernel spec (--kernel2)");
        }
        const auto spec2 = kernels::KernelSpec::parse(opts.kernel2);
        GramMatrix K2 = opts.normalize ? metrics::normalize_kernel(kernels::gram(data, spec2))
                                       : kernels::gram(data, spec2);
        const double value = metric == "alignment" ? metrics::alignment(K, K2)
                                                   : metrics::centered_alignment(K, K2);
        out << metric << '\t' << format_double(value) << '\n';
      } else {
        throw std::invalid_argument("unknown metric '" + metric + "'");
      }
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

std::vector<BenchmarkRow> benchmark_modes(const Dataset& data,
                                          const std::vector<kernels::KernelSpec>& specs,
                                          const std::string& algorithm, double lambda,
                                          bool normalize, const SolverFlags& qp,
                                          const GramFlags& gram) {
  if (!data.labels()) {
    throw std::runtime_error("benchmark requires labeled data");
  }
  std::vector<BenchmarkRow> rows;
  for (const ListMode mode :
       {ListMode::Materialized, ListMode::GeneratorCached, ListMode::GeneratorNoCache}) {
    BenchmarkRow row;
    row.mode = list_mode_name(mode);
    generators::meter_reset();
    reset_process_peak_rss();
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto list = make_kernel_list(data, specs, normalize, mode);
      algorithms::MKLModel model =
          fit_with(algorithm, *list, *data.labels(), lambda, qp, gram);
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.peak_rss_bytes = process_peak_rss_bytes();
      model.specs = specs;
      model.normalized = normalize;
      row.eta = model.eta;
      row.train_accuracy =
          algorithms::accuracy(predict_dataset(model, data, data), *data.labels());
      row.ok = true;
    } catch (const std::bad_alloc&) {
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.peak_rss_bytes = process_peak_rss_bytes();
      row.error = "allocation failure";
    }
    row.peak_gram_bytes = generators::meter_report().second;
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_benchmark(const BenchmarkOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const Dataset data = load_dataset(opts.data);
    const auto specs = kernels::parse_spec_list(opts.kernels);
    const auto rows = benchmark_modes(data, specs, opts.algorithm, opts.lambda, opts.normalize,
                                      opts.qp, opts.gram);

    const auto n = data.size();
    const auto d = data.kind() == DataKind::Real ? data.features() : Eigen::Index{0};
    out << "dataset " << basename_stem(opts.data.path) << "  n=" << n << "  d=" << d
        << "  P=" << specs.size() << "  algo=" << opts.algorithm << '\n';
    out << "mode                 seconds        peak_gram_bytes    process_peak_rss  status\n";
    for (const auto& row : rows) {
      char line[200];
      std::snprintf(line, sizeof(line), "%-20s %10.3f %22lld %19lld  %s\n", row.mode.c_str(),
                    row.seconds, static_cast<long long>(row.peak_gram_bytes),
                    static_cast<long long>(row.peak_rss_bytes),
                    row.ok ? "ok" : row.error.c_str());
      out << line;
    }

    const BenchmarkRow* reference = nullptr;
    for (const auto& row : rows) {
      if (!row.ok) continue;
      if (!reference) {
        reference = &row;
        continue;
      }
      const double eta_diff = (row.eta - reference->eta).cwiseAbs().maxCoeff();
      if (eta_diff > 1e-9 || row.train_accuracy != reference->train_accuracy) {
        err << "error: mode '" << row.mode << "' disagrees with '" << reference->mode
            << "' (eta diff " << format_double(eta_diff) << ", accuracy "
            << format_double(row.train_accuracy) << " vs "
            << format_double(reference->train_accuracy) << ")\n";
        return 1;
      }
    }
    const auto find_row = [&](const std::string& name) -> const BenchmarkRow* {
      for (const auto& row : rows) {
        if (row.mode == name && row.ok) return &row;
      }
      return nullptr;
    };
    const auto* list_row = find_row("list");
    const auto* cached_row = find_row("generator_cached");
    if (list_row && cached_row && cached_row->peak_gram_bytes > 0) {
      out << "peak_ratio_list_over_cached\t"
          << format_double(static_cast<double>(list_row->peak_gram_bytes) /
                           static_cast<double>(cached_row->peak_gram_bytes))
          << '\n';
    }

    if (!opts.out_path.empty()) {
      std::ostringstream tsv;
      tsv << "dataset\tn\td\tP\tmode\tseconds\tpeak_gram_bytes\tprocess_peak_rss_bytes\tstatus\n";
      for (const auto& row : rows) {
        tsv << basename_stem(opts.data.path) << '\t' << n << '\t' << d << '\t' << specs.size()
            << '\t' << row.mode << '\t' << format_double(row.seconds) << '\t'
            << row.peak_gram_bytes << '\t' << row.peak_rss_bytes << '\t'
            << (row.ok ? "ok" : row.error) << '\n';
      }
      io::write_text_file(opts.out_path, tsv.str());
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run_datagen(const DatagenOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (opts.out_path.empty()) {
      throw std::invalid_argument("datagen requires --out");
    }
    const Dataset data = io::make_two_gaussians(opts.n, opts.d, opts.seed, opts.margin);
    std::ostringstream buffer;
    io::write_libsvm(buffer, data);
    io::write_text_file(opts.out_path, buffer.str());
    out << "wrote " << opts.out_path << "  n=" << opts.n << "  d=" << opts.d
        << "  seed=" << opts.seed << "  margin=" << format_double(opts.margin) << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mklkit::cli

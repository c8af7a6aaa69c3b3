#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "mklkit/cli.hpp"

namespace {

void add_data_flags(CLI::App* cmd, mklkit::cli::DataOptions& data, bool required = true) {
  auto* opt = cmd->add_option("--data", data.path, "input data file");
  if (required) opt->required();
  cmd->add_option("--format", data.format, "data format: libsvm | strings")
      ->check(CLI::IsMember({"libsvm", "strings"}));
  cmd->add_option("--labels", data.labels_path, "label file for string data (one +1/-1 per line)");
}

void add_solver_flags(CLI::App* cmd, mklkit::cli::SolverFlags& qp) {
  cmd->add_option("--tol", qp.tol, "QP solver duality-gap tolerance");
  cmd->add_option("--max-iter", qp.max_iter, "QP solver iteration cap");
}

void add_gram_flags(CLI::App* cmd, mklkit::cli::GramFlags& gram) {
  cmd->add_option("--gram-max-iter", gram.max_iter, "GRAM outer iteration cap");
  cmd->add_option("--step-size", gram.step_size, "GRAM gradient step before backtracking");
  cmd->add_option("--gram-tol", gram.tol, "GRAM relative objective-change stop");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mklkit: multiple kernel learning toolkit"};
  app.require_subcommand(1);

  mklkit::cli::TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "fit an MKL model and write it to disk");
  add_data_flags(train_cmd, train.data);
  train_cmd->add_option("--kernels", train.kernels,
                        "kernel specs, e.g. hpk:1-5, mck:1-3, mdk:2, spectrum:3, linear")
      ->required();
  train_cmd->add_option("--algo", train.algorithm, "average | easymkl | gram")
      ->check(CLI::IsMember({"average", "easymkl", "gram"}));
  train_cmd->add_option("--lam", train.lambda, "base learner regularization in [0, 1]");
  train_cmd->add_option("--out", train.model_out, "model output path");
  train_cmd->add_option("--trace", train.trace_out, "write per-iteration weight records here");
  train_cmd->add_flag("--normalize", train.normalize, "unit-diagonal normalize every base kernel");
  train_cmd->add_flag("!--no-embed", train.embed_data,
                      "do not embed the training rows in the model file");
  train_cmd->add_option("--split", train.split, "train on this fraction, report holdout accuracy");
  train_cmd->add_option("--seed", train.seed, "shuffle seed, recorded in the model");
  add_solver_flags(train_cmd, train.qp);
  add_gram_flags(train_cmd, train.gram);

  mklkit::cli::PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "score a test file with a trained model");
  predict_cmd->add_option("--model", predict.model_path, "model file")->required();
  add_data_flags(predict_cmd, predict.data);
  predict_cmd->add_option("--train-data", predict.train_data.path,
                          "training data file when the model has none embedded");
  predict_cmd->add_option("--train-format", predict.train_data.format,
                          "format of --train-data: libsvm | strings")
      ->check(CLI::IsMember({"libsvm", "strings"}));
  predict_cmd->add_option("--train-labels", predict.train_data.labels_path,
                          "label file for string --train-data");
  predict_cmd->add_option("--out", predict.out_path,
                          "prediction file (score<TAB>label per line); stdout when omitted");

  mklkit::cli::EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval-kernel", "kernel quality metrics on one dataset");
  add_data_flags(eval_cmd, eval.data);
  eval_cmd->add_option("--kernel", eval.kernel, "single kernel spec, e.g. hpk:2")->required();
  eval_cmd->add_option("--kernel2", eval.kernel2, "second spec for the alignment metrics");
  eval_cmd
      ->add_option("--metrics", eval.metrics,
                   "margin, radius, spectral-ratio, alignment, centered-alignment")
      ->required()
      ->delimiter(',');
  eval_cmd->add_flag("--normalize", eval.normalize, "normalize the kernels first");
  add_solver_flags(eval_cmd, eval.qp);

  mklkit::cli::BenchmarkOptions bench;
  auto* bench_cmd =
      app.add_subcommand("benchmark", "time and peak Gram memory of the three list modes");
  add_data_flags(bench_cmd, bench.data);
  bench_cmd->add_option("--kernels", bench.kernels, "kernel specs")->required();
  bench_cmd->add_option("--algo", bench.algorithm, "average | easymkl | gram")
      ->check(CLI::IsMember({"average", "easymkl", "gram"}));
  bench_cmd->add_option("--lam", bench.lambda, "base learner regularization");
  bench_cmd->add_flag("--normalize", bench.normalize, "normalize every base kernel");
  bench_cmd->add_option("--out", bench.out_path, "machine-readable report rows (TSV)");
  add_solver_flags(bench_cmd, bench.qp);
  add_gram_flags(bench_cmd, bench.gram);

  mklkit::cli::DatagenOptions datagen;
  auto* datagen_cmd =
      app.add_subcommand("datagen", "write a synthetic two-Gaussian dataset in libsvm format");
  datagen_cmd->add_option("--n", datagen.n, "sample count")->required();
  datagen_cmd->add_option("--d", datagen.d, "feature count")->required();
  datagen_cmd->add_option("--seed", datagen.seed, "generator seed");
  datagen_cmd->add_option("--margin", datagen.margin, "class mean separation");
  datagen_cmd->add_option("--out", datagen.out_path, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (train_cmd->parsed()) return mklkit::cli::run_train(train, std::cout, std::cerr);
  if (predict_cmd->parsed()) return mklkit::cli::run_predict(predict, std::cout, std::cerr);
  if (eval_cmd->parsed()) return mklkit::cli::run_eval_kernel(eval, std::cout, std::cerr);
  if (bench_cmd->parsed()) return mklkit::cli::run_benchmark(bench, std::cout, std::cerr);
  if (datagen_cmd->parsed()) return mklkit::cli::run_datagen(datagen, std::cout, std::cerr);
  return 1;
}

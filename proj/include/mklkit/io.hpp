#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mklkit/algorithms.hpp"
#include "mklkit/core.hpp"

namespace mklkit::io {

// Parses LIBSVM sparse text: one "label index:value ..." record per line,
// labels in {+1, 1, -1}, 1-based strictly increasing indices. The feature
// dimension is the largest index seen unless expected_dim pins it (indices
// beyond it are errors). Missing indices are zero.
Dataset parse_libsvm(std::istream& in, std::optional<int> expected_dim = {});

// Writes the canonical sparse form: nonzero entries only, full-precision
// decimal values. parse -> write -> parse is a fixed point.
void write_libsvm(std::ostream& out, const Dataset& data);

// One raw string per line.
std::vector<std::string> read_string_lines(std::istream& in);

// One label per line, over {+1, 1, -1}.
Labels read_label_lines(std::istream& in);

// Deterministic two-Gaussian binary sample: class means at +-(margin/2) along
// the normalized all-ones direction, unit noise, labels balanced to within
// one example. Identical seeds give identical datasets.
Dataset make_two_gaussians(int n, int d, std::uint64_t seed, double margin);

// A trained model plus everything needed to reproduce predictions: kernel
// provenance lives inside the model, the training rows may be embedded.
struct ModelFile {
  int format_version = 1;
  algorithms::MKLModel model;
  std::uint64_t seed = 0;
  double split = 1.0;
  std::optional<Dataset> training_data;
};

// Versioned structured-text (JSON) serialization. Scalars render at full
// round-trip precision, so save -> load -> save is byte-identical.
void save_model(std::ostream& out, const ModelFile& file);
ModelFile load_model(std::istream& in);

void save_model_file(const std::string& path, const ModelFile& file);
ModelFile load_model_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mklkit::io

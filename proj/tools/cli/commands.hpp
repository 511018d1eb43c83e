#pragma once

#include "imgq/dataset.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace imgq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct ExtractOptions {
    std::filesystem::path manifest;
    std::filesystem::path out;
    unsigned threads = 1;
    std::optional<double> theta;
};

struct VisualizeOptions {
    std::filesystem::path image;
    std::filesystem::path out_dir;
    std::optional<double> theta;
};

struct TrainEvalOptions {
    std::filesystem::path manifest;
    std::optional<std::filesystem::path> features;
    std::optional<std::filesystem::path> model_dir;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::optional<double> theta;
    BinarizePolicy binarize = BinarizePolicy::Median;
    double l2 = 1e-4;
    double lr = 0.1;
    int epochs = 50;
    double test_fraction = 0.2;
};

struct SynthOptions {
    int n = 0;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir;
};

/// Writes a feature file; ".csv" outputs are text, anything else binary.
/// Exits nonzero when more than 10% of the images fail.
int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err);
int cmd_visualize(const VisualizeOptions& opt, std::ostream& out, std::ostream& err);
/// Prints the evaluation report as JSON on `out`.
int cmd_train_eval(const TrainEvalOptions& opt, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace imgq::cli

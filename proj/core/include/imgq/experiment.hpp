#pragma once

#include "imgq/assembly.hpp"
#include "imgq/dataset.hpp"
#include "imgq/model.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace imgq {

enum class Modality { Text, Image, Multimodal };

const char* to_string(Modality m) noexcept;

FeatureRow make_row(Modality m, const QualityVector* q, const SparseVector* t);

struct EvalReport {
    double auc_text = 0.0;
    double auc_image = 0.0;
    double auc_mm = 0.0;
    double lift_image_pct = 0.0;
    double lift_mm_pct = 0.0;
    double accuracy_text = 0.0;
    double accuracy_image = 0.0;
    double accuracy_mm = 0.0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::uint64_t seed = 0;
};

/// 100 * (auc - baseline) / baseline.
double relative_lift_pct(double auc, double baseline);

std::string to_json(const EvalReport& r);

struct ExperimentConfig {
    QualityConfig quality;
    TrainConfig train;
    BinarizePolicy binarize = BinarizePolicy::Median;
    double test_fraction = 0.2;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Precomputed quality vectors keyed by listing id; extraction is skipped
    /// for listings found here.
    const std::vector<FeatureRecord>* features = nullptr;
    /// Where per-modality model files go, if set.
    std::optional<std::filesystem::path> model_dir;
};

struct ExtractionResult {
    std::vector<std::optional<QualityVector>> vectors; // manifest order
    std::vector<std::string> errors;                   // one per failed record
};

/// Extracts every record's quality vector on `threads` workers. Results are
/// returned in manifest order regardless of scheduling.
ExtractionResult extract_all(const std::filesystem::path& manifest_path,
                             const std::vector<ListingRecord>& records, const QualityConfig& cfg,
                             unsigned threads);

/// Labels, splits and trains text, image and multimodal models on the same
/// split, then scores each on the held-out side. Records whose image fails
/// to extract are dropped before labeling.
EvalReport run_experiment(const std::filesystem::path& manifest_path, const ExperimentConfig& cfg);

} // namespace imgq

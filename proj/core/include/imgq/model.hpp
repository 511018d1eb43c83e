#pragma once

#include "imgq/textfeat.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace imgq {

/// One example: a dense block (z-scored by the model) followed by a sparse
/// block whose indices are offset by the dense width in weight space.
struct FeatureRow {
    std::vector<double> dense;
    SparseVector sparse;
};

struct TrainConfig {
    double l2 = 1e-4;
    int epochs = 50;
    double lr = 0.1;
    std::size_t batch_size = 64;
    std::uint64_t seed = 0;
    /// Allowed rise of the full training objective between epochs before the
    /// epoch is rolled back and the step halved.
    double loss_slack = 1e-6;
    int max_step_halvings = 40;
};

struct LogisticModel {
    std::size_t dense_dim = 0;
    std::uint32_t sparse_dim = 0;
    std::vector<double> weights; // dense_dim + sparse_dim
    double bias = 0.0;
    std::vector<double> mean;    // per dense dimension
    std::vector<double> stddev;  // per dense dimension, 1 for constant columns
    std::vector<bool> frozen;    // dense dimensions pinned at weight 0
    double l2 = 0.0;
    std::uint64_t seed = 0;
    /// Full training objective after each accepted epoch.
    std::vector<double> loss_history;

    std::size_t dim() const noexcept { return dense_dim + sparse_dim; }
};

/// Mean log-loss plus (l2/2)||w||^2 minimized by seeded mini-batch gradient
/// descent. Throws DegenerateLabels for single-class input and
/// DimensionMismatch for ragged rows.
LogisticModel train(const std::vector<FeatureRow>& rows, const std::vector<int>& labels,
                    const TrainConfig& cfg = {});

double decision_value(const LogisticModel& m, const FeatureRow& x);
double predict_proba(const LogisticModel& m, const FeatureRow& x);
std::vector<double> predict_proba(const LogisticModel& m, const std::vector<FeatureRow>& rows);

/// Objective and its analytic gradient at the model's current parameters.
double logistic_objective(const LogisticModel& m, const std::vector<FeatureRow>& rows,
                          std::span<const int> labels);

struct Gradient {
    std::vector<double> weights;
    double bias = 0.0;
};

Gradient logistic_gradient(const LogisticModel& m, const std::vector<FeatureRow>& rows,
                           std::span<const int> labels);

/// Mann-Whitney AUC with midrank ties. Throws DegenerateLabels unless both
/// classes are present.
double auc(std::span<const double> scores, std::span<const int> labels);

double accuracy(std::span<const double> probabilities, std::span<const int> labels,
                double threshold = 0.5);

void save_model(const std::filesystem::path& path, const LogisticModel& m);
LogisticModel load_model(const std::filesystem::path& path);

} // namespace imgq

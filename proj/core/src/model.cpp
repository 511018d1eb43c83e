#include "imgq/model.hpp"

#include "imgq/error.hpp"
#include "imgq/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace imgq {

namespace {

double softplus(double z) {
    return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
    if (z >= 0.0)
        return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void check_row(const LogisticModel& m, const FeatureRow& x) {
    if (x.dense.size() != m.dense_dim)
        throw Error(ErrorCode::DimensionMismatch, "dense block has " + std::to_string(x.dense.size()) +
                                                      " values, model expects " +
                                                      std::to_string(m.dense_dim));
    if (x.sparse.dim != m.sparse_dim && !(x.sparse.entries.empty() && m.sparse_dim == 0))
        throw Error(ErrorCode::DimensionMismatch, "sparse block dimension " + std::to_string(x.sparse.dim) +
                                                      " does not match model " +
                                                      std::to_string(m.sparse_dim));
    for (const auto& [idx, v] : x.sparse.entries)
        if (idx >= m.sparse_dim)
            throw Error(ErrorCode::DimensionMismatch, "sparse index out of range");
}

void check_labels(std::size_t rows, std::span<const int> labels) {
    if (labels.size() != rows)
        throw Error(ErrorCode::DimensionMismatch, "label count differs from row count");
    if (rows == 0)
        throw Error(ErrorCode::EmptyInput, "no examples");
}

// Rows with their dense block already standardized, stored row-major.
struct Design {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> z;
    const std::vector<FeatureRow>* rows = nullptr;

    double margin(const LogisticModel& m, std::size_t i) const {
        const double* zi = z.data() + i * d;
        double s = m.bias;
        for (std::size_t j = 0; j < d; ++j)
            s += m.weights[j] * zi[j];
        for (const auto& [idx, v] : (*rows)[i].sparse.entries)
            s += m.weights[d + idx] * v;
        return s;
    }
};

double regularizer(const LogisticModel& m) {
    double sq = 0.0;
    for (double w : m.weights)
        sq += w * w;
    return 0.5 * m.l2 * sq;
}

double objective(const LogisticModel& m, const Design& X, std::span<const int> labels) {
    double loss = 0.0;
    for (std::size_t i = 0; i < X.n; ++i) {
        const double s = X.margin(m, i);
        loss += softplus(s) - (labels[i] != 0 ? s : 0.0);
    }
    return loss / static_cast<double>(X.n) + regularizer(m);
}

} // namespace

double decision_value(const LogisticModel& m, const FeatureRow& x) {
    check_row(m, x);
    double s = m.bias;
    for (std::size_t j = 0; j < m.dense_dim; ++j)
        s += m.weights[j] * (x.dense[j] - m.mean[j]) / m.stddev[j];
    for (const auto& [idx, v] : x.sparse.entries)
        s += m.weights[m.dense_dim + idx] * v;
    return s;
}

double predict_proba(const LogisticModel& m, const FeatureRow& x) {
    return sigmoid(decision_value(m, x));
}

std::vector<double> predict_proba(const LogisticModel& m, const std::vector<FeatureRow>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back(predict_proba(m, r));
    return out;
}

double logistic_objective(const LogisticModel& m, const std::vector<FeatureRow>& rows,
                          std::span<const int> labels) {
    check_labels(rows.size(), labels);
    double loss = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double s = decision_value(m, rows[i]);
        loss += softplus(s) - (labels[i] != 0 ? s : 0.0);
    }
    return loss / static_cast<double>(rows.size()) + regularizer(m);
}

Gradient logistic_gradient(const LogisticModel& m, const std::vector<FeatureRow>& rows,
                           std::span<const int> labels) {
    check_labels(rows.size(), labels);
    Gradient g;
    g.weights.assign(m.dim(), 0.0);
    const double inv_n = 1.0 / static_cast<double>(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& x = rows[i];
        const double r = (sigmoid(decision_value(m, x)) - (labels[i] != 0 ? 1.0 : 0.0)) * inv_n;
        for (std::size_t j = 0; j < m.dense_dim; ++j)
            g.weights[j] += r * (x.dense[j] - m.mean[j]) / m.stddev[j];
        for (const auto& [idx, v] : x.sparse.entries)
            g.weights[m.dense_dim + idx] += r * v;
        g.bias += r;
    }
    for (std::size_t j = 0; j < g.weights.size(); ++j)
        g.weights[j] += m.l2 * m.weights[j];
    return g;
}

LogisticModel train(const std::vector<FeatureRow>& rows, const std::vector<int>& labels,
                    const TrainConfig& cfg) {
    check_labels(rows.size(), labels);
    const std::size_t positives =
        static_cast<std::size_t>(std::count_if(labels.begin(), labels.end(), [](int y) { return y != 0; }));
    if (positives == 0 || positives == labels.size())
        throw Error(ErrorCode::DegenerateLabels, "training labels contain a single class");
    if (cfg.epochs < 0 || !(cfg.lr > 0.0) || cfg.batch_size == 0 || cfg.l2 < 0.0)
        throw Error(ErrorCode::InvalidArgument, "invalid training hyperparameters");

    LogisticModel m;
    m.dense_dim = rows[0].dense.size();
    m.sparse_dim = rows[0].sparse.dim;
    m.l2 = cfg.l2;
    m.seed = cfg.seed;
    m.weights.assign(m.dim(), 0.0);
    m.mean.assign(m.dense_dim, 0.0);
    m.stddev.assign(m.dense_dim, 1.0);
    m.frozen.assign(m.dense_dim, false);
    for (const auto& r : rows)
        check_row(m, r);

    const std::size_t n = rows.size();
    const std::size_t d = m.dense_dim;
    for (const auto& r : rows)
        for (std::size_t j = 0; j < d; ++j)
            m.mean[j] += r.dense[j];
    for (std::size_t j = 0; j < d; ++j)
        m.mean[j] /= static_cast<double>(n);
    std::vector<double> var(d, 0.0);
    for (const auto& r : rows)
        for (std::size_t j = 0; j < d; ++j) {
            const double c = r.dense[j] - m.mean[j];
            var[j] += c * c;
        }
    for (std::size_t j = 0; j < d; ++j) {
        const double sd = std::sqrt(var[j] / static_cast<double>(n));
        if (sd > 1e-12 * std::max(1.0, std::abs(m.mean[j]))) {
            m.stddev[j] = sd;
        } else {
            m.stddev[j] = 1.0;
            m.frozen[j] = true;
        }
    }

    Design X;
    X.n = n;
    X.d = d;
    X.rows = &rows;
    X.z.resize(n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            X.z[i * d + j] = m.frozen[j] ? 0.0 : (rows[i].dense[j] - m.mean[j]) / m.stddev[j];

    Rng rng(cfg.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> grad(m.dim());
    double lr = cfg.lr;
    int halvings = 0;
    double previous = objective(m, X, labels);

    for (int epoch = 0; epoch < cfg.epochs;) {
        const std::vector<double> saved_w = m.weights;
        const double saved_b = m.bias;
        rng.shuffle(order);
        for (std::size_t start = 0; start < n; start += cfg.batch_size) {
            const std::size_t end = std::min(n, start + cfg.batch_size);
            std::fill(grad.begin(), grad.end(), 0.0);
            double grad_b = 0.0;
            for (std::size_t k = start; k < end; ++k) {
                const std::size_t i = order[k];
                const double r = sigmoid(X.margin(m, i)) - (labels[i] != 0 ? 1.0 : 0.0);
                const double* zi = X.z.data() + i * d;
                for (std::size_t j = 0; j < d; ++j)
                    grad[j] += r * zi[j];
                for (const auto& [idx, v] : rows[i].sparse.entries)
                    grad[d + idx] += r * v;
                grad_b += r;
            }
            const double inv_b = 1.0 / static_cast<double>(end - start);
            for (std::size_t j = 0; j < m.weights.size(); ++j)
                m.weights[j] -= lr * (grad[j] * inv_b + cfg.l2 * m.weights[j]);
            for (std::size_t j = 0; j < d; ++j)
                if (m.frozen[j])
                    m.weights[j] = 0.0;
            m.bias -= lr * grad_b * inv_b;
        }
        const double current = objective(m, X, labels);
        if (!std::isfinite(current) || current > previous + cfg.loss_slack) {
            m.weights = saved_w;
            m.bias = saved_b;
            if (++halvings > cfg.max_step_halvings)
                break;
            lr *= 0.5;
            continue;
        }
        previous = current;
        m.loss_history.push_back(current);
        ++epoch;
    }
    return m;
}

double auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size())
        throw Error(ErrorCode::DimensionMismatch, "score count differs from label count");
    const std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (int y : labels)
        n_pos += y != 0 ? 1 : 0;
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw Error(ErrorCode::DegenerateLabels, "AUC needs both classes");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && scores[idx[j + 1]] == scores[idx[i]])
            ++j;
        // Ranks i+1 .. j+1 share their mean.
        const double mid = 0.5 * static_cast<double>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k)
            if (labels[idx[k]] != 0)
                rank_sum += mid;
        i = j + 1;
    }
    const double np = static_cast<double>(n_pos);
    return (rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

double accuracy(std::span<const double> probabilities, std::span<const int> labels, double threshold) {
    if (probabilities.size() != labels.size())
        throw Error(ErrorCode::DimensionMismatch, "probability count differs from label count");
    if (labels.empty())
        throw Error(ErrorCode::EmptyInput, "no examples");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        hits += ((probabilities[i] >= threshold) == (labels[i] != 0)) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

void save_model(const std::filesystem::path& path, const LogisticModel& m) {
    nlohmann::ordered_json j;
    j["dense_dim"] = m.dense_dim;
    j["sparse_dim"] = m.sparse_dim;
    j["bias"] = m.bias;
    j["l2"] = m.l2;
    j["seed"] = m.seed;
    j["mean"] = m.mean;
    j["stddev"] = m.stddev;
    j["frozen"] = m.frozen;
    j["dense_weights"] = std::vector<double>(m.weights.begin(),
                                             m.weights.begin() + static_cast<std::ptrdiff_t>(m.dense_dim));
    auto sparse = nlohmann::ordered_json::array();
    for (std::size_t k = m.dense_dim; k < m.weights.size(); ++k)
        if (m.weights[k] != 0.0)
            sparse.push_back({k - m.dense_dim, m.weights[k]});
    j["sparse_weights"] = std::move(sparse);
    j["loss_history"] = m.loss_history;

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write model " + path.string());
    out << j.dump() << '\n';
    if (!out)
        throw Error(ErrorCode::IoError, "error writing model " + path.string());
}

LogisticModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open model " + path.string());
    try {
        const auto j = nlohmann::json::parse(in);
        LogisticModel m;
        m.dense_dim = j.at("dense_dim").get<std::size_t>();
        m.sparse_dim = j.at("sparse_dim").get<std::uint32_t>();
        m.bias = j.at("bias").get<double>();
        m.l2 = j.at("l2").get<double>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.mean = j.at("mean").get<std::vector<double>>();
        m.stddev = j.at("stddev").get<std::vector<double>>();
        m.frozen = j.at("frozen").get<std::vector<bool>>();
        m.weights = j.at("dense_weights").get<std::vector<double>>();
        if (m.weights.size() != m.dense_dim || m.mean.size() != m.dense_dim ||
            m.stddev.size() != m.dense_dim || m.frozen.size() != m.dense_dim)
            throw Error(ErrorCode::SchemaMismatch, "model dense block sizes disagree");
        m.weights.resize(m.dim(), 0.0);
        for (const auto& e : j.at("sparse_weights")) {
            const auto k = e.at(0).get<std::size_t>();
            if (k >= m.sparse_dim)
                throw Error(ErrorCode::SchemaMismatch, "sparse weight index out of range");
            m.weights[m.dense_dim + k] = e.at(1).get<double>();
        }
        m.loss_history = j.at("loss_history").get<std::vector<double>>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::IoError, "malformed model " + path.string() + ": " + e.what());
    }
}

} // namespace imgq

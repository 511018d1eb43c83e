#include "imgq/experiment.hpp"

#include "imgq/codec.hpp"
#include "imgq/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_map>

namespace imgq {

const char* to_string(Modality m) noexcept {
    switch (m) {
    case Modality::Text:
        return "text";
    case Modality::Image:
        return "image";
    case Modality::Multimodal:
        return "mm";
    }
    return "unknown";
}

FeatureRow make_row(Modality m, const QualityVector* q, const SparseVector* t) {
    FeatureRow row;
    if (m != Modality::Text) {
        if (q == nullptr)
            throw Error(ErrorCode::InvalidArgument, "quality vector required");
        row.dense = q->values;
    }
    if (m != Modality::Image) {
        if (t == nullptr)
            throw Error(ErrorCode::InvalidArgument, "text vector required");
        row.sparse = *t;
    }
    return row;
}

double relative_lift_pct(double auc_value, double baseline) {
    if (!(baseline > 0.0))
        throw Error(ErrorCode::InvalidArgument, "baseline AUC must be positive");
    return 100.0 * (auc_value - baseline) / baseline;
}

std::string to_json(const EvalReport& r) {
    nlohmann::ordered_json j;
    j["auc_text"] = r.auc_text;
    j["auc_image"] = r.auc_image;
    j["auc_mm"] = r.auc_mm;
    j["lift_image_pct"] = r.lift_image_pct;
    j["lift_mm_pct"] = r.lift_mm_pct;
    j["accuracy_text"] = r.accuracy_text;
    j["accuracy_image"] = r.accuracy_image;
    j["accuracy_mm"] = r.accuracy_mm;
    j["n_train"] = r.n_train;
    j["n_test"] = r.n_test;
    j["seed"] = r.seed;
    return j.dump(2);
}

ExtractionResult extract_all(const std::filesystem::path& manifest_path,
                             const std::vector<ListingRecord>& records, const QualityConfig& cfg,
                             unsigned threads) {
    const std::size_t n = records.size();
    std::vector<std::optional<QualityVector>> vectors(n);
    std::vector<std::string> failures(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            const auto& r = records[i];
            try {
                const RasterImage img = read_image(resolve_image_path(manifest_path, r.image_path));
                vectors[i] = extract_quality(img, cfg);
            } catch (const std::exception& e) {
                failures[i] = "listing " + std::to_string(r.listing_id) + ": " + e.what();
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned k = 0; k < workers; ++k)
            pool.emplace_back(worker);
    }

    ExtractionResult result;
    result.vectors = std::move(vectors);
    for (auto& f : failures)
        if (!f.empty())
            result.errors.push_back(std::move(f));
    return result;
}

EvalReport run_experiment(const std::filesystem::path& manifest_path, const ExperimentConfig& cfg) {
    const auto all_records = read_manifest(manifest_path);
    if (all_records.empty())
        throw Error(ErrorCode::EmptyInput, "manifest has no records");

    std::vector<std::optional<QualityVector>> vectors;
    if (cfg.features != nullptr) {
        std::unordered_map<std::uint64_t, const QualityVector*> by_id;
        for (const auto& [id, q] : *cfg.features)
            by_id.emplace(id, &q);
        std::vector<ListingRecord> missing;
        std::vector<std::size_t> missing_at;
        vectors.resize(all_records.size());
        for (std::size_t i = 0; i < all_records.size(); ++i) {
            const auto it = by_id.find(all_records[i].listing_id);
            if (it != by_id.end()) {
                vectors[i] = *it->second;
            } else {
                missing.push_back(all_records[i]);
                missing_at.push_back(i);
            }
        }
        auto extracted = extract_all(manifest_path, missing, cfg.quality, cfg.threads);
        for (std::size_t k = 0; k < missing.size(); ++k)
            vectors[missing_at[k]] = std::move(extracted.vectors[k]);
    } else {
        vectors = extract_all(manifest_path, all_records, cfg.quality, cfg.threads).vectors;
    }

    std::vector<ListingRecord> records;
    std::vector<QualityVector> quality;
    for (std::size_t i = 0; i < all_records.size(); ++i)
        if (vectors[i]) {
            records.push_back(all_records[i]);
            quality.push_back(std::move(*vectors[i]));
        }
    if (records.empty())
        throw Error(ErrorCode::EmptyInput, "no record could be extracted");

    std::vector<SparseVector> text;
    text.reserve(records.size());
    for (const auto& r : records)
        text.push_back(text_vector(r.title, r.tags));

    const auto examples = label_records(records, cfg.binarize);
    const Split parts = split(examples, cfg.test_fraction, cfg.seed);

    TrainConfig tc = cfg.train;
    tc.seed = cfg.seed;

    struct Scores {
        double auc = 0.0;
        double accuracy = 0.0;
    };
    auto evaluate = [&](Modality m) {
        std::vector<FeatureRow> train_rows, test_rows;
        std::vector<int> train_labels, test_labels;
        for (const auto& e : parts.train) {
            train_rows.push_back(make_row(m, &quality[e.index], &text[e.index]));
            train_labels.push_back(e.label);
        }
        for (const auto& e : parts.test) {
            test_rows.push_back(make_row(m, &quality[e.index], &text[e.index]));
            test_labels.push_back(e.label);
        }
        const LogisticModel model = train(train_rows, train_labels, tc);
        if (cfg.model_dir) {
            std::filesystem::create_directories(*cfg.model_dir);
            save_model(*cfg.model_dir / (std::string("model_") + to_string(m) + ".json"), model);
        }
        const auto probs = predict_proba(model, test_rows);
        return Scores{auc(probs, test_labels), accuracy(probs, test_labels)};
    };

    const Scores st = evaluate(Modality::Text);
    const Scores si = evaluate(Modality::Image);
    const Scores sm = evaluate(Modality::Multimodal);

    EvalReport r;
    r.auc_text = st.auc;
    r.auc_image = si.auc;
    r.auc_mm = sm.auc;
    r.lift_image_pct = relative_lift_pct(si.auc, st.auc);
    r.lift_mm_pct = relative_lift_pct(sm.auc, st.auc);
    r.accuracy_text = st.accuracy;
    r.accuracy_image = si.accuracy;
    r.accuracy_mm = sm.accuracy;
    r.n_train = parts.train.size();
    r.n_test = parts.test.size();
    r.seed = cfg.seed;
    return r;
}

} // namespace imgq

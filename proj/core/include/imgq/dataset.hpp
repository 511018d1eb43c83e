#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace imgq {

struct ListingRecord {
    std::uint64_t listing_id = 0;
    std::string image_path;
    std::string title;
    std::vector<std::string> tags;
    std::uint64_t favorites = 0;
    std::uint64_t clicks = 0;
    std::uint64_t purchases = 0;

    bool operator==(const ListingRecord&) const = default;
};

struct LabeledExample {
    std::uint64_t listing_id = 0;
    std::uint64_t popularity = 0;
    int label = 0;
    /// Position of the record in its manifest.
    std::size_t index = 0;

    bool operator==(const LabeledExample&) const = default;
};

std::uint64_t popularity_score(const ListingRecord& r) noexcept;

enum class BinarizePolicy { Median, Positive };

BinarizePolicy parse_binarize_policy(const std::string& s);

/// Median policy: 1 iff score > median. Positive policy: 1 iff score > 0.
std::vector<int> binarize(const std::vector<std::uint64_t>& scores, BinarizePolicy policy);

std::vector<LabeledExample> label_records(const std::vector<ListingRecord>& records,
                                          BinarizePolicy policy);

struct Split {
    std::vector<LabeledExample> train;
    std::vector<LabeledExample> test;
};

/// Stratified, seeded split. Each class contributes round(n_c * f) items to
/// the test side (largest remainder keeps the total at round(n * f)) and at
/// least one item to each side. Both sides keep manifest order.
Split split(const std::vector<LabeledExample>& examples, double test_fraction, std::uint64_t seed);

/// JSON Lines manifest. Relative image paths are kept verbatim; use
/// resolve_image_path to locate files.
std::vector<ListingRecord> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const std::vector<ListingRecord>& records);
std::string manifest_line(const ListingRecord& r);
ListingRecord parse_manifest_line(const std::string& line);

std::filesystem::path resolve_image_path(const std::filesystem::path& manifest_path,
                                         const std::string& image_path);

struct SyntheticConfig {
    int image_size = 128;
    /// Weights of the latent signals in the engagement logit.
    double quality_weight = 4.0;
    double text_weight = 1.2;
    double bias = 0.0;
};

struct SyntheticListing {
    ListingRecord record;
    double blur_sigma = 0.0;
    double clutter = 0.0;
    bool on_thirds = false;
    int premium_tokens = 0;
    double latent_quality = 0.0;
    double latent_text = 0.0;
};

/// Writes n procedural listing PNGs plus manifest.jsonl into out_dir.
/// Engagement follows a logistic model of both the latent image quality
/// (sharp, uncluttered, subject on a thirds intersection) and the count of
/// premium title/tag tokens.
std::vector<SyntheticListing> generate_synthetic(int n, std::uint64_t seed,
                                                 const std::filesystem::path& out_dir,
                                                 const SyntheticConfig& cfg = {});

} // namespace imgq

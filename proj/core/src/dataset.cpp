#include "imgq/dataset.hpp"

#include "imgq/codec.hpp"
#include "imgq/error.hpp"
#include "imgq/imgcore.hpp"
#include "imgq/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <unordered_set>

namespace imgq {

using ojson = nlohmann::ordered_json;

std::uint64_t popularity_score(const ListingRecord& r) noexcept {
    return r.favorites + r.clicks + r.purchases;
}

BinarizePolicy parse_binarize_policy(const std::string& s) {
    if (s == "median")
        return BinarizePolicy::Median;
    if (s == "positive")
        return BinarizePolicy::Positive;
    throw Error(ErrorCode::InvalidArgument, "unknown binarize policy: " + s);
}

std::vector<int> binarize(const std::vector<std::uint64_t>& scores, BinarizePolicy policy) {
    if (scores.empty())
        throw Error(ErrorCode::EmptyInput, "no scores to binarize");
    double threshold = 0.0;
    if (policy == BinarizePolicy::Median) {
        std::vector<std::uint64_t> sorted = scores;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t n = sorted.size();
        threshold = n % 2 == 1
                        ? static_cast<double>(sorted[n / 2])
                        : 0.5 * (static_cast<double>(sorted[n / 2 - 1]) + static_cast<double>(sorted[n / 2]));
    }
    std::vector<int> labels(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        labels[i] = static_cast<double>(scores[i]) > threshold ? 1 : 0;
    return labels;
}

std::vector<LabeledExample> label_records(const std::vector<ListingRecord>& records,
                                          BinarizePolicy policy) {
    std::vector<std::uint64_t> scores;
    scores.reserve(records.size());
    for (const auto& r : records)
        scores.push_back(popularity_score(r));
    const auto labels = binarize(scores, policy);
    std::vector<LabeledExample> out(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        out[i] = {records[i].listing_id, scores[i], labels[i], i};
    return out;
}

Split split(const std::vector<LabeledExample>& examples, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw Error(ErrorCode::InvalidArgument, "test_fraction must lie in (0, 1)");
    std::array<std::vector<std::size_t>, 2> members;
    for (std::size_t i = 0; i < examples.size(); ++i)
        members[examples[i].label != 0 ? 1 : 0].push_back(i);
    for (const auto& m : members)
        if (m.size() < 2)
            throw Error(ErrorCode::InsufficientClassMembers,
                        "each class needs at least two examples for a stratified split");

    const double n = static_cast<double>(examples.size());
    const auto total = static_cast<std::size_t>(std::llround(n * test_fraction));
    std::array<std::size_t, 2> quota{};
    std::array<double, 2> remainder{};
    for (int c = 0; c < 2; ++c) {
        const double exact = static_cast<double>(members[c].size()) * test_fraction;
        quota[c] = static_cast<std::size_t>(std::floor(exact));
        remainder[c] = exact - std::floor(exact);
    }
    std::size_t assigned = quota[0] + quota[1];
    // Hand out the leftover slots by largest remainder, class 0 first on ties.
    while (assigned < total) {
        const int c = remainder[1] > remainder[0] ? 1 : 0;
        ++quota[c];
        remainder[c] = -1.0;
        ++assigned;
    }
    for (int c = 0; c < 2; ++c)
        quota[c] = std::clamp<std::size_t>(quota[c], 1, members[c].size() - 1);

    Rng rng(seed);
    std::vector<char> in_test(examples.size(), 0);
    for (int c = 0; c < 2; ++c) {
        auto order = members[c];
        rng.shuffle(order);
        for (std::size_t k = 0; k < quota[c]; ++k)
            in_test[order[k]] = 1;
    }
    Split s;
    for (std::size_t i = 0; i < examples.size(); ++i)
        (in_test[i] ? s.test : s.train).push_back(examples[i]);
    return s;
}

namespace {

std::uint64_t read_count(const ojson& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number_unsigned())
        throw Error(ErrorCode::InvalidArgument, std::string(key) + " must be a non-negative integer");
    return v.get<std::uint64_t>();
}

} // namespace

std::string manifest_line(const ListingRecord& r) {
    ojson j;
    j["listing_id"] = r.listing_id;
    j["image_path"] = r.image_path;
    j["title"] = r.title;
    j["tags"] = r.tags;
    j["favorites"] = r.favorites;
    j["clicks"] = r.clicks;
    j["purchases"] = r.purchases;
    return j.dump();
}

ListingRecord parse_manifest_line(const std::string& line) {
    ojson j;
    try {
        j = ojson::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed manifest line: ") + e.what());
    }
    try {
        ListingRecord r;
        r.listing_id = read_count(j, "listing_id");
        r.image_path = j.at("image_path").get<std::string>();
        r.title = j.value("title", std::string());
        if (j.contains("tags"))
            r.tags = j.at("tags").get<std::vector<std::string>>();
        r.favorites = read_count(j, "favorites");
        r.clicks = read_count(j, "clicks");
        r.purchases = read_count(j, "purchases");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("bad manifest record: ") + e.what());
    }
}

std::vector<ListingRecord> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open manifest " + path.string());
    std::vector<ListingRecord> records;
    std::unordered_set<std::uint64_t> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        ListingRecord r;
        try {
            r = parse_manifest_line(line);
        } catch (const Error& e) {
            throw Error(e.code(), path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (!seen.insert(r.listing_id).second)
            throw Error(ErrorCode::InvalidArgument, path.string() + ":" + std::to_string(line_no) +
                                                        ": duplicate listing_id " +
                                                        std::to_string(r.listing_id));
        records.push_back(std::move(r));
    }
    if (in.bad())
        throw Error(ErrorCode::IoError, "error reading manifest " + path.string());
    return records;
}

void write_manifest(const std::filesystem::path& path, const std::vector<ListingRecord>& records) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write manifest " + path.string());
    for (const auto& r : records)
        out << manifest_line(r) << '\n';
    if (!out)
        throw Error(ErrorCode::IoError, "error writing manifest " + path.string());
}

std::filesystem::path resolve_image_path(const std::filesystem::path& manifest_path,
                                         const std::string& image_path) {
    std::filesystem::path p(image_path);
    if (p.is_absolute())
        return p;
    return manifest_path.parent_path() / p;
}

// Synthetic corpus ----------------------------------------------------------

namespace {

constexpr std::array kGenericTokens{
    "mug",     "ceramic", "handmade", "vintage", "bowl",   "ring",    "necklace", "print",
    "poster",  "wooden",  "blue",     "red",     "green",  "small",   "large",    "gift",
    "custom",  "linen",   "cotton",   "rustic",  "modern", "decor",   "kitchen",  "wall",
    "art",     "set",     "pair",     "earrings","silver", "glass",   "candle",   "soap",
    "knit",    "scarf",   "bag",      "leather", "planter","lamp",    "frame",    "card"};

constexpr std::array kPremiumTokens{"artisan", "heirloom", "luxury", "sterling",
                                    "signed",  "limited",  "studio", "original"};

struct Rgb {
    double r, g, b;
};

Rgb random_color(Rng& rng, double lo, double hi) {
    return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

void fill_rect(RasterImage& img, int x0, int y0, int x1, int y1, Rgb c) {
    x0 = std::max(x0, 0);
    y0 = std::max(y0, 0);
    x1 = std::min(x1, img.width());
    y1 = std::min(y1, img.height());
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) {
            img.at(x, y, 0) = c.r;
            img.at(x, y, 1) = c.g;
            img.at(x, y, 2) = c.b;
        }
}

RasterImage render_listing(Rng& rng, int size, double blur_sigma, double clutter, bool on_thirds) {
    RasterImage img(size, size, ColorSpace::RGB);
    const double s = size;

    // Soft vertical gradient backdrop.
    const Rgb top = random_color(rng, 0.55, 0.95);
    const Rgb bottom = random_color(rng, 0.45, 0.9);
    for (int y = 0; y < size; ++y) {
        const double t = y / (s - 1.0);
        for (int x = 0; x < size; ++x) {
            img.at(x, y, 0) = top.r + (bottom.r - top.r) * t;
            img.at(x, y, 1) = top.g + (bottom.g - top.g) * t;
            img.at(x, y, 2) = top.b + (bottom.b - top.b) * t;
        }
    }

    // Background clutter: small random patches in random colors.
    const int patches = static_cast<int>(std::lround(clutter * 60.0));
    for (int i = 0; i < patches; ++i) {
        const int w = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(size / 8)));
        const int h = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(size / 8)));
        const int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(size)));
        const int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(size)));
        fill_rect(img, x, y, x + w, y + h, random_color(rng, 0.0, 1.0));
    }

    // Striped subject disk.
    double cx = 0.5, cy = 0.5;
    if (on_thirds) {
        cx = rng.bernoulli(0.5) ? 1.0 / 3.0 : 2.0 / 3.0;
        cy = rng.bernoulli(0.5) ? 1.0 / 3.0 : 2.0 / 3.0;
    }
    cx = (cx + rng.uniform(-0.03, 0.03)) * s;
    cy = (cy + rng.uniform(-0.03, 0.03)) * s;
    const double radius = s * rng.uniform(0.12, 0.18);
    const Rgb base = random_color(rng, 0.05, 0.6);
    const Rgb stripe = random_color(rng, 0.4, 1.0);
    const double period = rng.uniform(4.0, 8.0);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
            if (dx * dx + dy * dy > radius * radius)
                continue;
            const bool band = std::fmod(dx + dy + 4.0 * s, period) < period / 2.0;
            const Rgb c = band ? stripe : base;
            img.at(x, y, 0) = c.r;
            img.at(x, y, 1) = c.g;
            img.at(x, y, 2) = c.b;
        }

    if (blur_sigma > 0.0)
        img = gaussian_blur(img, blur_sigma);
    for (double& v : img.data())
        v = std::clamp(v, 0.0, 1.0);
    return img;
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

} // namespace

std::vector<SyntheticListing> generate_synthetic(int n, std::uint64_t seed,
                                                 const std::filesystem::path& out_dir,
                                                 const SyntheticConfig& cfg) {
    if (n < 20)
        throw Error(ErrorCode::InvalidArgument, "synthetic corpus needs at least 20 listings");
    if (cfg.image_size < 32)
        throw Error(ErrorCode::InvalidArgument, "synthetic image size too small");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());

    // Separate streams so scene, text and engagement draws stay independent.
    Rng master(seed);
    Rng scene(master.next());
    Rng words(master.next());
    Rng engagement(master.next());
    std::vector<SyntheticListing> out;
    out.reserve(static_cast<std::size_t>(n));
    std::vector<ListingRecord> records;
    records.reserve(static_cast<std::size_t>(n));

    for (int i = 0; i < n; ++i) {
        SyntheticListing s;
        s.blur_sigma = scene.uniform(0.0, 3.0);
        s.clutter = scene.uniform();
        s.on_thirds = scene.bernoulli(0.5);
        s.latent_quality =
            2.0 * ((1.0 - s.blur_sigma / 3.0) + (1.0 - s.clutter) + (s.on_thirds ? 1.0 : 0.0)) / 3.0 - 1.0;

        // Premium tokens land in the title or the tags.
        s.premium_tokens = static_cast<int>(words.below(4));
        s.latent_text = 2.0 * s.premium_tokens / 3.0 - 1.0;
        std::vector<std::string> title_words;
        const int n_title = 3 + static_cast<int>(words.below(4));
        for (int k = 0; k < n_title; ++k)
            title_words.emplace_back(kGenericTokens[words.below(kGenericTokens.size())]);
        std::vector<std::string> tags;
        const int n_tags = 2 + static_cast<int>(words.below(4));
        for (int k = 0; k < n_tags; ++k)
            tags.emplace_back(kGenericTokens[words.below(kGenericTokens.size())]);
        for (int k = 0; k < s.premium_tokens; ++k) {
            std::string word = kPremiumTokens[words.below(kPremiumTokens.size())];
            if (words.bernoulli(0.5)) {
                const auto pos = words.below(title_words.size() + 1);
                title_words.insert(title_words.begin() + static_cast<std::ptrdiff_t>(pos), std::move(word));
            } else {
                tags.push_back(std::move(word));
            }
        }
        std::string title;
        for (std::size_t k = 0; k < title_words.size(); ++k) {
            if (k > 0)
                title += ' ';
            title += title_words[k];
        }
        if (!title.empty())
            title[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(title[0])));

        const double p = logistic(cfg.bias + cfg.quality_weight * s.latent_quality +
                                  cfg.text_weight * s.latent_text);
        const bool engaged = engagement.bernoulli(p);

        const RasterImage img = render_listing(scene, cfg.image_size, s.blur_sigma, s.clutter, s.on_thirds);
        char name[32];
        std::snprintf(name, sizeof name, "listing_%05d.png", i + 1);
        write_file(out_dir / name, encode_png(img));

        ListingRecord& r = s.record;
        r.listing_id = 1000 + static_cast<std::uint64_t>(i);
        r.image_path = name;
        r.title = std::move(title);
        r.tags = std::move(tags);
        r.favorites = engagement.poisson(engaged ? 6.0 : 1.0);
        r.clicks = engagement.poisson(engaged ? 30.0 : 8.0);
        r.purchases = engagement.poisson(engaged ? 2.0 : 0.3);
        records.push_back(r);
        out.push_back(std::move(s));
    }
    write_manifest(out_dir / "manifest.jsonl", records);
    return out;
}

} // namespace imgq

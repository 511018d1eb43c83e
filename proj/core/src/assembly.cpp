#include "imgq/assembly.hpp"

#include "imgq/error.hpp"
#include "imgq/imgcore.hpp"
#include "imgq/simplicity.hpp"
#include "imgq/texture_dof.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <unordered_set>

namespace imgq {

namespace {

std::vector<SchemaEntry> build_schema() {
    const std::pair<std::string_view, std::size_t> rows[] = {
        {"Ke06-qa", 1},          {"Ke06-qh", 1},    {"Ke06-qf", 1},    {"Ke06-tong", 1},
        {"Ke06-qct", 1},         {"Ke06-qb", 1},    {"mser-count", 1}, {"Mai11-thirds map", 25},
        {"Wang15-f1", 1},        {"Wang15-f14", 1}, {"Wang15-f18", 1}, {"Wang15-f21", 1},
        {"Wang15-f22", 1},       {"Wang15-f26", 1}, {"Khosla14-texture", kLbpDim},
    };
    std::vector<SchemaEntry> out;
    std::size_t offset = 0;
    for (const auto& [name, len] : rows) {
        out.push_back({name, offset, len});
        offset += len;
    }
    return out;
}

// Writes each feature into its schema slot and refuses double writes, so
// the layout table stays the only place offsets are defined.
class SlotWriter {
public:
    explicit SlotWriter(std::vector<double>& values)
        : values_(values), filled_(values.size(), false) {}

    void put(std::string_view name, std::span<const double> data) {
        const SchemaEntry& e = schema_entry(name);
        if (data.size() != e.length)
            throw Error(ErrorCode::SchemaMismatch, std::string(name) + " has wrong length");
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (filled_[e.offset + i])
                throw Error(ErrorCode::SchemaMismatch, "overlapping schema slot in " + std::string(name));
            if (!std::isfinite(data[i]))
                throw Error(ErrorCode::InvalidArgument, "non-finite value in " + std::string(name));
            filled_[e.offset + i] = true;
            values_[e.offset + i] = data[i];
        }
    }

    void put(std::string_view name, double v) { put(name, std::span<const double>(&v, 1)); }

    void finish() const {
        for (bool f : filled_)
            if (!f)
                throw Error(ErrorCode::SchemaMismatch, "quality vector has unfilled slots");
    }

private:
    std::vector<double>& values_;
    std::vector<bool> filled_;
};

constexpr char kMagic[4] = {'I', 'M', 'G', 'Q'};

template <typename T>
void put_le(std::ostream& out, T v) {
    static_assert(std::is_integral_v<T>);
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i)
        buf[i] = static_cast<unsigned char>((static_cast<std::make_unsigned_t<T>>(v) >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof(T)))
        throw Error(ErrorCode::IoError, "truncated feature file");
    std::make_unsigned_t<T> v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        v |= static_cast<std::make_unsigned_t<T>>(buf[i]) << (8 * i);
    return static_cast<T>(v);
}

} // namespace

const std::vector<SchemaEntry>& schema() {
    static const std::vector<SchemaEntry> s = build_schema();
    return s;
}

const SchemaEntry& schema_entry(std::string_view name) {
    for (const auto& e : schema())
        if (e.name == name)
            return e;
    throw Error(ErrorCode::InvalidArgument, "unknown feature " + std::string(name));
}

double QualityVector::operator[](std::string_view name) const {
    return values.at(schema_entry(name).offset);
}

QualityVector extract_quality(const RasterImage& rgb, const QualityConfig& cfg) {
    if (rgb.colorspace() != ColorSpace::RGB)
        throw Error(ErrorCode::InvalidArgument, "extract_quality needs RGB");
    if (rgb.width() < kMinExtractExtent || rgb.height() < kMinExtractExtent)
        throw Error(ErrorCode::TooSmall, "ImageTooSmall: quality extraction needs at least 32x32, got " +
                                             std::to_string(rgb.width()) + "x" +
                                             std::to_string(rgb.height()));
    QualityVector q;
    q.values.assign(kQualityDim, 0.0);
    SlotWriter w(q.values);

    const Plane lab_l = lightness_plane(rgb);
    const double lightness = lab_l.sum() / static_cast<double>(lab_l.size());
    const DetailFeatures detail = detail_features(lab_l);
    w.put("Ke06-qa", spatial_edge_distribution(rgb, cfg.edge_policy));
    w.put("Ke06-qh", hue_count(rgb));
    w.put("Ke06-qf", blur_frequency(rgb, cfg.blur));
    w.put("Ke06-tong", blur_edge_structure(rgb, cfg.blur));
    w.put("Ke06-qct", contrast(rgb));
    w.put("Ke06-qb", lightness);
    w.put("mser-count", static_cast<double>(mser_count(rgb, cfg.mser)));
    const ThirdsMap thirds = thirds_map(spectral_residual_saliency(rgb, cfg.saliency));
    w.put("Mai11-thirds map", thirds);
    w.put("Wang15-f1", lightness);
    w.put("Wang15-f14", detail.wavelet_smoothness);
    w.put("Wang15-f18", detail.laplacian_smoothness);
    w.put("Wang15-f21", detail.dof_wavelet);
    w.put("Wang15-f22", detail.dof_laplacian);
    w.put("Wang15-f26", detail.dof_spatial_spread);
    w.put("Khosla14-texture", lbp_pyramid(rgb));
    w.finish();
    return q;
}

void write_vectors(const std::filesystem::path& path, const std::vector<FeatureRecord>& records) {
    std::unordered_set<std::uint64_t> ids;
    for (const auto& [id, q] : records) {
        if (!ids.insert(id).second)
            throw Error(ErrorCode::InvalidArgument, "duplicate listing id " + std::to_string(id));
        if (q.values.size() != kQualityDim || q.schema_version != kSchemaVersion)
            throw Error(ErrorCode::SchemaMismatch, "vector for listing " + std::to_string(id) +
                                                       " does not match the schema");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out.write(kMagic, 4);
    put_le<std::uint32_t>(out, kSchemaVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(records.size()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(kQualityDim));
    for (const auto& [id, q] : records) {
        put_le<std::uint64_t>(out, id);
        for (double v : q.values)
            put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
    }
    if (!out)
        throw Error(ErrorCode::IoError, "short write to " + path.string());
}

std::vector<FeatureRecord> read_vectors(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw Error(ErrorCode::IoError, path.string() + " is not a feature file");
    const auto version = get_le<std::uint32_t>(in);
    const auto count = get_le<std::uint32_t>(in);
    const auto dim = get_le<std::uint32_t>(in);
    if (version != kSchemaVersion)
        throw Error(ErrorCode::SchemaMismatch, "schema version " + std::to_string(version) +
                                                   ", expected " + std::to_string(kSchemaVersion));
    if (dim != kQualityDim)
        throw Error(ErrorCode::SchemaMismatch, "dimension " + std::to_string(dim) + ", expected " +
                                                   std::to_string(kQualityDim));
    std::vector<FeatureRecord> records;
    records.reserve(count);
    for (std::uint32_t r = 0; r < count; ++r) {
        FeatureRecord rec;
        rec.first = get_le<std::uint64_t>(in);
        rec.second.values.resize(dim);
        for (auto& v : rec.second.values)
            v = std::bit_cast<double>(get_le<std::uint64_t>(in));
        records.push_back(std::move(rec));
    }
    return records;
}

void write_vectors_csv(const std::filesystem::path& path, const std::vector<FeatureRecord>& records) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out << "listing_id";
    for (const auto& e : schema()) {
        if (e.length == 1)
            out << ',' << e.name;
        else
            for (std::size_t i = 0; i < e.length; ++i)
                out << ',' << e.name << '[' << i << ']';
    }
    out << '\n' << std::setprecision(17);
    for (const auto& [id, q] : records) {
        out << id;
        for (double v : q.values)
            out << ',' << v;
        out << '\n';
    }
}

} // namespace imgq

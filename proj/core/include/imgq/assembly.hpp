#pragma once

#include "imgq/blur.hpp"
#include "imgq/composition.hpp"
#include "imgq/image.hpp"
#include "imgq/simplicity.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <utility>
#include <vector>

namespace imgq {

inline constexpr std::size_t kQualityDim = 5158;
inline constexpr std::uint32_t kSchemaVersion = 1;
inline constexpr int kMinExtractExtent = 32;

struct SchemaEntry {
    std::string_view name;
    std::size_t offset;
    std::size_t length;
};

/// Feature layout, in extraction order.
const std::vector<SchemaEntry>& schema();

/// Looks up a schema entry by name; throws InvalidArgument if absent.
const SchemaEntry& schema_entry(std::string_view name);

struct QualityVector {
    std::vector<double> values;
    std::uint32_t schema_version = kSchemaVersion;

    double operator[](std::string_view name) const;
    bool operator==(const QualityVector&) const = default;
};

struct QualityConfig {
    BlurConfig blur;
    SaliencyConfig saliency;
    MserConfig mser;
    DegeneratePolicy edge_policy = DegeneratePolicy::Lenient;
};

QualityVector extract_quality(const RasterImage& rgb, const QualityConfig& cfg = {});

using FeatureRecord = std::pair<std::uint64_t, QualityVector>;

/// Binary container: "IMGQ", u32 version, u32 count, u32 dim, then per
/// record u64 id followed by dim little-endian f64 values.
void write_vectors(const std::filesystem::path& path, const std::vector<FeatureRecord>& records);
std::vector<FeatureRecord> read_vectors(const std::filesystem::path& path);

void write_vectors_csv(const std::filesystem::path& path, const std::vector<FeatureRecord>& records);

} // namespace imgq

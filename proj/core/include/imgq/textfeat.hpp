#pragma once

#include "imgq/assembly.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace imgq {

inline constexpr std::uint32_t kTextDim = 1u << 18;
inline constexpr std::uint32_t kMultimodalDim = static_cast<std::uint32_t>(kQualityDim) + kTextDim;

/// Sorted (index, value) pairs with unique indices below dim.
struct SparseVector {
    std::uint32_t dim = 0;
    std::vector<std::pair<std::uint32_t, double>> entries;

    bool operator==(const SparseVector&) const = default;
};

/// Lowercased runs of alphanumeric code points of a UTF-8 string.
/// Non-ASCII letters count as alphanumeric; Unicode punctuation and
/// spaces separate tokens.
std::vector<std::string> tokenize(std::string_view text);

/// 64-bit FNV-1a.
std::uint64_t stable_hash(std::string_view s) noexcept;

/// Hashed counts of "T1:" title unigrams, "T2:a_b" title bigrams and
/// "G1:" tag unigrams, modulo 2^18.
SparseVector text_vector(std::string_view title, const std::vector<std::string>& tags);

/// Quality block at [0, 5158), text block shifted by 5158.
SparseVector concat_mm(const QualityVector& q, const SparseVector& t);

} // namespace imgq

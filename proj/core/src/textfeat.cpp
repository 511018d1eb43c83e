#include "imgq/textfeat.hpp"

#include "imgq/error.hpp"

#include <map>

namespace imgq {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at s[i], advancing i. Malformed input
// yields kInvalid and skips a single byte.
char32_t next_code_point(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    int len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
        ++i;
        return b0;
    } else if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return kInvalid;
    }
    if (i + len > s.size()) {
        ++i;
        return kInvalid;
    }
    for (int k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return kInvalid;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += len;
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

// Non-ASCII code points are word characters unless they fall in a
// punctuation, symbol, space or emoji block.
bool is_word_char(char32_t cp) {
    if (cp < 0x80)
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    if (cp == kInvalid)
        return false;
    if (in(cp, 0x80, 0xBF)) {
        switch (cp) {
        case 0xAA: case 0xB2: case 0xB3: case 0xB5: case 0xB9: case 0xBA:
        case 0xBC: case 0xBD: case 0xBE:
            return true;
        default:
            return false;
        }
    }
    if (cp == 0xD7 || cp == 0xF7)
        return false;
    if (in(cp, 0x2000, 0x206F) || in(cp, 0x20A0, 0x20CF) || in(cp, 0x2190, 0x2BFF) ||
        in(cp, 0x3000, 0x303F) || in(cp, 0xFE00, 0xFE0F) || in(cp, 0xFE30, 0xFE4F) ||
        in(cp, 0xFF00, 0xFF0F) || in(cp, 0xFF1A, 0xFF20) || in(cp, 0xFF3B, 0xFF40) ||
        in(cp, 0xFF5B, 0xFF65) || in(cp, 0x1F000, 0x1FAFF))
        return false;
    return true;
}

char32_t to_lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z')
        return cp + 32;
    if (cp < 0x80)
        return cp;
    if (in(cp, 0xC0, 0xDE) && cp != 0xD7)
        return cp + 0x20;
    if (cp == 0x130)
        return 'i';
    if (cp == 0x178)
        return 0xFF;
    if ((in(cp, 0x100, 0x137) || in(cp, 0x14A, 0x177)) && cp % 2 == 0)
        return cp + 1;
    if ((in(cp, 0x139, 0x148) || in(cp, 0x179, 0x17E)) && cp % 2 == 1)
        return cp + 1;
    if (in(cp, 0x391, 0x3A9) && cp != 0x3A2)
        return cp + 0x20;
    if (cp == 0x386)
        return 0x3AC;
    if (in(cp, 0x388, 0x38A))
        return cp + 37;
    if (cp == 0x38C)
        return 0x3CC;
    if (cp == 0x38E || cp == 0x38F)
        return cp + 63;
    if (in(cp, 0x410, 0x42F))
        return cp + 0x20;
    if (in(cp, 0x400, 0x40F))
        return cp + 0x50;
    return cp;
}

} // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    while (i < text.size()) {
        const char32_t cp = next_code_point(text, i);
        if (is_word_char(cp)) {
            append_utf8(current, to_lower(cp));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty())
        tokens.push_back(std::move(current));
    return tokens;
}

std::uint64_t stable_hash(std::string_view s) noexcept {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

SparseVector text_vector(std::string_view title, const std::vector<std::string>& tags) {
    std::map<std::uint32_t, double> counts;
    auto add = [&](const std::string& feature) {
        counts[static_cast<std::uint32_t>(stable_hash(feature) % kTextDim)] += 1.0;
    };
    const auto words = tokenize(title);
    for (const auto& w : words)
        add("T1:" + w);
    for (std::size_t i = 0; i + 1 < words.size(); ++i)
        add("T2:" + words[i] + "_" + words[i + 1]);
    for (const auto& tag : tags)
        for (const auto& w : tokenize(tag))
            add("G1:" + w);

    SparseVector v;
    v.dim = kTextDim;
    v.entries.assign(counts.begin(), counts.end());
    return v;
}

SparseVector concat_mm(const QualityVector& q, const SparseVector& t) {
    if (q.values.size() != kQualityDim)
        throw Error(ErrorCode::DimensionMismatch, "quality vector has wrong dimension");
    if (t.dim != kTextDim)
        throw Error(ErrorCode::DimensionMismatch, "text vector has wrong dimension");
    SparseVector out;
    out.dim = kMultimodalDim;
    out.entries.reserve(q.values.size() + t.entries.size());
    for (std::size_t i = 0; i < q.values.size(); ++i)
        out.entries.emplace_back(static_cast<std::uint32_t>(i), q.values[i]);
    for (const auto& [idx, v] : t.entries)
        out.entries.emplace_back(static_cast<std::uint32_t>(kQualityDim) + idx, v);
    return out;
}

} // namespace imgq

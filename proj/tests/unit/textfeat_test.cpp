#include "imgq/textfeat.hpp"

#include "expect_error.hpp"

#include <gtest/gtest.h>

namespace imgq {
namespace {

using Tokens = std::vector<std::string>;

TEST(Tokenize, Examples) {
    EXPECT_EQ(tokenize("Hand-Made Mug!"), (Tokens{"hand", "made", "mug"}));
    EXPECT_EQ(tokenize(""), Tokens{});
    EXPECT_EQ(tokenize("café au lait"), (Tokens{"café", "au", "lait"}));
    EXPECT_EQ(tokenize("  --  "), Tokens{});
    EXPECT_EQ(tokenize("10x12 in."), (Tokens{"10x12", "in"}));
}

TEST(Tokenize, UnicodeLowercaseAndSeparators) {
    EXPECT_EQ(tokenize("ÉTÉ Straße"), (Tokens{"été", "straße"}));
    EXPECT_EQ(tokenize("ΚΑΦΈ Чай"), (Tokens{"καφέ", "чай"}));
    EXPECT_EQ(tokenize("mug\u2014cup\u3000tea"), (Tokens{"mug", "cup", "tea"}));
    EXPECT_EQ(tokenize("love\U0001F600it"), (Tokens{"love", "it"}));
    EXPECT_EQ(tokenize("a\xff\xfe" "b"), (Tokens{"a", "b"}));
}

TEST(Hash, KnownValues) {
    EXPECT_EQ(stable_hash(""), 14695981039346656037ull);
    EXPECT_EQ(stable_hash("a"), 12638187200555641996ull);
    EXPECT_EQ(stable_hash("foobar"), 9625390261332436968ull);
    EXPECT_EQ(stable_hash("T1:red"), 1954025163890795635ull);
    EXPECT_EQ(stable_hash("T1:mug"), 12361311738060891367ull);
    EXPECT_EQ(stable_hash("T2:red_mug"), 12870697294275046922ull);
    EXPECT_EQ(stable_hash("G1:mug"), 13341604943660143048ull);
    EXPECT_EQ(stable_hash("T1:café"), 3266829085819518634ull);
    EXPECT_EQ(stable_hash("G1:vintage"), 14160762154422385181ull);
    EXPECT_EQ(stable_hash("T2:hand_made"), 933572210339803866ull);
}

TEST(TextVector, RedMug) {
    const auto v = text_vector("red mug", {});
    EXPECT_EQ(v.dim, 262144u);
    using E = std::pair<std::uint32_t, double>;
    EXPECT_EQ(v.entries, (std::vector<E>{{25831, 1.0}, {28170, 1.0}, {173171, 1.0}}));
}

TEST(TextVector, TagOnly) {
    const auto v = text_vector("", {"mug"});
    ASSERT_EQ(v.entries.size(), 1u);
    EXPECT_EQ(v.entries[0].first, 86472u);
}

TEST(TextVector, CountsRepeats) {
    const auto v = text_vector("mug mug", {"Mug", "mug"});
    double total = 0.0;
    for (const auto& [i, x] : v.entries)
        total += x;
    // T1:mug x2, T2:mug_mug x1, G1:mug x2
    EXPECT_EQ(total, 5.0);
    for (const auto& [i, x] : v.entries)
        if (i == 25831u)
            EXPECT_EQ(x, 2.0);
}

TEST(TextVector, SortedUniqueInRange) {
    const auto v = text_vector("Vintage Sterling Silver Ring, size 7 - handmade in Oregon",
                               {"ring", "silver", "vintage", "jewelry", "gift for her"});
    for (std::size_t i = 0; i < v.entries.size(); ++i) {
        EXPECT_LT(v.entries[i].first, kTextDim);
        if (i > 0)
            EXPECT_LT(v.entries[i - 1].first, v.entries[i].first);
    }
}

TEST(TextVector, TagOrderInvariantBigramOrderSensitive) {
    EXPECT_EQ(text_vector("blue bowl", {"a", "b", "c"}), text_vector("blue bowl", {"c", "a", "b"}));
    EXPECT_NE(text_vector("blue bowl", {}), text_vector("bowl blue", {}));
    EXPECT_EQ(text_vector("x y z", {"t"}), text_vector("x y z", {"t"}));
}

TEST(Concat, Dimensions) {
    EXPECT_EQ(kMultimodalDim, 267302u);
    QualityVector q;
    q.values.assign(kQualityDim, 0.0);
    q.values[0] = 0.5;
    q.values[5157] = -1.0;
    const auto mm = concat_mm(q, text_vector("red mug", {}));
    EXPECT_EQ(mm.dim, 267302u);
    ASSERT_EQ(mm.entries.size(), kQualityDim + 3);
    for (std::size_t i = 0; i < kQualityDim; ++i) {
        EXPECT_EQ(mm.entries[i].first, i);
        EXPECT_EQ(mm.entries[i].second, q.values[i]);
    }
    EXPECT_EQ(mm.entries[kQualityDim].first, 5158u + 25831u);
}

TEST(Concat, EmptyTextIsIdentity) {
    QualityVector q;
    q.values.assign(kQualityDim, 2.0);
    const auto mm = concat_mm(q, text_vector("", {}));
    ASSERT_EQ(mm.entries.size(), kQualityDim);
    for (std::size_t i = 0; i < kQualityDim; ++i)
        EXPECT_EQ(mm.entries[i].second, 2.0);
}

TEST(Concat, RejectsWrongDims) {
    QualityVector q;
    q.values.assign(10, 0.0);
    EXPECT_IMGQ_ERROR(concat_mm(q, text_vector("a", {})), ErrorCode::DimensionMismatch);
    q.values.assign(kQualityDim, 0.0);
    SparseVector t;
    t.dim = 7;
    EXPECT_IMGQ_ERROR(concat_mm(q, t), ErrorCode::DimensionMismatch);
}

} // namespace
} // namespace imgq

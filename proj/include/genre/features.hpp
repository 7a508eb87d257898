// genre/features.hpp -- the 20 stylometric parameters and feature tables
#pragma once

#include <array>
#include <charconv>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "genre/corpus.hpp"
#include "genre/errors.hpp"

namespace genre {

constexpr std::size_t kFeatureCount = 20;

/// Canonical feature order.  This order fixes feature-table columns and the
/// model's coefficient layout.
inline const std::array<std::string_view, kFeatureCount>& feature_names() {
    static const std::array<std::string_view, kFeatureCount> names = {
        "adverb_count",
        "char_count",
        "long_word_count",
        "preposition_count",
        "second_person_pronoun_count",
        "therefore_count",
        "words_per_sentence_avg",
        "chars_per_sentence_avg",
        "first_person_pronoun_count",
        "me_count",
        "present_participle_count",
        "sentence_count",
        "type_token_ratio",
        "i_count",
        "chars_per_word_avg",
        "it_count",
        "noun_count",
        "present_verb_count",
        "that_count",
        "which_count",
    };
    return names;
}

/// The 20 parameters for one document, plus the word count carried for the
/// per-word and per-sentence averages.
///
/// chars are counted over word-token surfaces only, in code points;
/// "long word" means strictly more than 6 characters; the type/token ratio
/// is a percentage of distinct lowercased word surfaces over word tokens.
struct FeatureVector {
    long long adverb_count = 0;
    long long char_count = 0;
    long long long_word_count = 0;
    long long preposition_count = 0;
    long long second_person_pronoun_count = 0;
    long long therefore_count = 0;
    double words_per_sentence_avg = 0.0;
    double chars_per_sentence_avg = 0.0;
    long long first_person_pronoun_count = 0;
    long long me_count = 0;
    long long present_participle_count = 0;
    long long sentence_count = 0;
    double type_token_ratio = 0.0;
    long long i_count = 0;
    double chars_per_word_avg = 0.0;
    long long it_count = 0;
    long long noun_count = 0;
    long long present_verb_count = 0;
    long long that_count = 0;
    long long which_count = 0;

    long long word_count = 0;  // carrier for the averages, not a model feature
};

inline FeatureVector extract_features(const TaggedDocument& doc, const TagMap& tagmap) {
    if (doc.sentences.empty()) throw EmptyDocumentError("document '" + doc.doc_id + "' is empty");
    FeatureVector fv;
    fv.sentence_count = static_cast<long long>(doc.sentences.size());
    std::unordered_set<std::string> types;
    for (const auto& sentence : doc.sentences) {
        for (const auto& token : sentence) {
            TagClassSet classes = tagmap.resolve(token.tag);
            if (classes.has(TagClass::Adverb)) ++fv.adverb_count;
            if (classes.has(TagClass::Preposition)) ++fv.preposition_count;
            if (classes.has(TagClass::Noun)) ++fv.noun_count;
            if (classes.has(TagClass::PresentParticiple)) ++fv.present_participle_count;
            if (classes.has(TagClass::PresentVerb)) ++fv.present_verb_count;
            if (classes.has(TagClass::Punctuation)) continue;
            // word token
            ++fv.word_count;
            long long len = detail::utf8_length(token.surface);
            fv.char_count += len;
            if (len > 6) ++fv.long_word_count;
            std::string lower = detail::to_lower(token.surface);
            types.insert(lower);
            if (lower == "therefore") ++fv.therefore_count;
            if (lower == "me") ++fv.me_count;
            if (lower == "i") ++fv.i_count;
            if (lower == "it") ++fv.it_count;
            if (lower == "that") ++fv.that_count;
            if (lower == "which") ++fv.which_count;
            if (tagmap.is_first_person(lower)) ++fv.first_person_pronoun_count;
            if (tagmap.is_second_person(lower)) ++fv.second_person_pronoun_count;
        }
    }
    if (fv.word_count == 0)
        throw DegenerateDocumentError("document '" + doc.doc_id +
                                      "' has no word tokens; averages are undefined");
    fv.words_per_sentence_avg = static_cast<double>(fv.word_count) / static_cast<double>(fv.sentence_count);
    fv.chars_per_sentence_avg = static_cast<double>(fv.char_count) / static_cast<double>(fv.sentence_count);
    fv.chars_per_word_avg = static_cast<double>(fv.char_count) / static_cast<double>(fv.word_count);
    fv.type_token_ratio = 100.0 * static_cast<double>(types.size()) / static_cast<double>(fv.word_count);
    return fv;
}

/// Canonical-order row; word_count is excluded.
inline std::array<double, kFeatureCount> to_row(const FeatureVector& fv) {
    return {
        static_cast<double>(fv.adverb_count),
        static_cast<double>(fv.char_count),
        static_cast<double>(fv.long_word_count),
        static_cast<double>(fv.preposition_count),
        static_cast<double>(fv.second_person_pronoun_count),
        static_cast<double>(fv.therefore_count),
        fv.words_per_sentence_avg,
        fv.chars_per_sentence_avg,
        static_cast<double>(fv.first_person_pronoun_count),
        static_cast<double>(fv.me_count),
        static_cast<double>(fv.present_participle_count),
        static_cast<double>(fv.sentence_count),
        fv.type_token_ratio,
        static_cast<double>(fv.i_count),
        fv.chars_per_word_avg,
        static_cast<double>(fv.it_count),
        static_cast<double>(fv.noun_count),
        static_cast<double>(fv.present_verb_count),
        static_cast<double>(fv.that_count),
        static_cast<double>(fv.which_count),
    };
}

/// Rebuilds a FeatureVector from a canonical row; the auxiliary word count
/// must be supplied separately.
inline FeatureVector from_row(std::span<const double, kFeatureCount> row, long long word_count) {
    FeatureVector fv;
    fv.adverb_count = static_cast<long long>(row[0]);
    fv.char_count = static_cast<long long>(row[1]);
    fv.long_word_count = static_cast<long long>(row[2]);
    fv.preposition_count = static_cast<long long>(row[3]);
    fv.second_person_pronoun_count = static_cast<long long>(row[4]);
    fv.therefore_count = static_cast<long long>(row[5]);
    fv.words_per_sentence_avg = row[6];
    fv.chars_per_sentence_avg = row[7];
    fv.first_person_pronoun_count = static_cast<long long>(row[8]);
    fv.me_count = static_cast<long long>(row[9]);
    fv.present_participle_count = static_cast<long long>(row[10]);
    fv.sentence_count = static_cast<long long>(row[11]);
    fv.type_token_ratio = row[12];
    fv.i_count = static_cast<long long>(row[13]);
    fv.chars_per_word_avg = row[14];
    fv.it_count = static_cast<long long>(row[15]);
    fv.noun_count = static_cast<long long>(row[16]);
    fv.present_verb_count = static_cast<long long>(row[17]);
    fv.that_count = static_cast<long long>(row[18]);
    fv.which_count = static_cast<long long>(row[19]);
    fv.word_count = word_count;
    return fv;
}

namespace detail {

/// Shortest round-trip decimal form.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, std::size_t lineno) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError("bad number '" + std::string(s) + "'", lineno);
    return v;
}

}  // namespace detail

/// One feature row per document, with labels when known.
struct FeatureTable {
    std::vector<std::string> doc_ids;
    std::vector<std::array<double, kFeatureCount>> rows;
    std::vector<std::string> labels;  // empty string = unlabeled
};

/// TSV export: doc_id, the 20 canonical columns, category.
inline std::string write_feature_tsv(const FeatureTable& table) {
    std::string out = "doc_id";
    for (auto name : feature_names()) {
        out += '\t';
        out += name;
    }
    out += "\tcategory\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        out += table.doc_ids[i];
        for (double v : table.rows[i]) {
            out += '\t';
            out += detail::format_double(v);
        }
        out += '\t';
        out += i < table.labels.size() ? table.labels[i] : std::string();
        out += '\n';
    }
    return out;
}

inline FeatureTable read_feature_tsv(std::string_view text) {
    auto lines = detail::split_lines(text);
    if (lines.empty()) throw ParseError("feature table has no header", 1);
    auto header = detail::split(lines[0], '\t');
    if (header.size() != kFeatureCount + 2 || header[0] != "doc_id" ||
        header[kFeatureCount + 1] != "category")
        throw ParseError("feature table header does not match the canonical columns", 1);
    for (std::size_t j = 0; j < kFeatureCount; ++j)
        if (header[j + 1] != feature_names()[j])
            throw ParseError("feature column " + std::to_string(j + 1) + " is '" +
                                 std::string(header[j + 1]) + "', expected '" +
                                 std::string(feature_names()[j]) + "'",
                             1);
    FeatureTable table;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::size_t lineno = i + 1;
        if (lines[i].empty()) continue;
        auto fields = detail::split(lines[i], '\t');
        if (fields.size() != kFeatureCount + 2)
            throw ParseError("expected " + std::to_string(kFeatureCount + 2) + " fields, got " +
                                 std::to_string(fields.size()),
                             lineno);
        table.doc_ids.emplace_back(fields[0]);
        std::array<double, kFeatureCount> row{};
        for (std::size_t j = 0; j < kFeatureCount; ++j)
            row[j] = detail::parse_double(fields[j + 1], lineno);
        table.rows.push_back(row);
        table.labels.emplace_back(detail::trim(fields[kFeatureCount + 1]));
    }
    return table;
}

}  // namespace genre

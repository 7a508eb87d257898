// genre/corpus.hpp -- tag maps, tagged-corpus parsing, manifests
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "genre/errors.hpp"
#include "genre/taxonomy.hpp"

namespace genre {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    return out;
}

inline bool is_ascii_punct(char c) {
    return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
           (c >= '{' && c <= '~');
}

inline bool all_punct(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!is_ascii_punct(c)) return false;
    return true;
}

/// Code points in a UTF-8 string: bytes that are not continuation bytes.
inline long long utf8_length(std::string_view s) {
    long long n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

/// Splits on '\n', dropping a trailing '\r' per line; the terminating empty
/// segment of a final newline is not produced.
inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    for (auto& l : lines)
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    return lines;
}

}  // namespace detail

enum class TagClass : std::uint8_t {
    Adverb = 0,
    Preposition,
    Noun,
    PresentParticiple,
    PresentVerb,
    Punctuation,
};

constexpr std::size_t kTagClassCount = 6;

/// Small set of TagClass values.
class TagClassSet {
public:
    TagClassSet() = default;
    void add(TagClass c) { bits_ |= mask(c); }
    bool has(TagClass c) const { return (bits_ & mask(c)) != 0; }
    bool empty() const { return bits_ == 0; }
    bool operator==(const TagClassSet&) const = default;

private:
    static std::uint8_t mask(TagClass c) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(c)); }
    std::uint8_t bits_ = 0;
};

struct TaggedToken {
    std::string surface;  // never empty, never contains whitespace
    std::string tag;      // raw tag as read
    bool is_word = true;  // false iff the tag resolves to PUNCTUATION
};

struct TaggedDocument {
    std::string doc_id;
    std::vector<std::vector<TaggedToken>> sentences;  // each non-empty
    std::string category;                             // empty when unknown

    std::size_t token_count() const {
        std::size_t n = 0;
        for (const auto& s : sentences) n += s.size();
        return n;
    }
    std::size_t word_count() const {
        std::size_t n = 0;
        for (const auto& s : sentences)
            for (const auto& t : s) n += t.is_word ? 1 : 0;
        return n;
    }
    std::size_t punctuation_count() const { return token_count() - word_count(); }
};

/// Assigns raw part-of-speech tags to feature classes and carries the
/// case-insensitive pronoun lexicons.
///
/// Resolution order: exact pattern, then longest matching prefix pattern,
/// then the built-in rule that a tag made up entirely of punctuation
/// characters is PUNCTUATION.  Anything else resolves to the empty set and
/// counts as a plain word.
class TagMap {
public:
    TagMap() {
        set_first_person({"i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves"});
        set_second_person({"you", "your", "yours", "yourself", "yourselves", "thou", "thee", "thy",
                           "thine", "ye"});
    }

    void add_exact(std::string tag, TagClassSet classes) {
        check_classes(tag, classes);
        if (!exact_.emplace(std::move(tag), classes).second)
            throw Error("duplicate exact tag pattern");
    }

    void add_prefix(std::string prefix, TagClassSet classes) {
        check_classes(prefix, classes);
        for (const auto& p : prefixes_)
            if (p.text == prefix) throw Error("duplicate prefix tag pattern '" + prefix + "*'");
        prefixes_.push_back({std::move(prefix), classes});
        // longest prefix first; equal lengths cannot both match one tag
        std::stable_sort(prefixes_.begin(), prefixes_.end(),
                         [](const Prefix& a, const Prefix& b) { return a.text.size() > b.text.size(); });
    }

    TagClassSet resolve(std::string_view tag) const {
        if (auto it = exact_.find(std::string(tag)); it != exact_.end()) return it->second;
        for (const auto& p : prefixes_)
            if (tag.size() >= p.text.size() && tag.substr(0, p.text.size()) == p.text) return p.classes;
        TagClassSet s;
        if (detail::all_punct(tag)) s.add(TagClass::Punctuation);
        return s;
    }

    /// True when some pattern (or the punctuation rule) covers the tag.
    /// Used by strict mode to flag tagset mismatches.
    bool is_mapped(std::string_view tag) const {
        if (exact_.count(std::string(tag))) return true;
        for (const auto& p : prefixes_)
            if (tag.size() >= p.text.size() && tag.substr(0, p.text.size()) == p.text) return true;
        return detail::all_punct(tag);
    }

    bool is_word_tag(std::string_view tag) const { return !resolve(tag).has(TagClass::Punctuation); }

    bool is_first_person(std::string_view surface) const {
        return first_person_.count(detail::to_lower(surface)) != 0;
    }
    bool is_second_person(std::string_view surface) const {
        return second_person_.count(detail::to_lower(surface)) != 0;
    }

    void set_first_person(std::vector<std::string> words) {
        first_person_.clear();
        for (auto& w : words) first_person_.insert(detail::to_lower(w));
    }
    void set_second_person(std::vector<std::string> words) {
        second_person_.clear();
        for (auto& w : words) second_person_.insert(detail::to_lower(w));
    }

    /// Parses the tag map file format: sections [tag_classes] and [lexicon],
    /// '#' comment lines, "PATTERN = CLASS[, CLASS...]" entries with a
    /// trailing '*' marking a prefix (a lone '*' is the exact tag "*").
    static TagMap parse(std::string_view text) {
        TagMap map;
        enum class Section { None, TagClasses, Lexicon } section = Section::None;
        auto lines = detail::split_lines(text);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            std::size_t lineno = i + 1;
            std::string_view line = detail::trim(lines[i]);
            if (line.empty() || line.front() == '#') continue;
            if (line == "[tag_classes]") {
                section = Section::TagClasses;
                continue;
            }
            if (line == "[lexicon]") {
                section = Section::Lexicon;
                continue;
            }
            if (line.front() == '[') throw ParseError("unknown section " + std::string(line), lineno);
            auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ParseError("expected 'KEY = VALUE' in tag map", lineno);
            std::string_view key = detail::trim(line.substr(0, eq));
            std::string_view value = detail::trim(line.substr(eq + 1));
            if (key.empty()) throw ParseError("empty pattern in tag map", lineno);
            switch (section) {
                case Section::None:
                    throw ParseError("entry before any [section] in tag map", lineno);
                case Section::TagClasses: {
                    TagClassSet classes;
                    if (!value.empty()) {
                        for (auto part : detail::split(value, ',')) {
                            part = detail::trim(part);
                            classes.add(parse_class(part, lineno));
                        }
                    }
                    try {
                        if (key.size() >= 2 && key.back() == '*')
                            map.add_prefix(std::string(key.substr(0, key.size() - 1)), classes);
                        else
                            map.add_exact(std::string(key), classes);
                    } catch (const Error& e) {
                        throw ParseError(e.what(), lineno);
                    }
                    break;
                }
                case Section::Lexicon: {
                    std::vector<std::string> words;
                    for (auto part : detail::split(value, ',')) {
                        part = detail::trim(part);
                        if (!part.empty()) words.emplace_back(part);
                    }
                    if (key == "FIRST_PERSON_PRONOUNS")
                        map.set_first_person(std::move(words));
                    else if (key == "SECOND_PERSON_PRONOUNS")
                        map.set_second_person(std::move(words));
                    else
                        throw ParseError("unknown lexicon list '" + std::string(key) + "'", lineno);
                    break;
                }
            }
        }
        return map;
    }

private:
    struct Prefix {
        std::string text;
        TagClassSet classes;
    };

    static void check_classes(const std::string& pattern, TagClassSet classes) {
        if (classes.has(TagClass::Punctuation)) {
            TagClassSet only_punct;
            only_punct.add(TagClass::Punctuation);
            if (!(classes == only_punct))
                throw Error("pattern '" + pattern + "': PUNCTUATION cannot combine with word classes");
        }
    }

    static TagClass parse_class(std::string_view name, std::size_t lineno) {
        if (name == "ADVERB") return TagClass::Adverb;
        if (name == "PREPOSITION") return TagClass::Preposition;
        if (name == "NOUN") return TagClass::Noun;
        if (name == "PRESENT_PARTICIPLE") return TagClass::PresentParticiple;
        if (name == "PRESENT_VERB") return TagClass::PresentVerb;
        if (name == "PUNCTUATION") return TagClass::Punctuation;
        throw ParseError("unknown tag class '" + std::string(name) + "'", lineno);
    }

    std::unordered_map<std::string, TagClassSet> exact_;
    std::vector<Prefix> prefixes_;  // sorted by length, longest first
    std::unordered_set<std::string> first_person_;
    std::unordered_set<std::string> second_person_;
};

/// Parses Brown-convention tagged text: one sentence per line, tokens as
/// "surface/TAG" separated by whitespace, the last '/' splitting surface
/// from tag.  Blank lines are ignored.
inline TaggedDocument parse_tagged_file(std::string_view text, const TagMap& tagmap,
                                        std::string doc_id = "", bool strict_tags = false) {
    TaggedDocument doc;
    doc.doc_id = std::move(doc_id);
    auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::size_t lineno = i + 1;
        std::string_view line = lines[i];
        std::vector<TaggedToken> sentence;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
            if (pos >= line.size()) break;
            std::size_t end = pos;
            while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
            std::string_view tok = line.substr(pos, end - pos);
            pos = end;
            auto slash = tok.rfind('/');
            if (slash == std::string_view::npos)
                throw ParseError("token '" + std::string(tok) + "' has no '/' separator", lineno);
            std::string_view surface = tok.substr(0, slash);
            std::string_view tag = tok.substr(slash + 1);
            if (surface.empty())
                throw ParseError("token '" + std::string(tok) + "' has an empty surface", lineno);
            if (tag.empty())
                throw ParseError("token '" + std::string(tok) + "' has an empty tag", lineno);
            if (strict_tags && !tagmap.is_mapped(tag))
                throw ParseError("tag '" + std::string(tag) + "' not covered by the tag map", lineno);
            TaggedToken t;
            t.surface = std::string(surface);
            t.tag = std::string(tag);
            t.is_word = tagmap.is_word_tag(tag);
            sentence.push_back(std::move(t));
        }
        if (!sentence.empty()) doc.sentences.push_back(std::move(sentence));
    }
    if (doc.sentences.empty()) throw EmptyDocumentError("document '" + doc.doc_id + "' is empty");
    if (doc.word_count() == 0)
        throw DegenerateDocumentError("document '" + doc.doc_id + "' has no word tokens");
    return doc;
}

/// Inverse of parse_tagged_file: one sentence per line, "surface/TAG" tokens.
inline std::string serialize_tagged(const TaggedDocument& doc) {
    std::string out;
    for (const auto& sentence : doc.sentences) {
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            if (i != 0) out += ' ';
            out += sentence[i].surface;
            out += '/';
            out += sentence[i].tag;
        }
        out += '\n';
    }
    return out;
}

struct ManifestEntry {
    std::string path;
    std::string doc_id;
    std::string category;
    std::size_t line = 0;  // 1-based manifest line, for diagnostics
};

struct Manifest {
    std::vector<ManifestEntry> entries;
};

/// Parses a manifest: tab-separated "path<TAB>doc_id<TAB>category" lines,
/// '#' comments.  doc_ids must be unique; categories are taken verbatim.
inline Manifest load_manifest(std::string_view text) {
    Manifest manifest;
    std::unordered_map<std::string, std::size_t> seen;  // doc_id -> line
    auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::size_t lineno = i + 1;
        std::string_view line = lines[i];
        if (detail::trim(line).empty() || detail::trim(line).front() == '#') continue;
        auto fields = detail::split(line, '\t');
        if (fields.size() != 3)
            throw ParseError("expected 3 tab-separated fields, got " + std::to_string(fields.size()),
                             lineno);
        ManifestEntry e;
        e.path = std::string(detail::trim(fields[0]));
        e.doc_id = std::string(detail::trim(fields[1]));
        e.category = std::string(detail::trim(fields[2]));
        e.line = lineno;
        if (e.path.empty() || e.doc_id.empty() || e.category.empty())
            throw ParseError("manifest fields must be non-empty", lineno);
        if (auto it = seen.find(e.doc_id); it != seen.end())
            throw ParseError("duplicate doc_id '" + e.doc_id + "', first seen on line " +
                                 std::to_string(it->second),
                             lineno);
        seen.emplace(e.doc_id, lineno);
        manifest.entries.push_back(std::move(e));
    }
    return manifest;
}

/// Manifest parse with category codes validated against a taxonomy.
inline Manifest load_manifest(std::string_view text, const CategoryTaxonomy& taxonomy) {
    Manifest manifest = load_manifest(text);
    for (const auto& e : manifest.entries)
        if (!taxonomy.has(e.category))
            throw TaxonomyError("unknown category code '" + e.category + "' on manifest line " +
                                std::to_string(e.line));
    return manifest;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed on '" + path + "'");
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed on '" + path + "'");
}

}  // namespace genre

// genre/taxonomy.hpp -- category hierarchies and merge maps
#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "genre/errors.hpp"

namespace genre {

struct CategoryNode {
    std::string code;    // "A", "3", "II", ...
    std::string name;    // "Press: reportage", "Fiction", "Imaginative", ...
    int level = 1;       // 1 = coarsest
    std::string parent;  // empty at level 1
};

/// A fixed multi-level category hierarchy.  Every node has exactly one parent
/// on the next coarser level.  Node order within a level is the canonical
/// reporting order.
class CategoryTaxonomy {
public:
    CategoryTaxonomy() = default;

    explicit CategoryTaxonomy(std::vector<CategoryNode> nodes) : nodes_(std::move(nodes)) {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (!index_.emplace(nodes_[i].code, i).second)
                throw TaxonomyError("duplicate category code '" + nodes_[i].code + "'");
        }
        for (const auto& n : nodes_) {
            if (n.level > 1 && !index_.count(n.parent))
                throw TaxonomyError("category '" + n.code + "' has unknown parent '" + n.parent + "'");
        }
    }

    /// The Brown corpus hierarchy: Informative/Imaginative over
    /// Press/Non-fiction/Fiction/Misc. over the 15 letter codes.
    static CategoryTaxonomy brown() {
        std::vector<CategoryNode> n;
        n.push_back({"I", "Informative", 1, ""});
        n.push_back({"II", "Imaginative", 1, ""});
        n.push_back({"1", "Press", 2, "I"});
        n.push_back({"2", "Non-fiction", 2, "I"});
        n.push_back({"3", "Fiction", 2, "II"});
        n.push_back({"4", "Misc.", 2, "I"});
        n.push_back({"A", "Press: reportage", 3, "1"});
        n.push_back({"B", "Press: editorial", 3, "1"});
        n.push_back({"C", "Press: reviews", 3, "1"});
        n.push_back({"D", "Religion", 3, "4"});
        n.push_back({"E", "Skills and Hobbies", 3, "4"});
        n.push_back({"F", "Popular Lore", 3, "4"});
        n.push_back({"G", "Belles Lettres, Biographies etc.", 3, "4"});
        n.push_back({"H", "Government documents & misc.", 3, "2"});
        n.push_back({"J", "Learned", 3, "2"});
        n.push_back({"K", "General Fiction", 3, "3"});
        n.push_back({"L", "Mystery", 3, "3"});
        n.push_back({"M", "Science Fiction", 3, "3"});
        n.push_back({"N", "Adventure and Western", 3, "3"});
        n.push_back({"P", "Romance", 3, "3"});
        n.push_back({"R", "Humor", 3, "3"});
        return CategoryTaxonomy(std::move(n));
    }

    /// A single-level taxonomy over an ad-hoc label set, in the given order.
    static CategoryTaxonomy flat(const std::vector<std::string>& codes) {
        std::vector<CategoryNode> n;
        n.reserve(codes.size());
        for (const auto& c : codes) n.push_back({c, "", 1, ""});
        return CategoryTaxonomy(std::move(n));
    }

    bool has(const std::string& code) const { return index_.count(code) != 0; }

    const CategoryNode& node(const std::string& code) const {
        auto it = index_.find(code);
        if (it == index_.end()) throw TaxonomyError("unknown category code '" + code + "'");
        return nodes_[it->second];
    }

    int level_of(const std::string& code) const { return node(code).level; }

    /// "A. Press: reportage"; unknown codes render as the bare code.
    std::string display_name(const std::string& code) const {
        auto it = index_.find(code);
        if (it == index_.end()) return code;
        const auto& n = nodes_[it->second];
        return n.name.empty() ? n.code : n.code + ". " + n.name;
    }

    /// Ancestor of `code` at `level`.  `level` must not be finer than the
    /// code's own level.
    std::string ancestor(const std::string& code, int level) const {
        const CategoryNode* n = &node(code);
        if (level > n->level)
            throw TaxonomyError("category '" + code + "' is at level " + std::to_string(n->level) +
                                "; cannot refine to level " + std::to_string(level));
        while (n->level > level) n = &node(n->parent);
        return n->code;
    }

    std::vector<std::string> codes_at(int level) const {
        std::vector<std::string> out;
        for (const auto& n : nodes_)
            if (n.level == level) out.push_back(n.code);
        return out;
    }

    int max_level() const {
        int m = 0;
        for (const auto& n : nodes_) m = std::max(m, n.level);
        return m;
    }

    /// Canonical ordering over labels: known codes in node order, unknown
    /// codes after them in lexicographic order.
    bool label_less(const std::string& a, const std::string& b) const {
        auto ia = index_.find(a);
        auto ib = index_.find(b);
        if (ia != index_.end() && ib != index_.end()) return ia->second < ib->second;
        if (ia != index_.end()) return true;
        if (ib != index_.end()) return false;
        return a < b;
    }

    /// Merge map sending every code at the finest level to its ancestor at
    /// `level`; codes already at or above `level` map to themselves.
    std::map<std::string, std::string> level_map(int level) const {
        std::map<std::string, std::string> m;
        for (const auto& n : nodes_)
            if (n.level >= level) m[n.code] = ancestor(n.code, level);
        return m;
    }

    /// Merge map collapsing every descendant of `parent_code` into it; all
    /// other codes map to themselves.  Collapsing "3" on the Brown taxonomy
    /// merges the six fiction genres.
    std::map<std::string, std::string> collapse_into_parent_map(const std::string& parent_code) const {
        const CategoryNode& target = node(parent_code);
        std::map<std::string, std::string> m;
        for (const auto& n : nodes_) {
            if (n.level <= target.level) {
                m[n.code] = n.code;
                continue;
            }
            m[n.code] = ancestor(n.code, target.level) == target.code ? target.code : n.code;
        }
        return m;
    }

    const std::vector<CategoryNode>& nodes() const { return nodes_; }

private:
    std::vector<CategoryNode> nodes_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace genre

// genre/evaluation.hpp -- confusion matrices, category collapsing, error reports
#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "genre/corpus.hpp"
#include "genre/discriminant.hpp"
#include "genre/errors.hpp"
#include "genre/taxonomy.hpp"

namespace genre {

/// Integer round-half-up of 100 * errors / items; 0 when items is 0.
inline long long error_percent(long long errors, long long items) {
    if (items <= 0) return 0;
    return (200 * errors + items) / (2 * items);
}

/// Square count matrix over category codes, rows = true class, columns =
/// predicted class.
class ConfusionMatrix {
public:
    ConfusionMatrix() = default;

    explicit ConfusionMatrix(std::vector<std::string> labels)
        : labels_(std::move(labels)), counts_(labels_.size() * labels_.size(), 0) {}

    ConfusionMatrix(std::vector<std::string> labels, std::vector<long long> counts)
        : labels_(std::move(labels)), counts_(std::move(counts)) {
        if (counts_.size() != labels_.size() * labels_.size())
            throw DimensionError("confusion counts must be a square over the labels");
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }

    long long count(std::size_t t, std::size_t p) const { return counts_[t * size() + p]; }
    void add(std::size_t t, std::size_t p, long long n = 1) { counts_[t * size() + p] += n; }

    std::size_t index_of(const std::string& label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end())
            throw TaxonomyError("category '" + label + "' is not among the matrix labels");
        return static_cast<std::size_t>(it - labels_.begin());
    }

    long long items(std::size_t t) const {
        long long s = 0;
        for (std::size_t p = 0; p < size(); ++p) s += count(t, p);
        return s;
    }
    long long errors(std::size_t t) const { return items(t) - count(t, t); }

    long long total_items() const {
        long long s = 0;
        for (std::size_t t = 0; t < size(); ++t) s += items(t);
        return s;
    }
    long long total_errors() const {
        long long s = 0;
        for (std::size_t t = 0; t < size(); ++t) s += errors(t);
        return s;
    }

    /// Predicted categories a true class was confused with, in descending
    /// cell-count order; equal counts keep column order.  Zero cells and the
    /// diagonal are excluded.
    std::vector<std::string> miss_list(std::size_t t) const {
        std::vector<std::pair<long long, std::size_t>> cells;
        for (std::size_t p = 0; p < size(); ++p)
            if (p != t && count(t, p) > 0) cells.emplace_back(count(t, p), p);
        std::stable_sort(cells.begin(), cells.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<std::string> out;
        for (const auto& [n, p] : cells) out.push_back(labels_[p]);
        return out;
    }

private:
    std::vector<std::string> labels_;
    std::vector<long long> counts_;
};

/// Classifies every row and tallies true vs predicted category.  The matrix
/// covers every model class even when the data omits some of them.
inline ConfusionMatrix evaluate(const DiscriminantModel& model, const LabeledDataset& data) {
    ConfusionMatrix conf(model.class_labels);
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto it = std::find(model.class_labels.begin(), model.class_labels.end(), data.labels[i]);
        if (it == model.class_labels.end())
            throw TaxonomyError("row " + std::to_string(i) + " has category '" + data.labels[i] +
                                "', which the model does not know");
        std::size_t t = static_cast<std::size_t>(it - model.class_labels.begin());
        Classification c = classify(model, data.rows.row(i));
        conf.add(t, c.index);
    }
    return conf;
}

/// Sums rows and columns under a merge map.  Merged labels appear in
/// first-appearance order of their sources.
inline ConfusionMatrix collapse(const ConfusionMatrix& conf,
                                const std::map<std::string, std::string>& merge) {
    std::vector<std::string> labels;
    std::vector<std::size_t> target(conf.size());
    for (std::size_t i = 0; i < conf.size(); ++i) {
        auto it = merge.find(conf.labels()[i]);
        if (it == merge.end())
            throw TaxonomyError("merge map has no entry for category '" + conf.labels()[i] + "'");
        auto pos = std::find(labels.begin(), labels.end(), it->second);
        if (pos == labels.end()) {
            target[i] = labels.size();
            labels.push_back(it->second);
        } else {
            target[i] = static_cast<std::size_t>(pos - labels.begin());
        }
    }
    ConfusionMatrix out(labels);
    for (std::size_t t = 0; t < conf.size(); ++t)
        for (std::size_t p = 0; p < conf.size(); ++p)
            if (conf.count(t, p) != 0) out.add(target[t], target[p], conf.count(t, p));
    return out;
}

inline ConfusionMatrix collapse(const ConfusionMatrix& conf, int level,
                                const CategoryTaxonomy& taxonomy) {
    return collapse(conf, taxonomy.level_map(level));
}

/// Relabels every row under a merge map; features are untouched.
inline LabeledDataset collapse(const LabeledDataset& data,
                               const std::map<std::string, std::string>& merge) {
    LabeledDataset out;
    out.rows = data.rows;
    out.taxonomy = data.taxonomy;
    out.labels.reserve(data.labels.size());
    for (const auto& label : data.labels) {
        auto it = merge.find(label);
        if (it == merge.end())
            throw TaxonomyError("merge map has no entry for category '" + label + "'");
        out.labels.push_back(it->second);
    }
    return out;
}

inline LabeledDataset collapse(const LabeledDataset& data, int level) {
    return collapse(data, data.taxonomy.level_map(level));
}

enum class ReportFormat { Table, Tsv };

struct ReportOptions {
    ReportFormat format = ReportFormat::Table;
    const CategoryTaxonomy* taxonomy = nullptr;  // table mode prints display names when given
    std::string total_label = "Total";
};

namespace detail {

inline std::string join_comma(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& s : parts) {
        if (!out.empty()) out += ",";
        out += s;
    }
    return out;
}

}  // namespace detail

/// Per-category error table.  Table mode prints aligned columns with a
/// trailing Miss column; tsv mode prints machine-readable rows ending in a
/// total row under `total_label`.
inline std::string report(const ConfusionMatrix& conf, const ReportOptions& options = {}) {
    const std::size_t n = conf.size();
    std::vector<long long> items(n), errors(n), pct(n);
    std::vector<std::string> miss(n);
    for (std::size_t t = 0; t < n; ++t) {
        items[t] = conf.items(t);
        errors[t] = conf.errors(t);
        pct[t] = error_percent(errors[t], items[t]);
        miss[t] = detail::join_comma(conf.miss_list(t));
    }
    const long long tot_items = conf.total_items();
    const long long tot_errors = conf.total_errors();
    const long long tot_pct = error_percent(tot_errors, tot_items);

    std::ostringstream out;
    if (options.format == ReportFormat::Tsv) {
        out << "category\titems\terrors\terror_pct\tmiss\n";
        for (std::size_t t = 0; t < n; ++t)
            out << conf.labels()[t] << '\t' << items[t] << '\t' << errors[t] << '\t' << pct[t]
                << '\t' << miss[t] << '\n';
        out << options.total_label << '\t' << tot_items << '\t' << tot_errors << '\t' << tot_pct
            << "\t\n";
        return out.str();
    }

    std::vector<std::string> names(n);
    for (std::size_t t = 0; t < n; ++t)
        names[t] = options.taxonomy ? options.taxonomy->display_name(conf.labels()[t])
                                    : conf.labels()[t];

    auto digits = [](long long v) { return std::to_string(v).size(); };
    std::size_t name_w = std::max(std::string_view("Category").size(), options.total_label.size());
    for (const auto& s : names) name_w = std::max(name_w, s.size());
    std::size_t items_w = std::max(std::string_view("Items").size(), digits(tot_items));
    for (long long v : items) items_w = std::max(items_w, digits(v));
    std::size_t count_w = digits(tot_errors);
    for (long long v : errors) count_w = std::max(count_w, digits(v));
    std::size_t pct_w = digits(tot_pct);
    for (long long v : pct) pct_w = std::max(pct_w, digits(v));
    std::size_t errors_w = std::max(std::string_view("Errors").size(), count_w + pct_w + 5);

    auto pad_left = [](const std::string& s, std::size_t w) {
        return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
    };
    auto pad_right = [](const std::string& s, std::size_t w) {
        return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
    };
    auto error_cell = [&](long long e, long long p) {
        return pad_left(std::to_string(e), count_w) + " (" + pad_left(std::to_string(p), pct_w) +
               " %)";
    };
    auto emit = [&](const std::string& name, const std::string& item_s, const std::string& err_s,
                    const std::string& miss_s) {
        std::string line = pad_right(name, name_w) + "  " + pad_left(item_s, items_w) + "  " +
                           pad_right(err_s, errors_w) + "  " + miss_s;
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    };

    emit("Category", "Items", "Errors", "Miss");
    for (std::size_t t = 0; t < n; ++t)
        emit(names[t], std::to_string(items[t]), error_cell(errors[t], pct[t]), miss[t]);
    emit(options.total_label, std::to_string(tot_items), error_cell(tot_errors, tot_pct), "");
    return out.str();
}

struct ReportRow {
    std::string category;
    long long items = 0;
    long long errors = 0;
    long long error_pct = 0;
    std::vector<std::string> miss;
};

/// Parses the tsv report format back into rows; the total row comes last.
inline std::vector<ReportRow> parse_report_tsv(std::string_view text) {
    auto lines = detail::split_lines(text);
    if (lines.empty() || lines[0] != "category\titems\terrors\terror_pct\tmiss")
        throw ParseError("not a confusion report: bad or missing header", 1);
    std::vector<ReportRow> rows;
    auto to_count = [](std::string_view field, std::size_t lineno) {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size())
            throw ParseError("expected an integer, got '" + std::string(field) + "'", lineno);
        return v;
    };
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto fields = detail::split(lines[i], '\t');
        if (fields.size() != 5)
            throw ParseError("expected 5 tab-separated fields, got " +
                                 std::to_string(fields.size()),
                             i + 1);
        ReportRow row;
        row.category = std::string(fields[0]);
        row.items = to_count(fields[1], i + 1);
        row.errors = to_count(fields[2], i + 1);
        row.error_pct = to_count(fields[3], i + 1);
        if (!fields[4].empty())
            for (auto part : detail::split(fields[4], ',')) row.miss.emplace_back(part);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace genre

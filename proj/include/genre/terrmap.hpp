// genre/terrmap.hpp -- ASCII territorial maps of the first two discriminant functions
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "genre/discriminant.hpp"
#include "genre/errors.hpp"
#include "genre/linalg.hpp"

namespace genre {

struct MapBounds {
    double f1_min = 0.0;
    double f1_max = 0.0;
    double f2_min = 0.0;
    double f2_max = 0.0;
};

struct MapCell {
    std::size_t class_index = 0;
    bool boundary = false;
    bool centroid = false;
};

/// Character grid over discriminant-score space.  Row 0 is the top of the
/// map balancing function 2 decreasing downward; columns follow function 1
/// left to right.
struct TerritorialMap {
    std::size_t width = 0;
    std::size_t height = 0;
    MapBounds bounds;
    std::vector<MapCell> cells;  // row-major, height x width
    std::vector<std::string> class_labels;
    std::vector<char> symbols;  // one display character per class

    const MapCell& at(std::size_t row, std::size_t col) const { return cells[row * width + col]; }
    MapCell& at(std::size_t row, std::size_t col) { return cells[row * width + col]; }
};

/// Display character for a category code: Roman level-1 codes map to their
/// digits, everything else shows its first character.
inline char class_symbol(const std::string& code) {
    if (code == "I") return '1';
    if (code == "II") return '2';
    return code.empty() ? '?' : code[0];
}

/// Nearest-centroid decision restricted to the first two discriminant
/// functions (or one, when the model has only one), log priors included.
/// Ties go to the earliest class.
inline std::size_t classify_2d(const DiscriminantModel& model, double f1, double f2) {
    const std::size_t k = std::min<std::size_t>(2, model.n_functions);
    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t c = 0; c < model.n_classes; ++c) {
        double d1 = f1 - model.centroids(c, 0);
        double d2 = k > 1 ? f2 - model.centroids(c, 1) : 0.0;
        double score = -0.5 * (d1 * d1 + d2 * d2) + std::log(model.priors[c]);
        if (c == 0 || score > best_score) {
            best = c;
            best_score = score;
        }
    }
    return best;
}

namespace detail {

/// Expands [lo, hi] by a quarter of its extent per side; unit padding when
/// the extent is zero.
inline void expand_range(double& lo, double& hi) {
    double extent = hi - lo;
    if (extent > 0.0) {
        lo -= 0.25 * extent;
        hi += 0.25 * extent;
    } else {
        lo -= 1.0;
        hi += 1.0;
    }
}

/// Smallest step from the 1-2-5 ladder spanning at least `min_cells` grid
/// cells, so neighboring tick labels stay apart.
inline long long tick_step(double units_per_cell, double min_cells) {
    double target = units_per_cell * min_cells;
    long long pow10 = 1;
    while (pow10 < 1000000000000000LL) {
        for (long long mult : {1LL, 2LL, 5LL}) {
            long long step = mult * pow10;
            if (static_cast<double>(step) >= target) return step;
        }
        pow10 *= 10;
    }
    return pow10;
}

/// Integer score values ticked along [lo, hi] and the grid index of each.
inline std::vector<std::pair<long long, std::size_t>> axis_ticks(double lo, double hi,
                                                                 std::size_t cells,
                                                                 double min_cells) {
    std::vector<std::pair<long long, std::size_t>> ticks;
    if (cells == 0 || !(hi > lo)) return ticks;
    double per_cell = (hi - lo) / static_cast<double>(cells);
    long long step = tick_step(per_cell, min_cells);
    long long k_lo = static_cast<long long>(std::ceil(lo / static_cast<double>(step)));
    long long k_hi = static_cast<long long>(std::floor(hi / static_cast<double>(step)));
    for (long long k = k_lo; k <= k_hi; ++k) {
        double v = static_cast<double>(k * step);
        auto cell = static_cast<std::size_t>(
            std::clamp(std::floor((v - lo) / per_cell), 0.0, static_cast<double>(cells - 1)));
        ticks.emplace_back(k * step, cell);
    }
    return ticks;
}

inline void trim_trailing(std::string& line) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
}

}  // namespace detail

/// Classifies the center of every grid cell over the first two discriminant
/// functions.  Boundary cells have a 4-neighbor of a different class; each
/// in-bounds class centroid marks its cell.  Default bounds are the centroid
/// bounding box expanded a quarter per side.
inline TerritorialMap render_map(const DiscriminantModel& model, std::size_t width,
                                 std::size_t height, std::optional<MapBounds> bounds = {}) {
    if (model.n_functions < 2)
        throw DimensionError(
            "territorial maps need at least two discriminant functions; "
            "use render_strip for a one-function model");
    if (width < 10 || height < 5)
        throw InputError("map grid must be at least 10 wide and 5 tall");

    TerritorialMap map;
    map.width = width;
    map.height = height;
    map.class_labels = model.class_labels;
    for (const auto& label : model.class_labels) map.symbols.push_back(class_symbol(label));

    if (bounds) {
        map.bounds = *bounds;
        if (!(map.bounds.f1_max > map.bounds.f1_min) || !(map.bounds.f2_max > map.bounds.f2_min))
            throw InputError("map bounds must have positive extent on both axes");
    } else {
        double x_lo = model.centroids(0, 0), x_hi = x_lo;
        double y_lo = model.centroids(0, 1), y_hi = y_lo;
        for (std::size_t c = 1; c < model.n_classes; ++c) {
            x_lo = std::min(x_lo, model.centroids(c, 0));
            x_hi = std::max(x_hi, model.centroids(c, 0));
            y_lo = std::min(y_lo, model.centroids(c, 1));
            y_hi = std::max(y_hi, model.centroids(c, 1));
        }
        detail::expand_range(x_lo, x_hi);
        detail::expand_range(y_lo, y_hi);
        map.bounds = {x_lo, x_hi, y_lo, y_hi};
    }

    const double dx = (map.bounds.f1_max - map.bounds.f1_min) / static_cast<double>(width);
    const double dy = (map.bounds.f2_max - map.bounds.f2_min) / static_cast<double>(height);
    map.cells.assign(width * height, MapCell{});
    for (std::size_t r = 0; r < height; ++r)
        for (std::size_t c = 0; c < width; ++c) {
            double x = map.bounds.f1_min + (static_cast<double>(c) + 0.5) * dx;
            double y = map.bounds.f2_max - (static_cast<double>(r) + 0.5) * dy;
            map.at(r, c).class_index = classify_2d(model, x, y);
        }
    for (std::size_t r = 0; r < height; ++r)
        for (std::size_t c = 0; c < width; ++c) {
            std::size_t k = map.at(r, c).class_index;
            bool edge = (r > 0 && map.at(r - 1, c).class_index != k) ||
                        (r + 1 < height && map.at(r + 1, c).class_index != k) ||
                        (c > 0 && map.at(r, c - 1).class_index != k) ||
                        (c + 1 < width && map.at(r, c + 1).class_index != k);
            map.at(r, c).boundary = edge;
        }
    for (std::size_t k = 0; k < model.n_classes; ++k) {
        double cx = model.centroids(k, 0);
        double cy = model.centroids(k, 1);
        if (cx < map.bounds.f1_min || cx > map.bounds.f1_max || cy < map.bounds.f2_min ||
            cy > map.bounds.f2_max)
            continue;
        auto col = static_cast<std::size_t>(
            std::clamp(std::floor((cx - map.bounds.f1_min) / dx), 0.0,
                       static_cast<double>(width - 1)));
        auto row = static_cast<std::size_t>(
            std::clamp(std::floor((map.bounds.f2_max - cy) / dy), 0.0,
                       static_cast<double>(height - 1)));
        map.at(row, col).centroid = true;
    }
    return map;
}

/// Frame of '+', '-' and '|' with ticks at integer score values.  Centroid
/// cells print '*', boundary cells their class symbol, interior cells a
/// space.
inline std::string to_text(const TerritorialMap& map) {
    auto x_ticks = detail::axis_ticks(map.bounds.f1_min, map.bounds.f1_max, map.width, 6.0);
    auto y_ticks = detail::axis_ticks(map.bounds.f2_min, map.bounds.f2_max, map.height, 3.0);

    std::size_t gutter = 0;
    for (const auto& [v, row] : y_ticks) gutter = std::max(gutter, std::to_string(v).size());
    const std::size_t prefix = y_ticks.empty() ? 0 : gutter + 1;

    std::vector<char> y_border(map.height, '|');
    std::vector<std::string> y_label(map.height);
    for (const auto& [v, raw_row] : y_ticks) {
        // axis_ticks walks value ascending; invert to the top-down grid row
        std::size_t row = map.height - 1 - raw_row;
        y_border[row] = '+';
        y_label[row] = std::to_string(v);
    }
    std::vector<char> x_border(map.width, '-');
    for (const auto& [v, col] : x_ticks) x_border[col] = '+';

    std::ostringstream out;
    std::string frame(prefix, ' ');
    frame += '+';
    for (std::size_t c = 0; c < map.width; ++c) frame += x_border[c];
    frame += '+';
    out << frame << '\n';

    for (std::size_t r = 0; r < map.height; ++r) {
        std::string line;
        if (prefix > 0) {
            line.append(gutter - y_label[r].size(), ' ');
            line += y_label[r];
            line += ' ';
        }
        line += y_border[r];
        for (std::size_t c = 0; c < map.width; ++c) {
            const MapCell& cell = map.at(r, c);
            if (cell.centroid)
                line += '*';
            else if (cell.boundary)
                line += map.symbols[cell.class_index];
            else
                line += ' ';
        }
        line += y_border[r];
        detail::trim_trailing(line);
        out << line << '\n';
    }
    out << frame << '\n';

    if (!x_ticks.empty()) {
        std::string labels(prefix + 2 + map.width, ' ');
        std::size_t used_end = 0;
        for (const auto& [v, col] : x_ticks) {
            std::string s = std::to_string(v);
            std::size_t center = prefix + 1 + col;
            std::size_t start = center >= s.size() / 2 ? center - s.size() / 2 : 0;
            if (start + s.size() > labels.size()) {
                if (s.size() > labels.size()) continue;
                start = labels.size() - s.size();
            }
            if (used_end > 0 && start < used_end + 1) continue;
            labels.replace(start, s.size(), s);
            used_end = start + s.size();
        }
        detail::trim_trailing(labels);
        out << labels << '\n';
    }
    return out.str();
}

inline constexpr std::size_t kStripMargin = 11;

/// One-dimensional companion to render_map: a histogram of function-1
/// scores over `width` bins when data is given, each stack drawn with the
/// bin's majority class symbol, above an integer-ticked axis and strips
/// marking class centroids.
inline std::string render_strip(const DiscriminantModel& model, std::size_t width,
                                const LabeledDataset* histogram_data = nullptr) {
    if (width < 10) throw InputError("strip must be at least 10 columns wide");

    std::vector<double> scores;
    std::vector<std::size_t> score_class;
    if (histogram_data) {
        for (std::size_t i = 0; i < histogram_data->size(); ++i) {
            const auto& label = histogram_data->labels[i];
            auto it = std::find(model.class_labels.begin(), model.class_labels.end(), label);
            if (it == model.class_labels.end())
                throw TaxonomyError("row " + std::to_string(i) + " has category '" + label +
                                    "', which the model does not know");
            scores.push_back(project(model, histogram_data->rows.row(i), 1)[0]);
            score_class.push_back(static_cast<std::size_t>(it - model.class_labels.begin()));
        }
    }

    double lo = model.centroids(0, 0), hi = lo;
    for (std::size_t c = 1; c < model.n_classes; ++c) {
        lo = std::min(lo, model.centroids(c, 0));
        hi = std::max(hi, model.centroids(c, 0));
    }
    for (double s : scores) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    if (!(hi > lo)) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double per_cell = (hi - lo) / static_cast<double>(width);
    auto bin_of = [&](double v) {
        return static_cast<std::size_t>(
            std::clamp(std::floor((v - lo) / per_cell), 0.0, static_cast<double>(width - 1)));
    };

    std::ostringstream out;
    const std::string blank(kStripMargin, ' ');
    auto emit = [&](std::string line) {
        detail::trim_trailing(line);
        out << line << '\n';
    };

    if (!scores.empty()) {
        std::vector<std::vector<long long>> per_class(width,
                                                      std::vector<long long>(model.n_classes, 0));
        std::vector<long long> totals(width, 0);
        for (std::size_t i = 0; i < scores.size(); ++i) {
            std::size_t b = bin_of(scores[i]);
            ++per_class[b][score_class[i]];
            ++totals[b];
        }
        long long max_count = *std::max_element(totals.begin(), totals.end());
        const long long rows = std::min<long long>(10, max_count);
        std::vector<long long> stack(width, 0);
        std::vector<char> symbol(width, ' ');
        for (std::size_t b = 0; b < width; ++b) {
            if (totals[b] == 0) continue;
            stack[b] = (totals[b] * rows + max_count - 1) / max_count;
            std::size_t major = 0;
            for (std::size_t c = 1; c < model.n_classes; ++c)
                if (per_class[b][c] > per_class[b][major]) major = c;
            symbol[b] = class_symbol(model.class_labels[major]);
        }
        for (long long r = rows; r >= 1; --r) {
            std::string line = blank;
            for (std::size_t b = 0; b < width; ++b) line += stack[b] >= r ? symbol[b] : ' ';
            emit(std::move(line));
        }
    }

    auto ticks = detail::axis_ticks(lo, hi, width, 6.0);
    std::string axis = blank;
    {
        std::vector<char> marks(width, '-');
        for (const auto& [v, col] : ticks) marks[col] = '+';
        for (std::size_t b = 0; b < width; ++b) axis += marks[b];
    }
    emit(std::move(axis));
    if (!ticks.empty()) {
        std::string labels(kStripMargin + width, ' ');
        std::size_t used_end = 0;
        for (const auto& [v, col] : ticks) {
            std::string s = std::to_string(v);
            std::size_t center = kStripMargin + col;
            std::size_t start = center >= s.size() / 2 ? center - s.size() / 2 : 0;
            if (start + s.size() > labels.size()) {
                if (s.size() > labels.size()) continue;
                start = labels.size() - s.size();
            }
            if (used_end > 0 && start < used_end + 1) continue;
            labels.replace(start, s.size(), s);
            used_end = start + s.size();
        }
        emit(std::move(labels));
    }

    std::string centroid_line = "Centroids: ";
    std::string class_line = "Classes:   ";
    centroid_line.append(width, ' ');
    class_line.append(width, ' ');
    for (std::size_t c = 0; c < model.n_classes; ++c) {
        std::size_t b = bin_of(model.centroids(c, 0));
        centroid_line[kStripMargin + b] = '*';
        if (class_line[kStripMargin + b] == ' ')
            class_line[kStripMargin + b] = class_symbol(model.class_labels[c]);
    }
    emit(std::move(centroid_line));
    emit(std::move(class_line));
    return out.str();
}

}  // namespace genre

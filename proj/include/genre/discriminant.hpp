// genre/discriminant.hpp -- multiclass linear discriminant fitting and classification
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "genre/errors.hpp"
#include "genre/linalg.hpp"
#include "genre/taxonomy.hpp"

namespace genre {

/// Feature matrix with one category label per row.
struct LabeledDataset {
    Matrix rows;                      // n x p
    std::vector<std::string> labels;  // n codes
    CategoryTaxonomy taxonomy;

    std::size_t size() const { return rows.rows(); }
    std::size_t n_features() const { return rows.cols(); }
};

struct ScatterResult {
    Matrix within;                          // p x p, sum over classes of member deviations
    Matrix between;                         // p x p, size-weighted class-mean deviations
    Matrix class_means;                     // N x p
    std::vector<double> grand_mean;         // p
    std::vector<std::string> class_labels;  // N, in taxonomy order
    std::vector<std::size_t> class_counts;  // N
};

/// Raw within- and between-class scatter sums about class means and the
/// grand mean.  Every class must have at least two members.
inline ScatterResult scatter_matrices(const LabeledDataset& data) {
    const std::size_t n = data.rows.rows();
    const std::size_t p = data.rows.cols();
    if (n < 2) throw DatasetError("dataset needs at least 2 rows");
    if (data.labels.size() != n) throw DimensionError("label count does not match row count");

    ScatterResult r;
    for (const auto& label : data.labels)
        if (std::find(r.class_labels.begin(), r.class_labels.end(), label) == r.class_labels.end())
            r.class_labels.push_back(label);
    std::sort(r.class_labels.begin(), r.class_labels.end(),
              [&](const std::string& a, const std::string& b) { return data.taxonomy.label_less(a, b); });
    const std::size_t n_classes = r.class_labels.size();

    std::vector<std::size_t> row_class(n);
    r.class_counts.assign(n_classes, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = std::find(r.class_labels.begin(), r.class_labels.end(), data.labels[i]);
        row_class[i] = static_cast<std::size_t>(it - r.class_labels.begin());
        ++r.class_counts[row_class[i]];
    }
    for (std::size_t k = 0; k < n_classes; ++k)
        if (r.class_counts[k] < 2)
            throw DatasetError("class '" + r.class_labels[k] + "' has " +
                               std::to_string(r.class_counts[k]) +
                               " rows; within-class scatter needs at least 2");

    r.class_means = Matrix(n_classes, p);
    r.grand_mean.assign(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            r.class_means(row_class[i], j) += data.rows(i, j);
            r.grand_mean[j] += data.rows(i, j);
        }
    for (std::size_t k = 0; k < n_classes; ++k)
        for (std::size_t j = 0; j < p; ++j)
            r.class_means(k, j) /= static_cast<double>(r.class_counts[k]);
    for (std::size_t j = 0; j < p; ++j) r.grand_mean[j] /= static_cast<double>(n);

    r.within = Matrix(p, p);
    std::vector<double> dev(p);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = row_class[i];
        for (std::size_t j = 0; j < p; ++j) dev[j] = data.rows(i, j) - r.class_means(k, j);
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = a; b < p; ++b) r.within(a, b) += dev[a] * dev[b];
    }
    r.between = Matrix(p, p);
    for (std::size_t k = 0; k < n_classes; ++k) {
        for (std::size_t j = 0; j < p; ++j) dev[j] = r.class_means(k, j) - r.grand_mean[j];
        const double w = static_cast<double>(r.class_counts[k]);
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = a; b < p; ++b) r.between(a, b) += w * dev[a] * dev[b];
    }
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < a; ++b) {
            r.within(a, b) = r.within(b, a);
            r.between(a, b) = r.between(b, a);
        }
    return r;
}

struct GeneralizedEigenResult {
    std::vector<double> values;  // m, nonincreasing
    Matrix directions;           // p x m, within-orthonormal columns
};

/// Solves between . v = lambda . within . v for the top m pairs by reducing
/// with the Cholesky factor of `within` to a standard symmetric problem and
/// running cyclic Jacobi on it.  Directions come back within-orthonormal,
/// sign-fixed so each column's largest-magnitude entry is positive.
inline GeneralizedEigenResult generalized_eigen(const Matrix& between, const Matrix& within,
                                                std::size_t m) {
    const std::size_t p = within.rows();
    if (between.rows() != p || between.cols() != p || within.cols() != p)
        throw DimensionError("scatter matrices must be square and of equal size");
    if (m > p) throw DimensionError("cannot extract more directions than features");
    if (!is_symmetric(between) || !is_symmetric(within))
        throw InputError("scatter matrices must be symmetric");

    Matrix l = cholesky_lower(within);
    // C = L^-1 B L^-T, solved as two triangular systems; B symmetric.
    Matrix y = forward_solve(l, between);
    Matrix c = forward_solve(l, y.transposed());
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            double s = 0.5 * (c(i, j) + c(j, i));
            c(i, j) = s;
            c(j, i) = s;
        }

    SymmetricEigen eig = jacobi_eigen(std::move(c));

    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return eig.values[a] > eig.values[b]; });

    Matrix u(p, m);
    GeneralizedEigenResult out;
    out.values.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        out.values[j] = eig.values[order[j]];
        for (std::size_t i = 0; i < p; ++i) u(i, j) = eig.vectors(i, order[j]);
    }
    out.directions = backward_solve_transposed(l, u);

    for (std::size_t j = 0; j < m; ++j) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < p; ++i) {
            double a = std::abs(out.directions(i, j));
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        if (out.directions(arg, j) < 0.0)
            for (std::size_t i = 0; i < p; ++i) out.directions(i, j) = -out.directions(i, j);
    }
    return out;
}

/// Fitted discriminant functions plus everything needed to classify.
struct DiscriminantModel {
    std::size_t n_classes = 0;
    std::size_t n_functions = 0;             // m <= min(p, N-1)
    std::vector<std::string> class_labels;   // N, taxonomy order; also the tie-break order
    std::vector<double> priors;              // N, sum to 1
    std::vector<std::string> feature_names;  // p
    std::vector<double> feature_means;       // p, grand mean
    std::vector<double> feature_scales;      // p, pooled within-class standard deviations
    std::vector<double> eigenvalues;         // m, nonincreasing
    Matrix directions;                       // p x m, act on standardized features
    Matrix centroids;                        // N x m, class means in discriminant space

    std::size_t n_features() const { return feature_means.size(); }
};

struct FitOptions {
    std::optional<std::size_t> n_functions;  // default min(p, N-1)
    bool equal_priors = false;               // default proportional
    double ridge = 1e-8;                     // scaled by trace(Sw)/p
    bool drop_constant = false;              // drop zero-within-variance columns instead of erroring
    std::vector<std::string> feature_names;  // default canonical f0..f{p-1} naming when empty
};

/// Fits discriminant functions: standardizes features by grand mean and
/// pooled within-class standard deviation, then solves the generalized
/// eigenproblem on the standardized scatter pair (both divided by the
/// within degrees of freedom n - N).
inline DiscriminantModel fit(const LabeledDataset& data, FitOptions options = {}) {
    const std::size_t n = data.rows.rows();
    const std::size_t p = data.rows.cols();
    if (p == 0) throw DatasetError("dataset has no feature columns");

    ScatterResult scatter = scatter_matrices(data);
    const std::size_t n_classes = scatter.class_labels.size();
    if (n_classes < 2) throw DatasetError("discriminant analysis needs at least 2 classes");
    const double df = static_cast<double>(n - n_classes);
    if (df < 1.0) throw DatasetError("within-class degrees of freedom must be at least 1");

    std::vector<std::string> names = options.feature_names;
    if (names.empty())
        for (std::size_t j = 0; j < p; ++j) names.push_back("f" + std::to_string(j));
    if (names.size() != p) throw DimensionError("feature name count does not match columns");

    // pooled within-class standard deviations; zero-variance columns are
    // dropped or rejected by name
    std::vector<double> scales(p);
    std::vector<std::size_t> kept;
    std::vector<std::string> constant_columns;
    for (std::size_t j = 0; j < p; ++j) {
        double var = scatter.within(j, j) / df;
        double center = std::abs(scatter.grand_mean[j]);
        bool constant = var <= 1e-24 * std::max(1.0, center * center);
        scales[j] = constant ? 1.0 : std::sqrt(var);
        if (constant)
            constant_columns.push_back(names[j]);
        else
            kept.push_back(j);
    }
    if (!constant_columns.empty() && !options.drop_constant) {
        std::string msg = "feature columns with zero within-class variance:";
        for (const auto& c : constant_columns) msg += " " + c;
        throw SingularScatterError(msg, constant_columns);
    }
    if (kept.empty()) throw DatasetError("all feature columns are constant");
    const std::size_t pk = kept.size();

    // standardized copy of the data restricted to kept columns
    LabeledDataset std_data;
    std_data.rows = Matrix(n, pk);
    std_data.labels = data.labels;
    std_data.taxonomy = data.taxonomy;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = 0; jj < pk; ++jj) {
            std::size_t j = kept[jj];
            std_data.rows(i, jj) = (data.rows(i, j) - scatter.grand_mean[j]) / scales[j];
        }
    ScatterResult std_scatter = scatter_matrices(std_data);

    Matrix a(pk, pk);
    Matrix b(pk, pk);
    double trace = 0.0;
    for (std::size_t i = 0; i < pk; ++i) trace += std_scatter.within(i, i) / df;
    for (std::size_t i = 0; i < pk; ++i)
        for (std::size_t j = 0; j < pk; ++j) {
            a(i, j) = std_scatter.between(i, j) / df;
            b(i, j) = std_scatter.within(i, j) / df;
        }
    if (options.ridge > 0.0) {
        double eps = options.ridge * trace / static_cast<double>(pk);
        for (std::size_t i = 0; i < pk; ++i) b(i, i) += eps;
    }

    const std::size_t max_m = std::min(pk, n_classes - 1);
    std::size_t m = options.n_functions.value_or(max_m);
    if (m == 0 || m > max_m)
        throw DimensionError("n_functions must be between 1 and min(p, N-1) = " +
                             std::to_string(max_m));

    GeneralizedEigenResult eig;
    try {
        eig = generalized_eigen(a, b, m);
    } catch (const NotPositiveDefiniteError& e) {
        std::vector<std::string> cols = {names[kept[std::min<std::size_t>(e.pivot(), pk - 1)]]};
        throw SingularScatterError(
            "within-class scatter is singular beyond the regularization budget near column '" +
                cols[0] + "'",
            cols);
    }

    DiscriminantModel model;
    model.n_classes = n_classes;
    model.n_functions = m;
    model.class_labels = scatter.class_labels;
    model.feature_names = std::move(names);
    model.feature_means = scatter.grand_mean;
    model.feature_scales = std::move(scales);
    model.eigenvalues = eig.values;
    for (double& v : model.eigenvalues)
        if (v < 0.0 && v > -1e-8 * std::max(1.0, std::abs(model.eigenvalues[0]))) v = 0.0;

    // embed kept-column directions back into full p rows
    model.directions = Matrix(p, m);
    for (std::size_t jj = 0; jj < pk; ++jj)
        for (std::size_t j = 0; j < m; ++j) model.directions(kept[jj], j) = eig.directions(jj, j);

    model.priors.assign(n_classes, 0.0);
    for (std::size_t k = 0; k < n_classes; ++k)
        model.priors[k] = options.equal_priors
                              ? 1.0 / static_cast<double>(n_classes)
                              : static_cast<double>(scatter.class_counts[k]) / static_cast<double>(n);

    model.centroids = Matrix(n_classes, m);
    std::vector<double> z(p);
    for (std::size_t k = 0; k < n_classes; ++k) {
        for (std::size_t j = 0; j < p; ++j)
            z[j] = (scatter.class_means(k, j) - model.feature_means[j]) / model.feature_scales[j];
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < p; ++i) s += model.directions(i, j) * z[i];
            model.centroids(k, j) = s;
        }
    }
    return model;
}

/// First k discriminant scores of a feature vector.
inline std::vector<double> project(const DiscriminantModel& model, std::span<const double> x,
                                   std::size_t k) {
    if (k > model.n_functions)
        throw DimensionError("requested " + std::to_string(k) + " scores from a model with " +
                             std::to_string(model.n_functions) + " functions");
    if (x.size() != model.n_features())
        throw DimensionError("feature vector has " + std::to_string(x.size()) + " entries, model has " +
                             std::to_string(model.n_features()));
    std::vector<double> scores(k, 0.0);
    const std::size_t p = model.n_features();
    for (std::size_t i = 0; i < p; ++i) {
        double z = (x[i] - model.feature_means[i]) / model.feature_scales[i];
        for (std::size_t j = 0; j < k; ++j) scores[j] += model.directions(i, j) * z;
    }
    return scores;
}

struct Classification {
    std::string label;
    std::size_t index = 0;
    std::vector<double> scores;  // per-class: -0.5 |z - centroid|^2 + ln prior; larger is better
};

/// Nearest centroid in full discriminant space with a log-prior offset.
/// Ties go to the earliest class in the model's label order.
inline Classification classify(const DiscriminantModel& model, std::span<const double> x) {
    for (double v : x)
        if (!std::isfinite(v)) throw InputError("feature vector contains a non-finite value");
    std::vector<double> z = project(model, x, model.n_functions);
    Classification out;
    out.scores.resize(model.n_classes);
    for (std::size_t k = 0; k < model.n_classes; ++k) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < model.n_functions; ++j) {
            double d = z[j] - model.centroids(k, j);
            d2 += d * d;
        }
        out.scores[k] = -0.5 * d2 + std::log(model.priors[k]);
    }
    out.index = 0;
    for (std::size_t k = 1; k < model.n_classes; ++k)
        if (out.scores[k] > out.scores[out.index]) out.index = k;
    out.label = model.class_labels[out.index];
    return out;
}

inline constexpr int kModelFormatVersion = 1;
inline constexpr const char* kModelFormatName = "genre-discriminant-model";

struct ModelInfo {
    int version = 0;
    std::size_t n_classes = 0;
    std::size_t n_functions = 0;
    std::size_t n_features = 0;
};

namespace detail {

inline nlohmann::json model_header_checked(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ModelFormatError(std::string("corrupt model file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("format") || j["format"] != kModelFormatName)
        throw ModelFormatError("not a discriminant model file");
    if (!j.contains("version") || !j["version"].is_number_integer())
        throw ModelFormatError("model file has no version");
    int version = j["version"].get<int>();
    if (version != kModelFormatVersion)
        throw ModelFormatError("model file version " + std::to_string(version) +
                               " is incompatible with supported version " +
                               std::to_string(kModelFormatVersion));
    return j;
}

template <typename T>
inline std::vector<T> model_array(const nlohmann::json& j, const char* key, std::size_t expected) {
    if (!j.contains(key) || !j[key].is_array())
        throw ModelFormatError(std::string("model file is missing array '") + key + "'");
    std::vector<T> out;
    try {
        out = j[key].get<std::vector<T>>();
    } catch (const nlohmann::json::exception&) {
        throw ModelFormatError(std::string("model array '") + key + "' has the wrong element type");
    }
    if (out.size() != expected)
        throw ModelFormatError(std::string("model array '") + key + "' has " +
                               std::to_string(out.size()) + " entries, expected " +
                               std::to_string(expected));
    return out;
}

}  // namespace detail

/// Reads version and dimensions without touching the matrix payload.
inline ModelInfo read_model_info(std::string_view text) {
    nlohmann::json j = detail::model_header_checked(text);
    ModelInfo info;
    info.version = j["version"].get<int>();
    for (auto [field, target] : {std::pair{"n_classes", &info.n_classes},
                                 {"n_functions", &info.n_functions},
                                 {"n_features", &info.n_features}}) {
        if (!j.contains(field) || !j[field].is_number_unsigned())
            throw ModelFormatError(std::string("model file is missing '") + field + "'");
        *target = j[field].get<std::size_t>();
    }
    return info;
}

/// Versioned JSON serialization; numeric fields survive a round trip exactly.
inline std::string save_model(const DiscriminantModel& model) {
    nlohmann::json j;
    j["format"] = kModelFormatName;
    j["version"] = kModelFormatVersion;
    j["n_classes"] = model.n_classes;
    j["n_functions"] = model.n_functions;
    j["n_features"] = model.n_features();
    j["class_labels"] = model.class_labels;
    j["priors"] = model.priors;
    j["feature_names"] = model.feature_names;
    j["feature_means"] = model.feature_means;
    j["feature_scales"] = model.feature_scales;
    j["eigenvalues"] = model.eigenvalues;
    j["directions"] = model.directions.data();  // row-major p x m
    j["centroids"] = model.centroids.data();    // row-major N x m
    return j.dump(2) + "\n";
}

inline DiscriminantModel load_model(std::string_view text) {
    nlohmann::json j = detail::model_header_checked(text);
    ModelInfo info = read_model_info(text);
    DiscriminantModel model;
    model.n_classes = info.n_classes;
    model.n_functions = info.n_functions;
    const std::size_t p = info.n_features;
    const std::size_t m = model.n_functions;
    const std::size_t nc = model.n_classes;
    model.class_labels = detail::model_array<std::string>(j, "class_labels", nc);
    model.priors = detail::model_array<double>(j, "priors", nc);
    model.feature_names = detail::model_array<std::string>(j, "feature_names", p);
    model.feature_means = detail::model_array<double>(j, "feature_means", p);
    model.feature_scales = detail::model_array<double>(j, "feature_scales", p);
    model.eigenvalues = detail::model_array<double>(j, "eigenvalues", m);
    std::vector<double> dir = detail::model_array<double>(j, "directions", p * m);
    std::vector<double> cen = detail::model_array<double>(j, "centroids", nc * m);
    model.directions = Matrix(p, m);
    model.directions.data() = std::move(dir);
    model.centroids = Matrix(nc, m);
    model.centroids.data() = std::move(cen);
    return model;
}

}  // namespace genre

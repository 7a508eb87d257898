// genre_main.cpp -- command line front end: extract, train, eval, classify, map, run-all
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <genre/default_tagmap.hpp>
#include <genre/genre.hpp>

namespace {

using namespace genre;

TagMap resolve_tagmap(const std::string& flag_path) {
    if (!flag_path.empty()) return TagMap::parse(read_file(flag_path));
    if (const char* env = std::getenv("GENRE_TAGMAP"); env && *env)
        return TagMap::parse(read_file(env));
    return TagMap::parse(kDefaultTagMapText);
}

std::string resolve_against(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path fp(p);
    if (fp.is_absolute()) return p;
    return (base / fp).string();
}

std::map<std::string, std::string> parse_merge_map(std::string_view text) {
    std::map<std::string, std::string> merge;
    auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = detail::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::string cur;
        for (char ch : line) {
            if (ch == ' ' || ch == '\t') {
                if (!cur.empty()) fields.push_back(std::exchange(cur, {}));
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) fields.push_back(cur);
        if (fields.size() != 2)
            throw ParseError("merge map lines are 'source target', got " +
                                 std::to_string(fields.size()) + " fields",
                             i + 1);
        if (!merge.emplace(fields[0], fields[1]).second)
            throw ParseError("duplicate merge source '" + fields[0] + "'", i + 1);
    }
    return merge;
}

struct Extraction {
    FeatureTable table;                 // successful rows, manifest order
    std::vector<std::string> failures;  // "path: message"
};

Extraction extract_from_manifest(const std::string& manifest_path, const TagMap& tagmap,
                                 unsigned jobs, bool strict_tags) {
    Manifest manifest = load_manifest(read_file(manifest_path));
    const std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
    const std::size_t n = manifest.entries.size();

    std::vector<std::array<double, kFeatureCount>> rows(n);
    std::vector<std::optional<std::string>> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            const ManifestEntry& e = manifest.entries[i];
            try {
                std::string text = read_file(resolve_against(base, e.path));
                TaggedDocument doc = parse_tagged_file(text, tagmap, e.doc_id, strict_tags);
                rows[i] = to_row(extract_features(doc, tagmap));
            } catch (const Error& err) {
                errors[i] = e.path + ": " + err.what();
            }
        }
    };
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    if (jobs <= 1 || n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < std::min<unsigned>(jobs, static_cast<unsigned>(n)); ++t)
            pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
    }

    Extraction out;
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) {
            out.failures.push_back(*errors[i]);
            continue;
        }
        out.table.doc_ids.push_back(manifest.entries[i].doc_id);
        out.table.rows.push_back(rows[i]);
        out.table.labels.push_back(manifest.entries[i].category);
    }
    return out;
}

CategoryTaxonomy taxonomy_for(const std::vector<std::string>& labels, bool flat) {
    if (!flat) {
        CategoryTaxonomy tax = CategoryTaxonomy::brown();
        for (const auto& label : labels)
            if (!tax.has(label))
                throw TaxonomyError("category '" + label +
                                    "' is not a Brown code; pass --flat-taxonomy for ad hoc labels");
        return tax;
    }
    std::vector<std::string> codes;
    for (const auto& label : labels)
        if (std::find(codes.begin(), codes.end(), label) == codes.end()) codes.push_back(label);
    return CategoryTaxonomy::flat(codes);
}

LabeledDataset to_dataset(const FeatureTable& table, bool flat_taxonomy) {
    LabeledDataset d;
    d.rows = Matrix(table.rows.size(), kFeatureCount);
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        for (std::size_t j = 0; j < kFeatureCount; ++j) d.rows(i, j) = table.rows[i][j];
    d.labels = table.labels;
    for (std::size_t i = 0; i < d.labels.size(); ++i)
        if (d.labels[i].empty())
            throw InputError("row " + std::to_string(i + 1) + " ('" + table.doc_ids[i] +
                             "') has no category label");
    d.taxonomy = taxonomy_for(d.labels, flat_taxonomy);
    return d;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

// Shared option bundle; each subcommand registers only the flags it honors.
struct Options {
    std::string manifest;
    std::string features;
    std::string tagmap;
    std::string model;
    std::string merge_map;
    std::string out;
    std::string out_dir = ".";
    std::string priors = "proportional";
    std::string format = "table";
    std::string collapse_mode;
    std::string bounds;
    std::vector<std::string> inputs;
    double ridge = 1e-8;
    int level = 0;
    unsigned jobs = 1;
    std::size_t width = 70;
    std::size_t height = 30;
    std::optional<std::size_t> functions;
    bool keep_going = false;
    bool strict_tags = false;
    bool drop_constant = false;
    bool flat_taxonomy = false;
};

int report_failures(const std::vector<std::string>& failures, bool keep_going) {
    for (const auto& f : failures) std::cerr << (keep_going ? "warning: " : "error: ") << f << '\n';
    if (failures.empty()) return 0;
    if (!keep_going) return 1;
    std::cerr << "warning: skipped " << failures.size() << " document(s)\n";
    return 0;
}

LabeledDataset load_dataset(const Options& opt) {
    FeatureTable table;
    if (!opt.features.empty()) {
        table = read_feature_tsv(read_file(opt.features));
    } else {
        TagMap tagmap = resolve_tagmap(opt.tagmap);
        Extraction ex = extract_from_manifest(opt.manifest, tagmap, opt.jobs, opt.strict_tags);
        if (report_failures(ex.failures, opt.keep_going) != 0)
            throw InputError("feature extraction failed");
        table = std::move(ex.table);
    }
    LabeledDataset d = to_dataset(table, opt.flat_taxonomy);
    if (opt.level > 0) return collapse(d, opt.level);
    if (!opt.merge_map.empty()) return collapse(d, parse_merge_map(read_file(opt.merge_map)));
    return d;
}

DiscriminantModel fit_dataset(const LabeledDataset& data, const Options& opt) {
    FitOptions fo;
    fo.n_functions = opt.functions;
    fo.equal_priors = opt.priors == "equal";
    fo.ridge = opt.ridge;
    fo.drop_constant = opt.drop_constant;
    fo.feature_names.assign(feature_names().begin(), feature_names().end());
    return fit(data, fo);
}

std::string train_summary(const DiscriminantModel& model) {
    std::string text = "classes: " + std::to_string(model.n_classes) + " (";
    for (std::size_t k = 0; k < model.n_classes; ++k)
        text += (k ? ", " : "") + model.class_labels[k];
    text += ")\nfunctions: " + std::to_string(model.n_functions) + "\neigenvalues:";
    for (double v : model.eigenvalues) text += " " + detail::format_double(v);
    return text + "\n";
}

std::string eval_report(const ConfusionMatrix& conf, const LabeledDataset& data,
                        const Options& opt) {
    ReportOptions ro;
    ro.format = opt.format == "tsv" ? ReportFormat::Tsv : ReportFormat::Table;
    ro.taxonomy = &data.taxonomy;
    std::string text = report(conf, ro);
    if (opt.collapse_mode == "fiction") {
        ConfusionMatrix revised = collapse(conf, data.taxonomy.collapse_into_parent_map("3"));
        ro.total_label = "Revised total";
        text += "\n" + report(revised, ro);
    }
    return text;
}

MapBounds parse_bounds(const std::string& s) {
    auto parts = detail::split(s, ',');
    if (parts.size() != 4)
        throw InputError("--bounds wants four comma-separated numbers: f1min,f1max,f2min,f2max");
    MapBounds b;
    b.f1_min = detail::parse_double(parts[0], 1);
    b.f1_max = detail::parse_double(parts[1], 1);
    b.f2_min = detail::parse_double(parts[2], 1);
    b.f2_max = detail::parse_double(parts[3], 1);
    return b;
}

std::string map_text(const DiscriminantModel& model, const Options& opt,
                     const LabeledDataset* strip_data) {
    if (model.n_functions >= 2) {
        std::optional<MapBounds> bounds;
        if (!opt.bounds.empty()) bounds = parse_bounds(opt.bounds);
        return to_text(render_map(model, opt.width, opt.height, bounds));
    }
    return render_strip(model, opt.width, strip_data);
}

int cmd_extract(const Options& opt) {
    TagMap tagmap = resolve_tagmap(opt.tagmap);
    Extraction ex = extract_from_manifest(opt.manifest, tagmap, opt.jobs, opt.strict_tags);
    if (report_failures(ex.failures, opt.keep_going) != 0) return 1;
    emit(opt.out, write_feature_tsv(ex.table));
    return 0;
}

int cmd_train(const Options& opt) {
    LabeledDataset data = load_dataset(opt);
    DiscriminantModel model = fit_dataset(data, opt);
    write_file(opt.model, save_model(model));
    std::cout << train_summary(model) << "wrote " << opt.model << '\n';
    return 0;
}

int cmd_eval(const Options& opt) {
    DiscriminantModel model = load_model(read_file(opt.model));
    LabeledDataset data = load_dataset(opt);
    ConfusionMatrix conf = evaluate(model, data);
    emit(opt.out, eval_report(conf, data, opt));
    return 0;
}

int cmd_classify(const Options& opt) {
    DiscriminantModel model = load_model(read_file(opt.model));
    TagMap tagmap = resolve_tagmap(opt.tagmap);
    const std::size_t k = std::min<std::size_t>(2, model.n_functions);

    std::string text = "doc_id\tpredicted";
    for (const auto& label : model.class_labels) text += "\tscore:" + label;
    text += "\tf1";
    if (k > 1) text += "\tf2";
    text += "\n";

    std::vector<std::string> failures;
    for (const auto& path : opt.inputs) {
        try {
            TaggedDocument doc = parse_tagged_file(read_file(path), tagmap, path, opt.strict_tags);
            std::array<double, kFeatureCount> row = to_row(extract_features(doc, tagmap));
            Classification c = classify(model, row);
            std::vector<double> scores = project(model, row, k);
            text += path + '\t' + c.label;
            for (double s : c.scores) text += '\t' + detail::format_double(s);
            for (double s : scores) text += '\t' + detail::format_double(s);
            text += '\n';
        } catch (const Error& err) {
            failures.push_back(path + ": " + err.what());
        }
    }
    if (report_failures(failures, opt.keep_going) != 0) return 1;
    emit(opt.out, text);
    return 0;
}

int cmd_map(const Options& opt) {
    DiscriminantModel model = load_model(read_file(opt.model));
    std::optional<LabeledDataset> data;
    if (model.n_functions < 2 && (!opt.features.empty() || !opt.manifest.empty()))
        data = load_dataset(opt);
    emit(opt.out, map_text(model, opt, data ? &*data : nullptr));
    return 0;
}

int cmd_run_all(const Options& opt) {
    std::filesystem::create_directories(opt.out_dir);
    const std::filesystem::path dir(opt.out_dir);

    TagMap tagmap = resolve_tagmap(opt.tagmap);
    Extraction ex = extract_from_manifest(opt.manifest, tagmap, opt.jobs, opt.strict_tags);
    if (report_failures(ex.failures, opt.keep_going) != 0) return 1;
    const std::string features_path = (dir / "features.tsv").string();
    write_file(features_path, write_feature_tsv(ex.table));
    std::cout << "wrote " << features_path << '\n';

    LabeledDataset data = to_dataset(ex.table, opt.flat_taxonomy);
    if (opt.level > 0)
        data = collapse(data, opt.level);
    else if (!opt.merge_map.empty())
        data = collapse(data, parse_merge_map(read_file(opt.merge_map)));

    DiscriminantModel model = fit_dataset(data, opt);
    const std::string model_path = (dir / "model.json").string();
    write_file(model_path, save_model(model));
    std::cout << train_summary(model) << "wrote " << model_path << '\n';

    ConfusionMatrix conf = evaluate(model, data);
    std::string report_text = eval_report(conf, data, opt);
    const std::string report_path =
        (dir / (opt.format == "tsv" ? "report.tsv" : "report.txt")).string();
    write_file(report_path, report_text);
    std::cout << "wrote " << report_path << "\n\n" << report_text;

    const std::string map_path = (dir / "map.txt").string();
    write_file(map_path, map_text(model, opt, &data));
    std::cout << "\nwrote " << map_path << '\n';
    return 0;
}

void add_input_flags(CLI::App* cmd, Options& opt, bool manifest_only) {
    cmd->add_option("--manifest", opt.manifest, "corpus manifest: path<TAB>doc_id<TAB>category");
    if (!manifest_only)
        cmd->add_option("--features", opt.features, "precomputed feature TSV (from extract)");
    cmd->add_option("--tagmap", opt.tagmap,
                    "tag map file (default: $GENRE_TAGMAP, then the bundled Brown map)");
    cmd->add_option("--jobs", opt.jobs, "extraction worker threads; 0 = all cores");
    cmd->add_flag("--keep-going", opt.keep_going, "skip unreadable or unparsable documents");
    cmd->add_flag("--strict-tags", opt.strict_tags, "reject tags the tag map does not know");
}

void add_label_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--level", opt.level, "collapse labels to taxonomy level")
        ->check(CLI::Range(1, 3));
    cmd->add_option("--merge-map", opt.merge_map, "label merge file: 'source target' lines");
    cmd->add_flag("--flat-taxonomy", opt.flat_taxonomy,
                  "treat labels as an unstructured category set");
}

void require_one_input(const Options& opt) {
    if (opt.manifest.empty() == opt.features.empty())
        throw InputError("give exactly one of --manifest or --features");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"genre recognition: stylometric discriminant analysis of tagged text"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* extract = app.add_subcommand("extract", "compute feature rows for a corpus");
    add_input_flags(extract, opt, true);
    extract->get_option("--manifest")->required();
    extract->add_option("--out", opt.out, "output TSV path (default: stdout)");

    CLI::App* train = app.add_subcommand("train", "fit discriminant functions");
    add_input_flags(train, opt, false);
    add_label_flags(train, opt);
    train->add_option("--model", opt.model, "output model path")->required();
    train->add_option("--priors", opt.priors, "class prior mode")
        ->check(CLI::IsMember({"proportional", "equal"}));
    train->add_option("--ridge", opt.ridge, "within-scatter ridge epsilon");
    train
        ->add_option_function<std::size_t>(
            "--functions", [&](std::size_t m) { opt.functions = m; },
            "discriminant function count (default: min(features, classes - 1))")
        ->check(CLI::PositiveNumber);
    train->add_flag("--drop-constant", opt.drop_constant,
                    "drop zero-variance feature columns instead of failing");

    CLI::App* eval = app.add_subcommand("eval", "resubstitution error table for a model");
    add_input_flags(eval, opt, false);
    add_label_flags(eval, opt);
    eval->add_option("--model", opt.model, "model path")->required();
    eval->add_option("--collapse", opt.collapse_mode,
                     "append a report with fiction genres merged")
        ->check(CLI::IsMember({"fiction"}));
    eval->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"table", "tsv"}));
    eval->add_option("--out", opt.out, "output path (default: stdout)");

    CLI::App* classify_cmd = app.add_subcommand("classify", "predict categories for documents");
    classify_cmd->add_option("--model", opt.model, "model path")->required();
    classify_cmd->add_option("--tagmap", opt.tagmap, "tag map file");
    classify_cmd->add_flag("--keep-going", opt.keep_going, "skip unparsable documents");
    classify_cmd->add_flag("--strict-tags", opt.strict_tags,
                           "reject tags the tag map does not know");
    classify_cmd->add_option("--out", opt.out, "output TSV path (default: stdout)");
    classify_cmd->add_option("files", opt.inputs, "tagged documents to classify");

    CLI::App* map_cmd = app.add_subcommand("map", "territorial map of discriminant space");
    map_cmd->add_option("--model", opt.model, "model path")->required();
    add_input_flags(map_cmd, opt, false);
    add_label_flags(map_cmd, opt);
    map_cmd->add_option("--width", opt.width, "map width in cells");
    map_cmd->add_option("--height", opt.height, "map height in cells");
    map_cmd->add_option("--bounds", opt.bounds, "score window: f1min,f1max,f2min,f2max");
    map_cmd->add_option("--out", opt.out, "output path (default: stdout)");

    CLI::App* run_all = app.add_subcommand("run-all", "extract, train, eval and map in one pass");
    add_input_flags(run_all, opt, true);
    run_all->get_option("--manifest")->required();
    add_label_flags(run_all, opt);
    run_all->add_option("--priors", opt.priors, "class prior mode")
        ->check(CLI::IsMember({"proportional", "equal"}));
    run_all->add_option("--ridge", opt.ridge, "within-scatter ridge epsilon");
    run_all->add_flag("--drop-constant", opt.drop_constant,
                      "drop zero-variance feature columns instead of failing");
    run_all->add_option("--collapse", opt.collapse_mode,
                        "append a report with fiction genres merged")
        ->check(CLI::IsMember({"fiction"}));
    run_all->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"table", "tsv"}));
    run_all->add_option("--width", opt.width, "map width in cells");
    run_all->add_option("--height", opt.height, "map height in cells");
    run_all->add_option("--out-dir", opt.out_dir, "directory for pipeline outputs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed()) return cmd_extract(opt);
        if (train->parsed()) {
            require_one_input(opt);
            return cmd_train(opt);
        }
        if (eval->parsed()) {
            require_one_input(opt);
            return cmd_eval(opt);
        }
        if (classify_cmd->parsed()) return cmd_classify(opt);
        if (map_cmd->parsed()) return cmd_map(opt);
        if (run_all->parsed()) return cmd_run_all(opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

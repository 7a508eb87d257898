// tests/test_evaluation.cpp -- error percents, confusion matrices, collapsing, reports
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <genre/evaluation.hpp>

#include "support/random_data.hpp"

using genre::ConfusionMatrix;

TEST_CASE("error percent rounds half up") {
    CHECK(genre::error_percent(0, 10) == 0);
    CHECK(genre::error_percent(10, 10) == 100);
    CHECK(genre::error_percent(1, 8) == 13);
    CHECK(genre::error_percent(22, 500) == 4);
    CHECK(genre::error_percent(134, 500) == 27);
    CHECK(genre::error_percent(178, 500) == 36);
    CHECK(genre::error_percent(6, 126) == 5);
    CHECK(genre::error_percent(1, 200) == 1);
    CHECK(genre::error_percent(0, 0) == 0);
    CHECK(genre::error_percent(5, 0) == 0);
}

TEST_CASE("confusion matrix tallies and lookups") {
    ConfusionMatrix conf({"A", "B", "C"});
    conf.add(0, 0, 5);
    conf.add(0, 1, 2);
    conf.add(1, 1, 7);
    conf.add(2, 0);
    conf.add(2, 2, 3);
    CHECK(conf.size() == 3);
    CHECK(conf.count(0, 1) == 2);
    CHECK(conf.items(0) == 7);
    CHECK(conf.errors(0) == 2);
    CHECK(conf.items(1) == 7);
    CHECK(conf.errors(1) == 0);
    CHECK(conf.total_items() == 18);
    CHECK(conf.total_errors() == 3);
    CHECK(conf.index_of("C") == 2);
    CHECK_THROWS_AS(conf.index_of("Z"), genre::TaxonomyError);
    CHECK_THROWS_AS(ConfusionMatrix({"A"}, {1, 2}), genre::DimensionError);
}

TEST_CASE("miss lists sort by count with column order ties") {
    ConfusionMatrix conf({"J", "H", "D", "G", "F"});
    std::size_t j = 0;
    conf.add(j, 0, 50);
    conf.add(j, 1, 10);  // H
    conf.add(j, 2, 9);   // D
    conf.add(j, 3, 9);   // G ties with D, D's column comes first
    conf.add(j, 4, 6);   // F
    CHECK(conf.miss_list(j) == std::vector<std::string>{"H", "D", "G", "F"});
    CHECK(conf.miss_list(1).empty());
}

TEST_CASE("evaluate fills the confusion matrix in model label order") {
    std::mt19937_64 rng(2026);
    auto d = testsupport::random_dataset(rng, 3, 4, 8, 12, 30.0);
    auto model = genre::fit(d);
    auto conf = genre::evaluate(model, d);
    CHECK(conf.labels() == model.class_labels);
    CHECK(conf.total_items() == static_cast<long long>(d.size()));
    CHECK(conf.total_errors() == 0);  // widely separated blobs resubstitute cleanly

    d.labels[2] = "mystery";
    try {
        genre::evaluate(model, d);
        FAIL("expected TaxonomyError");
    } catch (const genre::TaxonomyError& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
        CHECK(std::string(e.what()).find("mystery") != std::string::npos);
    }
}

TEST_CASE("collapse sums confusion cells under a merge map") {
    ConfusionMatrix conf({"A", "B", "C", "D"});
    for (std::size_t t = 0; t < 4; ++t)
        for (std::size_t p = 0; p < 4; ++p) conf.add(t, p, static_cast<long long>(10 * t + p + 1));
    std::map<std::string, std::string> merge = {
        {"A", "x"}, {"B", "y"}, {"C", "x"}, {"D", "y"}};
    auto out = genre::collapse(conf, merge);
    REQUIRE(out.labels() == std::vector<std::string>{"x", "y"});  // first appearance order
    // x row = A row + C row, x col = A col + C col
    CHECK(out.count(0, 0) == conf.count(0, 0) + conf.count(0, 2) + conf.count(2, 0) + conf.count(2, 2));
    CHECK(out.count(0, 1) == conf.count(0, 1) + conf.count(0, 3) + conf.count(2, 1) + conf.count(2, 3));
    CHECK(out.total_items() == conf.total_items());

    std::map<std::string, std::string> partial = {{"A", "x"}};
    CHECK_THROWS_AS(genre::collapse(conf, partial), genre::TaxonomyError);
}

TEST_CASE("collapsing never increases errors and preserves items") {
    std::mt19937_64 rng(515);
    for (int rep = 0; rep < 25; ++rep) {
        std::uniform_int_distribution<std::size_t> n_dist(2, 12);
        std::size_t n = n_dist(rng);
        auto conf = testsupport::random_confusion(rng, n, 30);
        std::uniform_int_distribution<std::size_t> t_dist(1, n);
        auto merge = testsupport::random_merge(rng, conf.labels(), t_dist(rng));
        auto out = genre::collapse(conf, merge);
        CHECK(out.total_items() == conf.total_items());
        CHECK(out.total_errors() <= conf.total_errors());
    }
}

TEST_CASE("level collapse goes through the taxonomy") {
    auto tax = genre::CategoryTaxonomy::brown();
    ConfusionMatrix conf({"K", "L", "A"});
    conf.add(0, 1, 4);  // K mistaken for L: an error at level 3
    conf.add(0, 0, 6);
    conf.add(1, 1, 10);
    conf.add(2, 2, 10);
    auto out = genre::collapse(conf, 2, tax);
    REQUIRE(out.labels() == std::vector<std::string>{"3", "1"});
    CHECK(out.count(0, 0) == 20);  // the K-for-L confusion dissolves inside fiction
    CHECK(out.total_errors() == 0);
    CHECK(out.total_items() == 30);
}

TEST_CASE("dataset collapse relabels rows") {
    genre::LabeledDataset d;
    d.taxonomy = genre::CategoryTaxonomy::brown();
    d.rows = genre::Matrix(3, 1);
    d.labels = {"K", "L", "A"};
    auto out = genre::collapse(d, 2);
    CHECK(out.labels == std::vector<std::string>{"3", "3", "1"});
    CHECK(out.rows.data() == d.rows.data());

    std::map<std::string, std::string> merge = {{"K", "fic"}, {"L", "fic"}, {"A", "press"}};
    auto merged = genre::collapse(d, merge);
    CHECK(merged.labels == std::vector<std::string>{"fic", "fic", "press"});
    std::map<std::string, std::string> partial = {{"K", "fic"}};
    CHECK_THROWS_AS(genre::collapse(d, partial), genre::TaxonomyError);
}

TEST_CASE("table report matches the frozen layout") {
    ConfusionMatrix conf({"A", "K"});
    conf.add(0, 0, 8);
    conf.add(0, 1, 2);
    conf.add(1, 0, 1);
    conf.add(1, 1, 9);
    std::string expected =
        "Category  Items  Errors    Miss\n"
        "A            10  2 (20 %)  K\n"
        "K            10  1 (10 %)  A\n"
        "Total        20  3 (15 %)\n";
    CHECK(genre::report(conf) == expected);
}

TEST_CASE("table report prints display names when given a taxonomy") {
    auto tax = genre::CategoryTaxonomy::brown();
    ConfusionMatrix conf({"A", "K"});
    conf.add(0, 0, 4);
    conf.add(1, 1, 4);
    genre::ReportOptions opt;
    opt.taxonomy = &tax;
    std::string text = genre::report(conf, opt);
    auto lines = genre::detail::split_lines(text);
    REQUIRE(lines.size() == 4);
    CHECK(lines[1].substr(0, 19) == "A. Press: reportage");
    CHECK(lines[2].substr(0, 18) == "K. General Fiction");
    CHECK(lines[3].substr(0, 5) == "Total");
    // the items column stays right-aligned under its header
    CHECK(lines[0].find("Items") + 4 == lines[1].find('4'));
}

TEST_CASE("tsv report matches the frozen layout and parses back") {
    ConfusionMatrix conf({"A", "K"});
    conf.add(0, 0, 8);
    conf.add(0, 1, 2);
    conf.add(1, 0, 1);
    conf.add(1, 1, 9);
    genre::ReportOptions opt;
    opt.format = genre::ReportFormat::Tsv;
    std::string expected =
        "category\titems\terrors\terror_pct\tmiss\n"
        "A\t10\t2\t20\tK\n"
        "K\t10\t1\t10\tA\n"
        "Total\t20\t3\t15\t\n";
    std::string text = genre::report(conf, opt);
    CHECK(text == expected);

    auto rows = genre::parse_report_tsv(text);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].category == "A");
    CHECK(rows[0].items == 10);
    CHECK(rows[0].errors == 2);
    CHECK(rows[0].error_pct == 20);
    CHECK(rows[0].miss == std::vector<std::string>{"K"});
    CHECK(rows[2].category == "Total");
    CHECK(rows[2].miss.empty());

    CHECK_THROWS_AS(genre::parse_report_tsv("bad\theader\n"), genre::ParseError);
    CHECK_THROWS_AS(genre::parse_report_tsv(expected + "x\t1\n"), genre::ParseError);
    CHECK_THROWS_AS(genre::parse_report_tsv("category\titems\terrors\terror_pct\tmiss\nA\tx\t0\t0\t\n"),
                    genre::ParseError);
}

TEST_CASE("custom total label flows through both formats") {
    ConfusionMatrix conf({"A"});
    conf.add(0, 0, 3);
    genre::ReportOptions opt;
    opt.total_label = "Revised total";
    std::string table = genre::report(conf, opt);
    CHECK(table.find("Revised total") != std::string::npos);
    opt.format = genre::ReportFormat::Tsv;
    auto rows = genre::parse_report_tsv(genre::report(conf, opt));
    CHECK(rows.back().category == "Revised total");
}

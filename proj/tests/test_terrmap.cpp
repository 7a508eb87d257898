// tests/test_terrmap.cpp -- territorial maps and one-function strips
#include <catch2/catch_amalgamated.hpp>

#include <genre/corpus.hpp>
#include <genre/terrmap.hpp>

using genre::DiscriminantModel;
using genre::Matrix;

namespace {

// two classes split by the vertical line f1 = 0, centroids (-2, 0) and (2, 0)
DiscriminantModel plane_model() {
    DiscriminantModel m;
    m.n_classes = 2;
    m.n_functions = 2;
    m.class_labels = {"A", "B"};
    m.priors = {0.5, 0.5};
    m.feature_names = {"f0", "f1"};
    m.feature_means = {0.0, 0.0};
    m.feature_scales = {1.0, 1.0};
    m.eigenvalues = {3.0, 1.0};
    m.directions = Matrix::identity(2);
    m.centroids = Matrix(2, 2);
    m.centroids(0, 0) = -2.0;
    m.centroids(1, 0) = 2.0;
    return m;
}

// one-function version: centroids -2 and 2 on the only axis
DiscriminantModel line_model() {
    DiscriminantModel m;
    m.n_classes = 2;
    m.n_functions = 1;
    m.class_labels = {"A", "B"};
    m.priors = {0.5, 0.5};
    m.feature_names = {"f0"};
    m.feature_means = {0.0};
    m.feature_scales = {1.0};
    m.eigenvalues = {3.0};
    m.directions = Matrix(1, 1);
    m.directions(0, 0) = 1.0;
    m.centroids = Matrix(2, 1);
    m.centroids(0, 0) = -2.0;
    m.centroids(1, 0) = 2.0;
    return m;
}

genre::LabeledDataset points(std::initializer_list<std::pair<double, const char*>> xs) {
    genre::LabeledDataset d;
    d.taxonomy = genre::CategoryTaxonomy::flat({"A", "B"});
    d.rows = Matrix(xs.size(), 1);
    std::size_t i = 0;
    for (const auto& [x, label] : xs) {
        d.rows(i++, 0) = x;
        d.labels.push_back(label);
    }
    return d;
}

}  // namespace

TEST_CASE("class symbols") {
    CHECK(genre::class_symbol("I") == '1');
    CHECK(genre::class_symbol("II") == '2');
    CHECK(genre::class_symbol("A") == 'A');
    CHECK(genre::class_symbol("fiction") == 'f');
    CHECK(genre::class_symbol("3") == '3');
    CHECK(genre::class_symbol("") == '?');
}

TEST_CASE("classify_2d picks the nearest centroid with log priors") {
    auto m = plane_model();
    CHECK(genre::classify_2d(m, -1.0, 0.0) == 0);
    CHECK(genre::classify_2d(m, 1.0, 5.0) == 1);
    CHECK(genre::classify_2d(m, 0.0, 3.0) == 0);  // exact tie goes to the earlier class
    m.priors = {0.9, 0.1};
    CHECK(genre::classify_2d(m, 0.4, 0.0) == 0);  // prior outweighs the shorter distance
    CHECK(genre::classify_2d(m, 1.0, 0.0) == 1);
}

TEST_CASE("render_map grid classes boundaries and centroids") {
    auto m = plane_model();
    auto map = genre::render_map(m, 12, 5);
    REQUIRE(map.width == 12);
    REQUIRE(map.height == 5);
    // default bounds: centroid box expanded a quarter per side; flat y padded by 1
    CHECK(map.bounds.f1_min == Catch::Approx(-3.0));
    CHECK(map.bounds.f1_max == Catch::Approx(3.0));
    CHECK(map.bounds.f2_min == Catch::Approx(-1.0));
    CHECK(map.bounds.f2_max == Catch::Approx(1.0));

    for (std::size_t r = 0; r < 5; ++r) {
        for (std::size_t c = 0; c < 12; ++c) {
            CHECK(map.at(r, c).class_index == (c < 6 ? 0u : 1u));
            CHECK(map.at(r, c).boundary == (c == 5 || c == 6));
        }
    }
    CHECK(map.at(2, 2).centroid);
    CHECK(map.at(2, 10).centroid);
    std::size_t centroid_cells = 0;
    for (const auto& cell : map.cells) centroid_cells += cell.centroid ? 1 : 0;
    CHECK(centroid_cells == 2);
}

TEST_CASE("non-boundary cells agree with classify_2d at their centers") {
    auto m = plane_model();
    m.priors = {0.7, 0.3};
    auto map = genre::render_map(m, 31, 13);
    const double dx = (map.bounds.f1_max - map.bounds.f1_min) / 31.0;
    const double dy = (map.bounds.f2_max - map.bounds.f2_min) / 13.0;
    for (std::size_t r = 0; r < 13; ++r)
        for (std::size_t c = 0; c < 31; ++c) {
            double x = map.bounds.f1_min + (c + 0.5) * dx;
            double y = map.bounds.f2_max - (r + 0.5) * dy;
            CHECK(map.at(r, c).class_index == genre::classify_2d(m, x, y));
        }
}

TEST_CASE("map text matches the frozen rendering") {
    auto m = plane_model();
    auto map = genre::render_map(m, 12, 5);
    std::string expected =
        "  +------+-----+\n"
        "  |     AB     |\n"
        "  |     AB     |\n"
        "0 +  *  AB   * +\n"
        "  |     AB     |\n"
        "  |     AB     |\n"
        "  +------+-----+\n"
        "         0\n";
    CHECK(genre::to_text(map) == expected);
    CHECK(genre::to_text(map) == genre::to_text(genre::render_map(m, 12, 5)));
}

TEST_CASE("explicit bounds clip centroid markers") {
    auto m = plane_model();
    genre::MapBounds b{-1.0, 1.0, -1.0, 1.0};
    auto map = genre::render_map(m, 10, 5, b);
    CHECK(map.bounds.f1_min == -1.0);
    for (const auto& cell : map.cells) CHECK_FALSE(cell.centroid);

    genre::MapBounds flat{0.0, 0.0, -1.0, 1.0};
    CHECK_THROWS_AS(genre::render_map(m, 10, 5, flat), genre::InputError);
}

TEST_CASE("render_map validates model and grid") {
    CHECK_THROWS_AS(genre::render_map(plane_model(), 9, 5), genre::InputError);
    CHECK_THROWS_AS(genre::render_map(plane_model(), 10, 4), genre::InputError);
    try {
        genre::render_map(line_model(), 20, 10);
        FAIL("expected DimensionError");
    } catch (const genre::DimensionError& e) {
        CHECK(std::string(e.what()).find("render_strip") != std::string::npos);
    }
}

TEST_CASE("strip without data shows the axis and centroids") {
    std::string expected =
        "           +---------+--------+\n"
        "          -2         0        2\n"
        "Centroids: *                  *\n"
        "Classes:   A                  B\n";
    CHECK(genre::render_strip(line_model(), 20) == expected);
}

TEST_CASE("strip histogram stacks majority class symbols") {
    auto data = points({{-2.0, "A"}, {-1.95, "A"}, {-1.9, "B"}, {2.0, "B"}});
    std::string expected =
        "           A\n"
        "           A\n"
        "           A                  B\n"
        "           +---------+--------+\n"
        "          -2         0        2\n"
        "Centroids: *                  *\n"
        "Classes:   A                  B\n";
    CHECK(genre::render_strip(line_model(), 20, &data) == expected);
}

TEST_CASE("strip majority ties go to the earlier class") {
    auto data = points({{-2.0, "A"}, {-1.9, "B"}});
    std::string text = genre::render_strip(line_model(), 20, &data);
    auto lines = genre::detail::split_lines(text);
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0] == "           A");  // 1 A and 1 B in the bin: A's symbol wins
    CHECK(lines[1] == "           A");
}

TEST_CASE("strip validates width and data labels") {
    CHECK_THROWS_AS(genre::render_strip(line_model(), 9), genre::InputError);
    auto data = points({{0.0, "A"}});
    data.labels[0] = "zz";
    CHECK_THROWS_AS(genre::render_strip(line_model(), 20, &data), genre::TaxonomyError);
}

TEST_CASE("strip pads degenerate score ranges") {
    auto m = line_model();
    m.centroids(0, 0) = 0.0;
    m.centroids(1, 0) = 0.0;
    std::string text = genre::render_strip(m, 10);
    auto lines = genre::detail::split_lines(text);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].find('+') != std::string::npos);   // axis still gets a tick at 0
    CHECK(lines[2].find('*') != std::string::npos);   // both centroids share one bin
    CHECK(lines[3].find('A') != std::string::npos);
    CHECK(lines[3].find('B') == std::string::npos);   // first class claimed the cell
}

TEST_CASE("strips accept models with more than one function") {
    auto m = plane_model();
    std::string text = genre::render_strip(m, 20);
    CHECK(text.find("Centroids:") != std::string::npos);
}

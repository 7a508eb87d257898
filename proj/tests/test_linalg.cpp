// tests/test_linalg.cpp -- dense matrix kernels: Cholesky, triangular solves, Jacobi
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <genre/linalg.hpp>

using genre::Matrix;

namespace {

Matrix mat3(std::initializer_list<double> v) {
    Matrix m(3, 3);
    std::size_t i = 0;
    for (double x : v) m.data()[i++] = x;
    return m;
}

Matrix column(std::initializer_list<double> v) {
    Matrix m(v.size(), 1);
    std::size_t i = 0;
    for (double x : v) m(i++, 0) = x;
    return m;
}

Matrix random_spd(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d(0.0, 1.0);
    Matrix m(n, n);
    for (auto& x : m.data()) x = d(rng);
    Matrix a = m.transposed() * m;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += double(n);
    return a;
}

}  // namespace

TEST_CASE("matrix product multiplies row-major blocks") {
    Matrix a(2, 3);
    a.data() = {1, 2, 3, 4, 5, 6};
    Matrix b(3, 2);
    b.data() = {7, 8, 9, 10, 11, 12};
    Matrix c = a * b;
    REQUIRE(c.rows() == 2);
    REQUIRE(c.cols() == 2);
    CHECK(c(0, 0) == 58.0);
    CHECK(c(0, 1) == 64.0);
    CHECK(c(1, 0) == 139.0);
    CHECK(c(1, 1) == 154.0);
    CHECK_THROWS_AS(a * a, genre::DimensionError);
}

TEST_CASE("identity and transpose behave") {
    Matrix i = Matrix::identity(3);
    Matrix a = mat3({1, 2, 3, 4, 5, 6, 7, 8, 9});
    Matrix ia = i * a;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) CHECK(ia(r, c) == a(r, c));
    Matrix t = a.transposed();
    CHECK(t(0, 1) == 4.0);
    CHECK(t(2, 0) == 3.0);
}

TEST_CASE("max_abs and is_symmetric") {
    Matrix a = mat3({1, 2, 3, 2, -9, 4, 3, 4, 5});
    CHECK(genre::max_abs(a) == 9.0);
    CHECK(genre::is_symmetric(a));
    a(0, 2) = 3.5;
    CHECK_FALSE(genre::is_symmetric(a));
}

TEST_CASE("cholesky factors a hand-worked matrix") {
    Matrix a = mat3({4, 2, 2, 2, 5, 3, 2, 3, 6});
    Matrix l = genre::cholesky_lower(a);
    CHECK(l(0, 0) == Catch::Approx(2.0));
    CHECK(l(1, 0) == Catch::Approx(1.0));
    CHECK(l(1, 1) == Catch::Approx(2.0));
    CHECK(l(2, 0) == Catch::Approx(1.0));
    CHECK(l(2, 1) == Catch::Approx(1.0));
    CHECK(l(2, 2) == Catch::Approx(2.0));
    CHECK(l(0, 1) == 0.0);
    CHECK(l(0, 2) == 0.0);
    CHECK(l(1, 2) == 0.0);
}

TEST_CASE("cholesky rejects an indefinite matrix and names the pivot") {
    Matrix a(2, 2);
    a.data() = {1, 2, 2, 1};
    try {
        genre::cholesky_lower(a);
        FAIL("expected NotPositiveDefiniteError");
    } catch (const genre::NotPositiveDefiniteError& e) {
        CHECK(e.pivot() == 1);
    }
}

TEST_CASE("triangular solves match hand-worked answers") {
    Matrix l = mat3({2, 0, 0, 1, 2, 0, 1, 1, 2});
    Matrix b = column({2, 3, 4});

    Matrix x = genre::forward_solve(l, b);
    CHECK(x(0, 0) == Catch::Approx(1.0));
    CHECK(x(1, 0) == Catch::Approx(1.0));
    CHECK(x(2, 0) == Catch::Approx(1.0));

    Matrix y = genre::backward_solve_transposed(l, b);
    CHECK(y(0, 0) == Catch::Approx(-0.25));
    CHECK(y(1, 0) == Catch::Approx(0.5));
    CHECK(y(2, 0) == Catch::Approx(2.0));
}

TEST_CASE("solve_spd inverts against the original matrix") {
    std::mt19937_64 rng(20240501);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 1 + rep % 8;
        Matrix a = random_spd(rng, n);
        Matrix b(n, 2);
        std::normal_distribution<double> d(0.0, 1.0);
        for (auto& x : b.data()) x = d(rng);
        Matrix x = genre::solve_spd(a, b);
        Matrix ax = a * x;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(ax(i, j) == Catch::Approx(b(i, j)).margin(1e-9));
    }
}

TEST_CASE("solve_spd span overload agrees with the matrix overload") {
    std::mt19937_64 rng(7);
    Matrix a = random_spd(rng, 4);
    std::vector<double> b = {1.0, -2.0, 0.5, 3.0};
    auto x = genre::solve_spd(a, std::span<const double>(b));
    Matrix bm(4, 1);
    for (std::size_t i = 0; i < 4; ++i) bm(i, 0) = b[i];
    Matrix xm = genre::solve_spd(a, bm);
    for (std::size_t i = 0; i < 4; ++i) CHECK(x[i] == Catch::Approx(xm(i, 0)));
}

TEST_CASE("solve_spd rejects an asymmetric matrix") {
    Matrix a(2, 2);
    a.data() = {1, 2, 0, 1};
    Matrix b(2, 1);
    b.data() = {1, 1};
    CHECK_THROWS_AS(genre::solve_spd(a, b), genre::InputError);
}

TEST_CASE("jacobi diagonalizes a hand-worked 2x2") {
    Matrix a(2, 2);
    a.data() = {2, 1, 1, 2};
    auto e = genre::jacobi_eigen(a);
    std::vector<double> vals = e.values;
    std::sort(vals.begin(), vals.end());
    CHECK(vals[0] == Catch::Approx(1.0));
    CHECK(vals[1] == Catch::Approx(3.0));
}

TEST_CASE("jacobi eigenpairs satisfy A v = lambda v with orthonormal vectors") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> d(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 2 + rep % 9;
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = d(rng);
        auto e = genre::jacobi_eigen(a);
        REQUIRE(e.values.size() == n);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                double av = 0.0;
                for (std::size_t j = 0; j < n; ++j) av += a(i, j) * e.vectors(j, k);
                CHECK(av == Catch::Approx(e.values[k] * e.vectors(i, k)).margin(1e-9));
            }
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += e.vectors(i, k) * e.vectors(i, l);
                CHECK(dot == Catch::Approx(k == l ? 1.0 : 0.0).margin(1e-10));
            }
    }
}

TEST_CASE("cholesky reconstructs random SPD matrices") {
    std::mt19937_64 rng(2023);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 1 + rep % 10;
        Matrix a = random_spd(rng, n);
        Matrix l = genre::cholesky_lower(a);
        Matrix llt = l * l.transposed();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                CHECK(llt(i, j) == Catch::Approx(a(i, j)).margin(1e-9));
    }
}

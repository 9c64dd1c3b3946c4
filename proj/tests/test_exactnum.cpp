#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chowdiag/exactnum.hpp"

using namespace chowdiag;

namespace {

ExactMatrix from_rows(const std::vector<std::vector<long>>& rows,
                      std::optional<unsigned long> p = std::nullopt) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    ExactMatrix m(r, c, p);
    for (std::size_t i = 0; i < r; i++)
        for (std::size_t j = 0; j < c; j++) m.set(i, j, Rational(rows[i][j]));
    return m;
}

bool proportional(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    REQUIRE(a.size() == b.size());
    Rational ratio(0);
    for (std::size_t i = 0; i < a.size(); i++) {
        if ((a[i] == 0) != (b[i] == 0)) return false;
        if (a[i] == 0) continue;
        Rational r = b[i] / a[i];
        if (ratio == 0)
            ratio = r;
        else if (r != ratio)
            return false;
    }
    return ratio != 0;
}

ExactMatrix diag_as_matrix(const std::vector<Int>& d, std::size_t rows, std::size_t cols) {
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < d.size(); i++) m.set(i, i, Rational(d[i]));
    return m;
}

}  // namespace

TEST_CASE("rational string round trips") {
    CHECK(rational_from_string("3/6") == Rational(1, 2));
    CHECK(rational_from_string("-4/2") == Rational(-2));
    CHECK(rational_from_string("17") == Rational(17));
    CHECK(rational_to_string(Rational(-3, 7)) == "-3/7");
    CHECK(rational_to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(rational_from_string("1.5"), SchemaError);
    CHECK_THROWS_AS(rational_from_string("1/0"), SchemaError);
    CHECK_THROWS_AS(rational_from_string(""), SchemaError);
    CHECK_THROWS_AS(rational_from_string("x"), SchemaError);
    CHECK_THROWS_AS(rational_from_string("1/2/3"), SchemaError);
}

TEST_CASE("rational arithmetic stays canonical") {
    std::mt19937 rng(20260816);
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 20);
    for (int it = 0; it < 200; it++) {
        Rational a(num(rng), den(rng));
        Rational b(num(rng), den(rng));
        a.canonicalize();
        b.canonicalize();
        CHECK((a + b) - b == a);
        // canonical: gcd(num, den) = 1, den >= 1
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
        CHECK((a == 0 ? a.get_num() == 0 && a.get_den() == 1 : g == 1));
        CHECK(a.get_den() >= 1);
    }
}

TEST_CASE("fp reduction") {
    CHECK(fp_reduce(Rational(1, 2), 5) == Rational(3));
    CHECK(fp_reduce(Rational(-1), 7) == Rational(6));
    CHECK(fp_reduce(Rational(10), 5) == Rational(0));
    CHECK_THROWS_AS(fp_reduce(Rational(1, 5), 5), FieldMismatch);
}

TEST_CASE("rank on pinned matrices") {
    CHECK(from_rows({{1, 2}, {2, 4}}).rank() == 1);
    CHECK(from_rows({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}).rank() == 0);
    CHECK(ExactMatrix::identity(4).rank() == 4);
    // rank can drop in positive characteristic
    CHECK(from_rows({{2}}).rank() == 1);
    CHECK(from_rows({{2}}, 2).rank() == 0);
    CHECK(from_rows({{1, 2}, {2, 4}}, 5).rank() == 1);
    CHECK(from_rows({{1, 2}, {2, 7}}, 3).rank() == 1);
    CHECK(from_rows({{1, 2}, {2, 7}}).rank() == 2);
}

TEST_CASE("kernel bases on pinned matrices") {
    auto k1 = from_rows({{1, 1}}).kernel_basis();
    REQUIRE(k1.size() == 1);
    CHECK(proportional(k1[0], {Rational(1), Rational(-1)}));

    CHECK(ExactMatrix::identity(3).kernel_basis().empty());

    auto k2 = from_rows({{1, 2}, {2, 4}}).kernel_basis();
    REQUIRE(k2.size() == 1);
    CHECK(proportional(k2[0], {Rational(2), Rational(-1)}));

    // kernel of an empty-row matrix is everything
    ExactMatrix zero_rows(0, 3);
    CHECK(zero_rows.kernel_basis().size() == 3);
}

TEST_CASE("rank plus kernel dimension is the column count") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> entry(-6, 6);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int it = 0; it < 60; it++) {
        std::size_t r = dim(rng), c = dim(rng);
        std::optional<unsigned long> p;
        if (it % 3 == 1) p = 5;
        if (it % 3 == 2) p = 2;
        ExactMatrix m(r, c, p);
        for (std::size_t i = 0; i < r; i++)
            for (std::size_t j = 0; j < c; j++) m.set(i, j, Rational(entry(rng)));
        auto kb = m.kernel_basis();
        CHECK(m.rank() + kb.size() == c);
        // every reported kernel vector really lies in the kernel
        for (const auto& v : kb) {
            for (std::size_t i = 0; i < r; i++) {
                Rational acc(0);
                for (std::size_t j = 0; j < c; j++) acc += m.at(i, j) * v[j];
                if (p) acc = fp_reduce(acc, *p);
                CHECK(acc == 0);
            }
        }
    }
}

TEST_CASE("solve") {
    auto m = from_rows({{1, 2}, {3, 4}});
    auto x = m.solve({Rational(5), Rational(11)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rational(1));
    CHECK((*x)[1] == Rational(2));
    auto none = from_rows({{1, 2}, {2, 4}}).solve({Rational(1), Rational(3)});
    CHECK(!none.has_value());
    auto fp = from_rows({{2, 1}}, 5).solve({Rational(4)});
    REQUIRE(fp.has_value());
    Rational acc = fp_reduce(Rational(2) * (*fp)[0] + (*fp)[1], 5);
    CHECK(acc == Rational(4));
}

TEST_CASE("smith form on pinned matrices") {
    auto s1 = from_rows({{2, 0}, {0, 3}}).smith_normal_form();
    CHECK(s1.diagonal == std::vector<Int>{Int(1), Int(6)});

    auto s2 = ExactMatrix::identity(3).smith_normal_form();
    CHECK(s2.diagonal == std::vector<Int>{Int(1), Int(1), Int(1)});

    auto s3 = from_rows({{2, 4}, {6, 8}}).smith_normal_form();
    CHECK(s3.diagonal == std::vector<Int>{Int(2), Int(4)});

    CHECK_THROWS_AS(from_rows({{1}}, 5).smith_normal_form(), InvalidArgument);
}

TEST_CASE("smith form properties on random integer matrices") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> entry(-9, 9);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    for (int it = 0; it < 80; it++) {
        std::size_t r = dim(rng), c = dim(rng);
        ExactMatrix m(r, c);
        for (std::size_t i = 0; i < r; i++)
            for (std::size_t j = 0; j < c; j++) m.set(i, j, Rational(entry(rng)));
        auto s = m.smith_normal_form();

        // left * m * right reproduces the diagonal
        CHECK(s.left.multiply(m).multiply(s.right) ==
              diag_as_matrix(s.diagonal, r, c));
        // transforms are unimodular
        Rational dl = s.left.det();
        Rational dr = s.right.det();
        CHECK((dl == 1 || dl == -1));
        CHECK((dr == 1 || dr == -1));
        // nonnegative divisibility chain
        for (std::size_t i = 0; i < s.diagonal.size(); i++) {
            CHECK(s.diagonal[i] >= 0);
            if (i + 1 < s.diagonal.size()) {
                if (s.diagonal[i] == 0)
                    CHECK(s.diagonal[i + 1] == 0);
                else
                    CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
            }
        }
        // |det| equals the product of the invariant factors for square input
        if (r == c) {
            Rational prod(1);
            for (const auto& d : s.diagonal) prod *= Rational(d);
            Rational dm = m.det();
            if (dm < 0) dm = -dm;
            CHECK(prod == dm);
        }
    }
}

TEST_CASE("finite field matrices stay reduced and unmixed") {
    ExactMatrix m(2, 2, 5);
    m.set(0, 0, Rational(-1));
    m.set(0, 1, Rational(7));
    m.set(1, 0, Rational(1, 2));
    CHECK(m.at(0, 0) == Rational(4));
    CHECK(m.at(0, 1) == Rational(2));
    CHECK(m.at(1, 0) == Rational(3));

    ExactMatrix q(2, 2);
    CHECK_THROWS_AS(m.multiply(q), FieldMismatch);
    ExactMatrix m7(2, 2, 7);
    CHECK_THROWS_AS(m.multiply(m7), FieldMismatch);
    CHECK_THROWS_AS(ExactMatrix(1, 1, 6), InvalidArgument);
}

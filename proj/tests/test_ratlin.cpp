#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fredop/ratlin.hpp"

#include <algorithm>
#include <random>

using namespace fredop;

namespace {

Rat rr(std::mt19937_64& g, int span = 3) {
    std::uniform_int_distribution<int> num(-span, span), den(1, 2);
    return Rat(BigInt(num(g)), BigInt(den(g)));
}

Mat random_mat(std::mt19937_64& g, int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = rr(g);
    return m;
}

Rat laplace_det(const Mat& m, std::vector<int> rows, std::vector<int> cols) {
    if (rows.size() == 1) return m.at(rows[0], cols[0]);
    Rat acc;
    int sign = 1;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (size_t k = 0; k < cols.size(); ++k) {
        std::vector<int> sub_cols;
        for (size_t j = 0; j < cols.size(); ++j)
            if (j != k) sub_cols.push_back(cols[j]);
        Rat term = m.at(rows[0], cols[k]) * laplace_det(m, sub_rows, sub_cols);
        acc += sign > 0 ? term : -term;
        sign = -sign;
    }
    return acc;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (int(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// rank oracle: the largest k with a nonvanishing k x k minor
int minor_rank(const Mat& m) {
    for (int k = std::min(m.rows(), m.cols()); k >= 1; --k) {
        std::vector<std::vector<int>> rsets, csets;
        std::vector<int> cur;
        subsets(m.rows(), k, 0, cur, rsets);
        subsets(m.cols(), k, 0, cur, csets);
        for (const auto& rs : rsets)
            for (const auto& cs : csets)
                if (!laplace_det(m, rs, cs).is_zero()) return k;
    }
    return 0;
}

std::vector<Rat> mat_col(const Mat& m, int j) {
    std::vector<Rat> v(size_t(m.rows()));
    for (int i = 0; i < m.rows(); ++i) v[size_t(i)] = m.at(i, j);
    return v;
}

} // namespace

TEST_CASE("rational parsing, normalization and printing") {
    CHECK(Rat::parse("3/4").str() == "3/4");
    CHECK(Rat::parse("-6/8").str() == "-3/4");
    CHECK(Rat::parse("6/-8").str() == "-3/4");
    CHECK(Rat::parse("7").str() == "7");
    CHECK(Rat::parse("0/5") == Rat(0));
    CHECK(Rat::parse("-0") == Rat(0));
    CHECK_THROWS_AS(Rat::parse("1/0"), InputError);
    CHECK_THROWS_AS(Rat::parse("abc"), InputError);
    CHECK_THROWS_AS(Rat::parse("1/2/3"), InputError);
    CHECK_THROWS_AS(Rat::parse(""), InputError);
}

TEST_CASE("rational arithmetic") {
    Rat half(BigInt(1), BigInt(2)), third(BigInt(1), BigInt(3));
    CHECK((half + third).str() == "5/6");
    CHECK((half - third).str() == "1/6");
    CHECK((half * third).str() == "1/6");
    CHECK((half / third).str() == "3/2");
    CHECK(half.inv().str() == "2");
    CHECK((-half).str() == "-1/2");
    CHECK(half < Rat(1));
    CHECK(third < half);
    CHECK(Rat(-2) < Rat(BigInt(-1), BigInt(2)));
    CHECK_THROWS_AS(Rat(1) / Rat(0), PreconditionError);
    CHECK_THROWS_AS(Rat(0).inv(), PreconditionError);
}

TEST_CASE("rank agrees with the minor-expansion oracle") {
    std::mt19937_64 g(12021);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<int> dim(1, 5);
        Mat m = random_mat(g, dim(g), dim(g));
        CAPTURE(m.str());
        CHECK(rank(m) == minor_rank(m));
    }
}

TEST_CASE("rank of the transpose") {
    std::mt19937_64 g(4242);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> dim(1, 6);
        Mat m = random_mat(g, dim(g), dim(g));
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("reduced row echelon form is idempotent and rank-consistent") {
    std::mt19937_64 g(77);
    for (int trial = 0; trial < 30; ++trial) {
        Mat m = random_mat(g, 4, 5);
        RrefResult r = rref(m);
        RrefResult r2 = rref(r.m);
        CHECK(r.m == r2.m);
        CHECK(r.rank == r2.rank);
        CHECK(int(r.pivot_cols.size()) == r.rank);
        CHECK(std::is_sorted(r.pivot_cols.begin(), r.pivot_cols.end()));
    }
}

TEST_CASE("pinned rank-one example") {
    Mat m(2, 2);
    m.at(0, 0) = Rat(1);
    m.at(0, 1) = Rat(2);
    m.at(1, 0) = Rat(2);
    m.at(1, 1) = Rat(4);
    CHECK(rank(m) == 1);
    Subspace ker = kernel_basis(m);
    CHECK(ker.dim() == 1);
    CHECK(ker.contains_vector({Rat(-2), Rat(1)}));
    CHECK_FALSE(ker.contains_vector({Rat(1), Rat(1)}));
}

TEST_CASE("rank-nullity and image dimension") {
    std::mt19937_64 g(99);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> dim(1, 6);
        int rows = dim(g), cols = dim(g);
        Mat m = random_mat(g, rows, cols);
        Subspace ker = kernel_basis(m);
        Subspace im = image_basis(m);
        CHECK(ker.dim() + im.dim() == cols);
        CHECK(im.dim() == rank(m));
        for (int j = 0; j < ker.dim(); ++j) {
            std::vector<Rat> v = m.apply(mat_col(ker.canon(), j));
            bool all_zero = true;
            for (const Rat& x : v) all_zero = all_zero && x.is_zero();
            CHECK(all_zero);
        }
        for (int j = 0; j < cols; ++j) CHECK(im.contains_vector(m.apply(mat_col(Mat::identity(cols), j))));
    }
}

TEST_CASE("subspace canonical form is generator-independent") {
    std::mt19937_64 g(555);
    for (int trial = 0; trial < 30; ++trial) {
        Mat m = random_mat(g, 5, 3);
        // recombine: swap columns, add one column to another, scale by -2
        Mat n(5, 3);
        for (int i = 0; i < 5; ++i) {
            n.at(i, 0) = m.at(i, 1);
            n.at(i, 1) = m.at(i, 0) + m.at(i, 2);
            n.at(i, 2) = m.at(i, 2) * Rat(-2);
        }
        CHECK(Subspace::span(m) == Subspace::span(n));
    }
    CHECK(Subspace::zero(4).dim() == 0);
    CHECK(Subspace::full(4).dim() == 4);
    CHECK(Subspace::full(4).contains(Subspace::zero(4)));
}

TEST_CASE("sum and intersection satisfy the dimension formula") {
    std::mt19937_64 g(31337);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<int> dim(1, 4);
        Mat a = random_mat(g, 5, dim(g));
        Mat b = random_mat(g, 5, dim(g));
        Subspace u = Subspace::span(a), v = Subspace::span(b);
        Subspace s = subspace_sum(u, v);
        Subspace i = subspace_intersect(u, v);
        CHECK(s.dim() + i.dim() == u.dim() + v.dim());
        CHECK(s.contains(u));
        CHECK(s.contains(v));
        CHECK(u.contains(i));
        CHECK(v.contains(i));
        CHECK(quotient_dim(s, u) == s.dim() - u.dim());
    }
}

TEST_CASE("quotient_dim rejects non-nested arguments") {
    Mat a(3, 1), b(3, 1);
    a.at(0, 0) = Rat(1);
    b.at(1, 0) = Rat(1);
    CHECK_THROWS_AS(quotient_dim(Subspace::span(a), Subspace::span(b)), PreconditionError);
}

TEST_CASE("linear solve") {
    std::mt19937_64 g(2718);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<int> dim(1, 5);
        int rows = dim(g), cols = dim(g);
        Mat a = random_mat(g, rows, cols);
        std::vector<Rat> x0(static_cast<size_t>(cols));
        for (Rat& v : x0) v = rr(g);
        std::vector<Rat> b = a.apply(x0);
        auto x = solve(a, b);
        REQUIRE(x.has_value());
        CHECK(a.apply(*x) == b);
    }
    Mat a(2, 2);
    a.at(0, 0) = Rat(1);
    CHECK_FALSE(solve(a, {Rat(0), Rat(1)}).has_value());
}

TEST_CASE("matrix inverse") {
    std::mt19937_64 g(161803);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> dim(1, 5);
        int d = dim(g);
        Mat l = Mat::identity(d), u = Mat::identity(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < i; ++j) {
                l.at(i, j) = rr(g);
                u.at(j, i) = rr(g);
            }
        Mat m = l * u;
        auto inv = inverse(m);
        REQUIRE(inv.has_value());
        CHECK(m * *inv == Mat::identity(d));
        CHECK(*inv * m == Mat::identity(d));
    }
    Mat s(2, 2);
    s.at(0, 0) = Rat(1);
    s.at(0, 1) = Rat(2);
    s.at(1, 0) = Rat(2);
    s.at(1, 1) = Rat(4);
    CHECK_FALSE(inverse(s).has_value());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fredop/opmodel.hpp"

#include <random>

using namespace fredop;

namespace {

Rat rr(std::mt19937_64& g, int span = 2) {
    std::uniform_int_distribution<int> num(-span, span), den(1, 2);
    return Rat(BigInt(num(g)), BigInt(den(g)));
}

Mat random_mat(std::mt19937_64& g, int rows, int cols, int span = 2) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = rr(g, span);
    return m;
}

Operator random_band(std::mt19937_64& g, int max_shift = 2, int max_w = 4) {
    std::uniform_int_distribution<int> sh(0, max_shift), w(0, max_w), coin(0, 1);
    Rat lead;
    while (lead.is_zero()) lead = rr(g);
    int s = sh(g);
    int fwd = coin(g) ? s : 0;
    int bwd = fwd ? 0 : s;
    int wd = w(g);
    return Operator::shift_band(lead, fwd, bwd, random_mat(g, wd, wd));
}

// band action computed directly from the definition, coordinate by coordinate
FinVec naive_band_apply(const ShiftBand& s, const FinVec& x) {
    int n = x.support_bound() + s.fwd + s.window.rows() + 1;
    std::vector<Rat> y(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Rat acc;
        // lead * S+^f S-^b: y_i = lead * x_{i - f + b} when i >= f
        if (i >= s.fwd) {
            int src = i - s.fwd + s.bwd;
            acc += s.lead * x.at(src);
        }
        if (i < s.window.rows())
            for (int j = 0; j < s.window.cols(); ++j) acc += s.window.at(i, j) * x.at(j);
        y[size_t(i)] = acc;
    }
    return FinVec(std::move(y));
}

long long beta_direct(const Operator& t) {
    // images of e_j for j >= J0 = max(W, bwd) are pure monomial hits filling
    // all coordinates >= H = J0 + fwd - bwd; the cokernel is Q^H modulo the
    // projected images of e_0..e_{J0-1}
    const ShiftBand& s = t.as_band();
    int j0 = std::max(s.window.rows(), s.bwd);
    int h = j0 + s.fwd - s.bwd;
    if (h <= 0) return 0;
    Mat proj(h, j0);
    for (int j = 0; j < j0; ++j) {
        FinVec img = apply(t, FinVec::unit(j));
        for (int i = 0; i < h; ++i) proj.at(i, j) = img.at(i);
    }
    return h - rank(proj);
}

} // namespace

TEST_CASE("finite vectors") {
    FinVec e2 = FinVec::unit(2);
    CHECK(e2.support_bound() == 3);
    CHECK(e2.at(2) == Rat(1));
    CHECK(e2.at(7) == Rat(0));
    CHECK((e2 - e2).is_zero());
    FinVec z(std::vector<Rat>{Rat(0), Rat(0)});
    CHECK(z.is_zero());
    CHECK(z.support_bound() == 0);
}

TEST_CASE("band normal form") {
    // S+ S- = I - P0 written with both exponents positive
    Operator t = Operator::shift_band(Rat(1), 1, 1, Mat(0, 0));
    REQUIRE(t.is_band());
    CHECK(t.as_band().fwd == 0);
    CHECK(t.as_band().bwd == 0);
    CHECK(t.as_band().window.rows() == 1);
    CHECK(t.as_band().window.at(0, 0) == Rat(-1));

    // zero lead collapses the monomial entirely
    Operator w = Operator::shift_band(Rat(0), 2, 0, Mat(0, 0));
    CHECK(w.as_band().fwd == 0);
    CHECK(w.as_band().bwd == 0);
    CHECK(is_finite_rank(w));

    // window padding is trimmed
    Mat pad(3, 3);
    pad.at(0, 0) = Rat(5);
    Operator p = Operator::window_only(pad);
    CHECK(p.as_band().window.rows() == 1);
}

TEST_CASE("shift identities") {
    Operator splus = Operator::forward_shift(1);
    Operator sminus = Operator::backward_shift(1);
    Operator id = identity_like(splus);

    CHECK(compose(sminus, splus) == id); // S- after S+
    Mat p0(1, 1);
    p0.at(0, 0) = Rat(-1);
    CHECK(compose(splus, sminus) == op_add(id, Operator::window_only(p0))); // I - P0

    CHECK(alpha(splus) == ExtNat::finite(0));
    CHECK(beta(splus) == ExtNat::finite(1));
    CHECK(alpha(sminus) == ExtNat::finite(1));
    CHECK(beta(sminus) == ExtNat::finite(0));
    CHECK(index_of(splus) == ExtInt::finite(-1));
    CHECK(index_of(sminus) == ExtInt::finite(1));
}

TEST_CASE("band application matches the coordinate definition") {
    std::mt19937_64 g(811);
    for (int trial = 0; trial < 40; ++trial) {
        Operator t = random_band(g);
        std::uniform_int_distribution<int> len(0, 6);
        std::vector<Rat> coords(size_t(len(g)));
        for (Rat& c : coords) c = rr(g);
        FinVec x(std::move(coords));
        CHECK(apply(t, x) == naive_band_apply(t.as_band(), x));
    }
}

TEST_CASE("application is additive across op_add") {
    std::mt19937_64 g(812);
    for (int trial = 0; trial < 25; ++trial) {
        Operator t = random_band(g);
        std::uniform_int_distribution<int> w(1, 4);
        int wd = w(g);
        Operator f = Operator::window_only(random_mat(g, wd, wd));
        Operator sum = op_add(t, f);
        for (int j = 0; j < 6; ++j) {
            FinVec e = FinVec::unit(j);
            CHECK(apply(sum, e) == apply(t, e) + apply(f, e));
        }
    }
}

TEST_CASE("defect matches the direct cokernel computation") {
    std::mt19937_64 g(813);
    for (int trial = 0; trial < 50; ++trial) {
        Operator t = random_band(g);
        ExtNat b = beta(t);
        REQUIRE_FALSE(b.is_infinite());
        CHECK(b.value() == beta_direct(t));
    }
}

TEST_CASE("transpose swaps nullity and defect") {
    std::mt19937_64 g(814);
    for (int trial = 0; trial < 30; ++trial) {
        Operator t = random_band(g);
        Operator tt = transpose(t);
        CHECK(transpose(tt) == t);
        CHECK(alpha(t) == beta(tt));
        CHECK(beta(t) == alpha(tt));
    }
    Operator m = Operator::matrix(random_mat(g, 4, 4));
    CHECK(alpha(m) == beta(transpose(m)));
    CHECK(transpose(transpose(m)) == m);
}

TEST_CASE("index is additive under composition") {
    std::mt19937_64 g(815);
    for (int trial = 0; trial < 30; ++trial) {
        Operator s = random_band(g);
        Operator t = random_band(g);
        ExtInt want = index_of(s) + index_of(t);
        CHECK(index_of(compose(s, t)) == want);
    }
}

TEST_CASE("band index equals the monomial imbalance") {
    std::mt19937_64 g(816);
    for (int trial = 0; trial < 30; ++trial) {
        Operator t = random_band(g, 3, 4);
        const ShiftBand& sb = t.as_band();
        CHECK(index_of(t) == ExtInt::finite(sb.bwd - sb.fwd));
    }
}

TEST_CASE("kernel vectors are genuine kernel elements") {
    Operator s2 = Operator::backward_shift(2);
    std::vector<FinVec> kv = kernel_vectors(s2);
    CHECK(kv.size() == 2);
    for (const FinVec& v : kv) CHECK(apply(s2, v).is_zero());

    std::mt19937_64 g(817);
    for (int trial = 0; trial < 20; ++trial) {
        Operator t = random_band(g);
        std::vector<FinVec> vs = kernel_vectors(t);
        CHECK(ExtNat::finite(static_cast<long long>(vs.size())) == alpha(t));
        for (const FinVec& v : vs) {
            CHECK_FALSE(v.is_zero());
            CHECK(apply(t, v).is_zero());
        }
    }
}

TEST_CASE("omega shifts realize the infinite indices") {
    Operator of = Operator::omega(true);
    Operator ob = Operator::omega(false);
    CHECK(alpha(of) == ExtNat::finite(0));
    CHECK(beta(of).is_infinite());
    CHECK(index_of(of) == ExtInt::minus_inf());
    CHECK(alpha(ob).is_infinite());
    CHECK(beta(ob) == ExtNat::finite(0));
    CHECK(index_of(ob) == ExtInt::plus_inf());
    CHECK(is_upper_sf(of).is_yes());
    CHECK(is_lower_sf(of).is_no());
    CHECK(is_fredholm(of).is_no());

    CHECK(compose(of, of) == Operator::omega(true, 2));
    CHECK_THROWS_AS(compose(of, ob), PreconditionError);
    CHECK_THROWS_AS(scaled(of, Rat(2)), PreconditionError);
}

TEST_CASE("direct sums aggregate the invariants") {
    Operator t = Operator::direct_sum({Operator::forward_shift(1), Operator::backward_shift(2)});
    CHECK(alpha(t) == ExtNat::finite(2));
    CHECK(beta(t) == ExtNat::finite(1));
    CHECK(index_of(t) == ExtInt::finite(1));

    Operator with_omega = Operator::direct_sum({Operator::omega(true), Operator::forward_shift(1)});
    CHECK(index_of(with_omega) == ExtInt::minus_inf());

    Operator mixed = Operator::direct_sum({Operator::omega(true), Operator::omega(false)});
    CHECK(is_semi_fredholm(mixed).is_no());
    CHECK_THROWS_AS(index_of(mixed), PreconditionError);

    // flattening and singleton collapse
    Operator nested = Operator::direct_sum({t, Operator::forward_shift(1)});
    CHECK(nested.as_sum().parts.size() == 3);
    CHECK(Operator::direct_sum({Operator::forward_shift(1)}) == Operator::forward_shift(1));
}

TEST_CASE("composition rejects mixed variants") {
    Operator m = Operator::matrix(Mat::identity(2));
    CHECK_THROWS_AS(compose(m, Operator::forward_shift(1)), PreconditionError);
    CHECK_THROWS_AS(compose(Operator::omega(true), Operator::forward_shift(1)), PreconditionError);
    Operator s1 = Operator::direct_sum({m, Operator::forward_shift(1)});
    Operator s2 = Operator::direct_sum({m, Operator::matrix(Mat::identity(3))});
    CHECK_THROWS_AS(compose(s1, s2), PreconditionError);
}

TEST_CASE("layout signatures track monomials, not windows") {
    std::mt19937_64 g(818);
    Operator a = Operator::shift_band(Rat(1), 1, 0, random_mat(g, 2, 2));
    Operator b = Operator::shift_band(Rat(1), 1, 0, random_mat(g, 4, 4));
    Operator c = Operator::shift_band(Rat(1), 0, 1, Mat(0, 0));
    Operator d = Operator::shift_band(Rat(2), 1, 0, Mat(0, 0));
    CHECK(layout_signature(a) == layout_signature(b));
    CHECK(layout_signature(a) != layout_signature(c));
    CHECK(layout_signature(a) != layout_signature(d)); // lead is part of the layout

    CHECK(finite_rank_compatible(a, Operator::window_only(random_mat(g, 3, 3))));
    CHECK_FALSE(finite_rank_compatible(a, c));
    CHECK(finite_rank_compatible(Operator::matrix(Mat::identity(2)),
                                 Operator::matrix(random_mat(g, 2, 2))));
    CHECK_FALSE(finite_rank_compatible(Operator::matrix(Mat::identity(2)),
                                       Operator::matrix(random_mat(g, 3, 3))));
}

TEST_CASE("range closedness is structural") {
    CHECK(range_closed(Operator::forward_shift(1)));
    CHECK(range_closed(Operator::omega(false)));
    CHECK(range_closed(Operator::direct_sum({Operator::forward_shift(1), Operator::omega(true)})));
    CHECK_FALSE(range_closed_reason(Operator::matrix(Mat::identity(1))).empty());
}

TEST_CASE("quasi inverse inverts up to finite rank") {
    std::mt19937_64 g(819);
    for (int trial = 0; trial < 25; ++trial) {
        Operator t = random_band(g);
        QuasiInverse qi = quasi_inverse(t);
        CHECK(is_finite_rank(qi.k));
        CHECK(compose(t, qi.u) == op_add(identity_like(t), qi.k));
        // the projection fixes kernel vectors and is annihilated by t
        for (const FinVec& v : kernel_vectors(t)) CHECK(apply(qi.p_kernel, v) == v);
        for (int j = 0; j < 6; ++j)
            CHECK(apply(t, apply(qi.p_kernel, FinVec::unit(j))).is_zero());
    }

    Operator m = Operator::matrix(random_mat(g, 4, 4));
    QuasiInverse qi = quasi_inverse(m);
    CHECK(compose(m, qi.u) == op_add(identity_like(m), qi.k));
}

TEST_CASE("weyl decomposition on pinned examples") {
    // I - P0: invertible part is the identity, finite-rank part is -P0
    Mat p0(1, 1);
    p0.at(0, 0) = Rat(-1);
    Operator t = op_add(identity_like(Operator::forward_shift(1)), Operator::window_only(p0));
    WeylParts w = weyl_decompose(t);
    CHECK(op_add(w.v, w.f) == t);
    CHECK(alpha(w.v) == ExtNat::finite(0));
    CHECK(beta(w.v) == ExtNat::finite(0));
    CHECK(is_finite_rank(w.f));

    Mat j2(2, 2);
    j2.at(0, 1) = Rat(1);
    Operator tm = Operator::matrix(j2);
    WeylParts wm = weyl_decompose(tm);
    CHECK(op_add(wm.v, wm.f) == tm);
    CHECK(alpha(wm.v) == ExtNat::finite(0));
    CHECK(rank(wm.f.as_matrix().m) == 1); // rank equals the nullity of t

    CHECK_THROWS_AS(weyl_decompose(Operator::forward_shift(1)), PreconditionError);
}

TEST_CASE("sup norm") {
    Mat m(2, 2);
    m.at(0, 0) = Rat(1);
    m.at(0, 1) = Rat(-2);
    m.at(1, 1) = Rat(BigInt(1), BigInt(2));
    CHECK(matrix_sup_norm(m) == Rat(3));
}

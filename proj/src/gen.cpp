#include "fredop/gen.hpp"

#include <algorithm>
#include <stdexcept>

namespace fredop {

namespace {

void internal_check(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("internal invariant violated: " + what);
}

} // namespace

long long Gen::pick(long long lo, long long hi) {
    if (lo > hi) throw PreconditionError("pick: empty range");
    return std::uniform_int_distribution<long long>(lo, hi)(rng_);
}

bool Gen::chance(int num, int den) { return pick(1, den) <= num; }

Rat Gen::rat(int max_abs_num, int max_den) {
    return Rat(BigInt(pick(-max_abs_num, max_abs_num)), BigInt(pick(1, max_den)));
}

Rat Gen::nonzero_rat(int max_abs_num, int max_den) {
    for (;;) {
        Rat r = rat(max_abs_num, max_den);
        if (!r.is_zero()) return r;
    }
}

Mat Gen::mat(int rows, int cols, int max_abs_num, int max_den) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = rat(max_abs_num, max_den);
    return m;
}

Mat Gen::sparse_window(int w) {
    Mat m(w, w);
    for (int i = 0; i < w; ++i)
        for (int j = 0; j < w; ++j)
            if (chance(1, 2)) m.at(i, j) = rat(2, 2);
    return m;
}

Mat Gen::invertible(int d) {
    Mat l = Mat::identity(d);
    Mat u = Mat::identity(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) {
            if (chance(1, 2)) l.at(i, j) = Rat(pick(-2, 2));
            if (chance(1, 2)) u.at(j, i) = Rat(pick(-2, 2));
        }
    return l * u;
}

Operator Gen::matrix_op(int min_d, int max_d) {
    int d = int(pick(min_d, max_d));
    return Operator::matrix(mat(d, d));
}

Operator Gen::band_op(int max_shift, int max_w) {
    Rat lead = nonzero_rat(2, 2);
    int shift = int(pick(0, max_shift));
    int fwd = 0, bwd = 0;
    (chance(1, 2) ? fwd : bwd) = shift;
    int w = int(pick(0, max_w));
    return Operator::shift_band(lead, fwd, bwd, sparse_window(w));
}

Operator Gen::window_op(int max_w) {
    int w = int(pick(1, max_w));
    Mat m = sparse_window(w);
    if (m.is_zero()) m.at(0, 0) = Rat(1);
    return Operator::window_only(m);
}

Operator Gen::shifted_band_op(int max_total, int max_w) {
    int total = int(pick(0, max_total));
    int a = int(pick(0, total));
    int b = total - a;
    int w = int(pick(0, max_w));
    return Operator::shift_band(nonzero_rat(2, 2), a, b, sparse_window(w));
}

Operator Gen::semi_fredholm_op() {
    long long roll = pick(0, 9);
    if (roll < 3) return matrix_op(1, 4);
    if (roll < 8) return band_op(2, 3);
    std::vector<Operator> parts;
    parts.push_back(band_op(2, 2));
    parts.push_back(chance(1, 2) ? matrix_op(1, 3) : band_op(1, 2));
    return Operator::direct_sum(std::move(parts));
}

Operator Gen::finite_rank_like(const Operator& t) {
    if (t.is_matrix()) {
        int d = t.as_matrix().m.rows();
        return Operator::matrix(sparse_window(d));
    }
    if (t.is_band()) {
        int w = int(pick(1, std::max(1, t.as_band().window.rows() + 2)));
        return Operator::window_only(sparse_window(w));
    }
    if (t.is_omega()) return Operator::window_only(Mat(0, 0)); // only zero stays in the lane
    std::vector<Operator> parts;
    for (const Operator& p : t.as_sum().parts) parts.push_back(finite_rank_like(p));
    return Operator::direct_sum(std::move(parts));
}

Operator Gen::vary(const Operator& t) { return op_add(t, finite_rank_like(t)); }

Poly Gen::poly(int min_deg, int max_deg) {
    int deg = int(pick(min_deg, max_deg));
    std::vector<Rat> c(size_t(deg) + 1);
    for (int i = 0; i < deg; ++i) c[i] = rat(2, 2);
    c[deg] = nonzero_rat(2, 2);
    return Poly(std::move(c));
}

std::pair<Poly, Poly> Gen::coprime_pair(int max_deg) {
    for (int tries = 0; tries < 32; ++tries) {
        Poly p = poly(1, max_deg);
        Poly q = poly(1, max_deg);
        if (poly_gcd(p, q).degree() == 0) return {p, q};
    }
    Rat a = rat(3, 1);
    return {Poly({-a, Rat(1)}), Poly({-(a + Rat(1)), Rat(1)})};
}

RatSpectrumMatrix Gen::spectrum_matrix(int min_d, int max_d) {
    int d = int(pick(min_d, max_d));
    int distinct = int(pick(1, std::min<long long>(3, d)));
    std::vector<Rat> palette = {Rat(0),          Rat(1),  Rat(-1),         Rat(2),
                                Rat(-2),         Rat(3),  Rat(BigInt(1), BigInt(2)),
                                Rat(BigInt(-1), BigInt(2)), Rat(BigInt(3), BigInt(2))};
    std::shuffle(palette.begin(), palette.end(), rng_);
    std::vector<std::pair<Rat, int>> spec;
    for (int i = 0; i < distinct; ++i) spec.emplace_back(palette[size_t(i)], 1);
    for (int extra = d - distinct; extra > 0; --extra) ++spec[size_t(pick(0, distinct - 1))].second;

    Mat diag(d, d);
    int row = 0;
    for (const auto& [v, mult] : spec) {
        for (int i = 0; i < mult; ++i) {
            diag.at(row, row) = v;
            if (i + 1 < mult && chance(1, 2)) diag.at(row, row + 1) = Rat(1);
            ++row;
        }
    }
    Mat p = invertible(d);
    std::optional<Mat> pinv = inverse(p);
    internal_check(pinv.has_value(), "unit triangular product is invertible");
    RatSpectrumMatrix out{p * diag * *pinv, std::move(spec)};
    validate_spectrum(out);
    return out;
}

ParamSpace Gen::space(int max_vertices, int max_components) {
    int n = int(pick(2, max_vertices));
    int comps = int(pick(1, std::min<long long>(max_components, n)));
    std::vector<int> sizes(size_t(comps), 1);
    for (int extra = n - comps; extra > 0; --extra) ++sizes[size_t(pick(0, comps - 1))];

    ParamSpace p;
    int label = 0;
    for (int ci = 0; ci < comps; ++ci) {
        std::vector<std::string> members;
        for (int j = 0; j < sizes[size_t(ci)]; ++j) members.push_back("p" + std::to_string(label++));
        for (size_t j = 1; j < members.size(); ++j)
            p.edges.emplace_back(members[size_t(pick(0, static_cast<long long>(j) - 1))], members[j]);
        for (size_t j = 2; j < members.size(); j += 3)
            if (chance(1, 2)) p.edges.emplace_back(members[j - 2], members[j]);
        p.vertices.insert(p.vertices.end(), members.begin(), members.end());
    }
    validate_space(p);
    return p;
}

OpFamily Gen::family(const ParamSpace& p, const std::function<Operator()>& shape) {
    Components c = components(p);
    std::map<std::string, Operator> shapes;
    for (const std::string& r : c.reps()) shapes.emplace(r, shape());
    OpFamily f{p, {}};
    for (const std::string& v : p.vertices) f.ops.emplace(v, vary(shapes.at(c.rep.at(v))));
    check_admissible(f);
    return f;
}

OpFamily Gen::band_family(int max_vertices, int max_components) {
    ParamSpace p = space(max_vertices, max_components);
    return family(p, [&] { return band_op(2, 3); });
}

FiniteRankFamily Gen::finite_rank_for(const OpFamily& f) {
    FiniteRankFamily k{f.space, {}};
    for (const auto& [v, op] : f.ops) k.ops.emplace(v, finite_rank_like(op));
    check_finite_rank(k);
    return k;
}

Homotopy Gen::homotopy_for(const OpFamily& f, int steps) {
    if (steps < 1) throw PreconditionError("homotopy_for: need at least one step");
    FiniteRankFamily e = finite_rank_for(f);
    Homotopy h{f.space, {}};
    for (int i = 0; i < steps; ++i) {
        Rat w(BigInt(i), BigInt(std::max(1, steps - 1)));
        FiniteRankFamily ei{e.space, {}};
        for (const auto& [v, op] : e.ops) ei.ops.emplace(v, scaled(op, w));
        h.steps.push_back(perturb(f, ei).ops);
    }
    return h;
}

} // namespace fredop

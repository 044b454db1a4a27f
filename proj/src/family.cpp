#include "fredop/family.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace fredop {

namespace {

std::string find_root(std::map<std::string, std::string>& parent, const std::string& v) {
    std::string r = v;
    while (parent.at(r) != r) r = parent.at(r);
    std::string w = v;
    while (parent.at(w) != w) {
        std::string next = parent.at(w);
        parent[w] = r;
        w = next;
    }
    return r;
}

void check_same_space(const ParamSpace& a, const ParamSpace& b, const char* what) {
    if (a.vertices != b.vertices || a.edges != b.edges)
        throw PreconditionError(std::string(what) + " requires families over the same parameter space");
}

void check_ops_cover(const ParamSpace& p, const std::map<std::string, Operator>& ops) {
    std::set<std::string> vs(p.vertices.begin(), p.vertices.end());
    for (const auto& [v, op] : ops) {
        (void)op;
        if (!vs.count(v)) throw AdmissibilityError("operator assigned to unknown vertex '" + v + "'");
    }
    for (const std::string& v : p.vertices)
        if (!ops.count(v)) throw AdmissibilityError("vertex '" + v + "' has no operator");
}

Rat small_jitter_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-2, 2);
    std::uniform_int_distribution<int> den(1, 4);
    return Rat(num(rng), den(rng));
}

Operator jitter_like(const Operator& t, std::mt19937_64& rng) {
    if (t.is_matrix()) {
        int d = t.as_matrix().m.rows();
        Mat m(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m.at(i, j) = small_jitter_rat(rng);
        return Operator::matrix(m);
    }
    if (t.is_band()) {
        int w = t.as_band().window.rows() + 1;
        Mat m(w, w);
        for (int i = 0; i < w; ++i)
            for (int j = 0; j < w; ++j) m.at(i, j) = small_jitter_rat(rng);
        return Operator::window_only(m);
    }
    if (t.is_omega()) return Operator::window_only(Mat(0, 0)); // no finite-rank room on an omega lane
    std::vector<Operator> parts;
    for (const Operator& p : t.as_sum().parts) parts.push_back(jitter_like(p, rng));
    return Operator::direct_sum(std::move(parts));
}

} // namespace

void validate_space(const ParamSpace& p) {
    if (p.vertices.empty()) throw InputError("parameter space needs at least one vertex");
    std::set<std::string> seen;
    for (const std::string& v : p.vertices) {
        if (v.empty()) throw InputError("vertex labels must be nonempty");
        if (!seen.insert(v).second) throw InputError("duplicate vertex label '" + v + "'");
    }
    for (size_t i = 0; i < p.edges.size(); ++i) {
        const auto& [x, y] = p.edges[i];
        if (!seen.count(x) || !seen.count(y))
            throw InputError("edge " + std::to_string(i) + " references unknown vertex '" +
                             (seen.count(x) ? y : x) + "'");
    }
}

std::vector<std::string> Components::reps() const {
    std::set<std::string> s;
    for (const auto& [v, r] : rep) {
        (void)v;
        s.insert(r);
    }
    return {s.begin(), s.end()};
}

Components components(const ParamSpace& p) {
    validate_space(p);
    std::map<std::string, std::string> parent;
    for (const std::string& v : p.vertices) parent[v] = v;
    for (const auto& [x, y] : p.edges) {
        std::string rx = find_root(parent, x), ry = find_root(parent, y);
        if (rx != ry) parent[rx] = ry;
    }
    std::map<std::string, std::string> smallest;
    for (const std::string& v : p.vertices) {
        std::string r = find_root(parent, v);
        auto it = smallest.find(r);
        if (it == smallest.end() || v < it->second) smallest[r] = v;
    }
    Components c;
    for (const std::string& v : p.vertices) c.rep[v] = smallest.at(find_root(parent, v));
    c.count = static_cast<int>(smallest.size());
    return c;
}

void check_admissible(const OpFamily& f) {
    validate_space(f.space);
    check_ops_cover(f.space, f.ops);
    for (size_t i = 0; i < f.space.edges.size(); ++i) {
        const auto& [x, y] = f.space.edges[i];
        std::string sx = layout_signature(f.ops.at(x));
        std::string sy = layout_signature(f.ops.at(y));
        if (sx != sy)
            throw AdmissibilityError("edge " + std::to_string(i) + " (" + x + ", " + y +
                                     "): layout mismatch: " + sx + " vs " + sy);
    }
}

void check_finite_rank(const FiniteRankFamily& k) {
    validate_space(k.space);
    check_ops_cover(k.space, k.ops);
    for (const auto& [v, op] : k.ops)
        if (!is_finite_rank(op))
            throw AdmissibilityError("operator at vertex '" + v + "' is not finite rank");
}

IndexMap family_index(const OpFamily& f) {
    check_admissible(f);
    Components c = components(f.space);
    IndexMap got;
    std::map<std::string, std::string> first_vertex;
    for (const std::string& v : f.space.vertices) {
        const Operator& t = f.ops.at(v);
        if (!is_semi_fredholm(t).is_yes())
            throw PreconditionError("vertex '" + v + "' is not semi-Fredholm");
        ExtInt ix = index_of(t);
        const std::string& r = c.rep.at(v);
        auto it = got.find(r);
        if (it == got.end()) {
            got[r] = ix;
            first_vertex[r] = v;
        } else if (it->second != ix) {
            throw TheoremViolation("index not constant on component '" + r + "': vertex '" +
                                   first_vertex[r] + "' has " + it->second.str() + ", vertex '" + v +
                                   "' has " + ix.str());
        }
    }
    return got;
}

OpFamily perturb(const OpFamily& f, const FiniteRankFamily& k) {
    check_admissible(f);
    check_finite_rank(k);
    check_same_space(f.space, k.space, "perturb");
    OpFamily g{f.space, {}};
    for (const std::string& v : f.space.vertices) {
        const Operator& a = f.ops.at(v);
        const Operator& e = k.ops.at(v);
        if (!finite_rank_compatible(a, e))
            throw PreconditionError("finite-rank term at vertex '" + v + "' does not fit the layout");
        g.ops.emplace(v, op_add(a, e));
    }
    check_admissible(g);
    return g;
}

OpFamily compose_pointwise_unchecked(const OpFamily& s, const OpFamily& t) {
    check_admissible(s);
    check_admissible(t);
    check_same_space(s.space, t.space, "composition");
    OpFamily g{s.space, {}};
    for (const std::string& v : s.space.vertices) g.ops.emplace(v, compose(s.ops.at(v), t.ops.at(v)));
    check_admissible(g);
    return g;
}

OpFamily compose_families(const OpFamily& s, const OpFamily& t) {
    check_admissible(s);
    check_admissible(t);
    check_same_space(s.space, t.space, "composition");
    for (const std::string& v : s.space.vertices) {
        const Operator& a = s.ops.at(v);
        const Operator& b = t.ops.at(v);
        bool both_upper = is_upper_sf(a).is_yes() && is_upper_sf(b).is_yes();
        bool both_lower = is_lower_sf(a).is_yes() && is_lower_sf(b).is_yes();
        if (!both_upper && !both_lower)
            throw PreconditionError("mixed-type vertex '" + v +
                                    "': factors are not both upper or both lower semi-Fredholm");
    }
    return compose_pointwise_unchecked(s, t);
}

HomotopyReport homotopy_check(const Homotopy& h) {
    validate_space(h.space);
    if (h.steps.empty()) throw InputError("homotopy needs at least one step");
    HomotopyReport rep;
    rep.steps = static_cast<int>(h.steps.size());
    for (size_t i = 0; i < h.steps.size(); ++i) {
        OpFamily fi{h.space, h.steps[i]};
        try {
            check_admissible(fi);
        } catch (const AdmissibilityError& e) {
            throw AdmissibilityError("step " + std::to_string(i) + ": " + e.what());
        }
        if (i > 0) {
            for (const std::string& v : h.space.vertices) {
                std::string prev = layout_signature(h.steps[i - 1].at(v));
                std::string cur = layout_signature(h.steps[i].at(v));
                if (prev != cur)
                    throw AdmissibilityError("layout jump between steps " + std::to_string(i - 1) +
                                             " and " + std::to_string(i) + " at vertex '" + v +
                                             "': " + prev + " vs " + cur);
            }
        }
        rep.step_indices.push_back(family_index(fi));
    }
    rep.pass = true;
    for (size_t i = 1; i < rep.step_indices.size() && rep.pass; ++i) {
        if (rep.step_indices[i] != rep.step_indices[0]) {
            rep.pass = false;
            rep.detail = "index map of step " + std::to_string(i) + " differs from step 0";
        }
    }
    return rep;
}

Rat sup_norm(const OpFamily& f) {
    check_admissible(f);
    Rat best(0);
    for (const auto& [v, op] : f.ops) {
        if (!op.is_matrix()) throw PreconditionError("sup norm needs a matrix family (vertex '" + v + "')");
        Rat n = matrix_sup_norm(op.as_matrix().m);
        if (best < n) best = n;
    }
    return best;
}

ProbeReport local_constancy_probe(const OpFamily& f, int trials, unsigned long long seed) {
    if (trials < 0) throw PreconditionError("trials must be nonnegative");
    IndexMap base = family_index(f);
    std::mt19937_64 rng(seed);
    ProbeReport rep;
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        FiniteRankFamily k{f.space, {}};
        for (const auto& [v, op] : f.ops) k.ops.emplace(v, jitter_like(op, rng));
        OpFamily g = perturb(f, k);
        std::string why;
        for (const auto& [v, op] : g.ops) {
            if (!is_semi_fredholm(op).is_yes()) {
                why = "vertex '" + v + "' lost semi-Fredholmness";
                break;
            }
        }
        if (why.empty() && family_index(g) != base) why = "per-component index changed";
        if (why.empty()) ++rep.passes;
        else rep.failures.push_back("trial " + std::to_string(t) + ": " + why);
    }
    return rep;
}

} // namespace fredop

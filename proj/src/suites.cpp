#include "fredop/gen.hpp"

#include <functional>
#include <set>
#include <stdexcept>

namespace fredop {

namespace {

void internal_check(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("internal invariant violated: " + what);
}

std::string kind_name(AxiomKind k) {
    switch (k) {
        case AxiomKind::Regularity: return "regularity";
        case AxiomKind::Lower: return "lower";
        default: return "upper";
    }
}

// Equivalence axiom leg; undecided verdicts are recorded, never judged.
void axiom_equiv(SuiteReport& rep, bool& failed, const std::string& what, const Verdict& a,
                 const Verdict& b) {
    if (a.is_unknown() || b.is_unknown()) {
        rep.note_unknown(what);
        return;
    }
    if (a.state != b.state) {
        rep.fail(what, a.str(), b.str());
        failed = true;
    }
}

// One-directional axiom leg: a member forces b member.
void axiom_impl(SuiteReport& rep, bool& failed, const std::string& what, const Verdict& a,
                const Verdict& b) {
    if (a.is_unknown()) {
        rep.note_unknown(what + " (antecedent undecided)");
        return;
    }
    if (!a.is_yes()) return; // vacuous
    if (b.is_unknown()) {
        rep.note_unknown(what);
        return;
    }
    if (b.is_no()) {
        rep.fail(what, "member", "not member");
        failed = true;
    }
}

void axiom_leg(SuiteReport& rep, bool& failed, AxiomKind kind, const std::string& what,
               const Verdict& base, const Verdict& derived) {
    switch (kind) {
        case AxiomKind::Regularity: axiom_equiv(rep, failed, what, base, derived); break;
        case AxiomKind::Lower: axiom_impl(rep, failed, what, derived, base); break;
        default: axiom_impl(rep, failed, what, base, derived); break;
    }
}

using MemFn = std::function<Verdict(const Operator&)>;
using FamMemFn = std::function<Verdict(const OpFamily&)>;

SuiteReport axiom_suite_impl(const std::string& name, AxiomKind kind, int trials,
                             unsigned long long seed, const MemFn& mem_op,
                             const FamMemFn& mem_fam) {
    if (trials < 0) throw PreconditionError("axiom_suite: negative trial count");
    SuiteReport rep;
    rep.suite = name;
    rep.trials = trials;
    Gen g(seed);
    for (int i = 0; i < trials; ++i) {
        bool failed = false;
        std::string tag = "trial " + std::to_string(i);

        if (i % 8 == 7) {
            // family trial: the power axiom via the pointwise square
            OpFamily f = g.band_family(5, 2);
            Verdict vf = mem_fam(f);
            Verdict vf2 = mem_fam(compose_pointwise_unchecked(f, f));
            axiom_leg(rep, failed, kind, tag + ": family power axiom (n = 2)", vf, vf2);
            if (!failed) ++rep.passes;
            continue;
        }

        Operator t = g.semi_fredholm_op();
        Verdict vt = mem_op(t);
        for (int n : {2, 3})
            axiom_leg(rep, failed, kind, tag + ": power axiom (n = " + std::to_string(n) + ")", vt,
                      mem_op(power(t, n)));

        if (t.is_matrix()) {
            auto [p, q] = g.coprime_pair(2);
            if (kind == AxiomKind::Regularity) {
                BezoutQuadruple quad = bezout_quadruple(t, p, q);
                Verdict va = mem_op(quad.a);
                Verdict vb = mem_op(quad.b);
                Verdict vab = mem_op(compose(quad.a, quad.b));
                axiom_equiv(rep, failed, tag + ": resolution product axiom", vab,
                            verdict_and(va, vb));
            } else {
                Operator a = Operator::matrix(p.eval(t.as_matrix().m));
                Operator b = Operator::matrix(q.eval(t.as_matrix().m));
                Verdict va = mem_op(a);
                Verdict vb = mem_op(b);
                Verdict vab = mem_op(compose(a, b));
                if (kind == AxiomKind::Lower) {
                    axiom_impl(rep, failed, tag + ": commuting product, left factor", vab, va);
                    axiom_impl(rep, failed, tag + ": commuting product, right factor", vab, vb);
                } else {
                    axiom_impl(rep, failed, tag + ": commuting product", verdict_and(va, vb), vab);
                }
            }
        } else {
            // scaled-identity quadruple: (t, c e, 0, c^{-1} e) resolves the identity
            Rat c = g.nonzero_rat(2, 2);
            Operator ce = scaled(identity_like(t), c);
            Verdict vid = mem_op(ce);
            if (!vid.is_yes()) {
                rep.fail(tag + ": invertible scaled identity membership", "member", vid.str());
                failed = true;
            }
            Verdict vs = mem_op(scaled(t, c));
            axiom_leg(rep, failed, kind, tag + ": scaled product axiom", verdict_and(vt, vid), vs);
        }

        if (kind == AxiomKind::Upper) {
            // small perturbation of the identity: strictly diagonally dominant,
            // hence invertible, hence a member
            int d = int(g.pick(2, 4));
            Mat e(d, d);
            for (int r = 0; r < d; ++r)
                for (int cc = 0; cc < d; ++cc)
                    e.at(r, cc) = Rat(BigInt(g.pick(-1, 1)), BigInt(4 * d));
            internal_check(matrix_sup_norm(e) < Rat(BigInt(1), BigInt(2)),
                           "perturbation stays inside the invertibility ball");
            Verdict vn = mem_op(Operator::matrix(Mat::identity(d) + e));
            if (!vn.is_yes()) {
                rep.fail(tag + ": neighborhood of the identity", "member", vn.str());
                failed = true;
            }
        }

        if (!failed) ++rep.passes;
    }
    return rep;
}

} // namespace

SuiteReport axiom_suite(RegularityId r, AxiomKind kind, int trials, unsigned long long seed,
                        int n_max) {
    return axiom_suite_impl("axioms " + regularity_name(r) + " " + kind_name(kind), kind, trials,
                            seed, [r, n_max](const Operator& t) { return mem(t, r, n_max); },
                            [r, n_max](const OpFamily& f) { return mem_family(f, r, n_max); });
}

SuiteReport axiom_suite(SemiregId s, AxiomKind kind, int trials, unsigned long long seed,
                        long long m) {
    return axiom_suite_impl("axioms " + semireg_name(s) + " " + kind_name(kind), kind, trials,
                            seed, [s, m](const Operator& t) { return mem_semireg(t, s, m); },
                            [s, m](const OpFamily& f) { return mem_family_semireg(f, s, m); });
}

SuiteReport lemma_suite(SemiregId s, int trials, unsigned long long seed, long long m) {
    if (trials < 0) throw PreconditionError("lemma_suite: negative trial count");
    SuiteReport rep;
    rep.suite = "lemmas " + semireg_name(s);
    rep.trials = trials;
    Gen g(seed);
    for (int i = 0; i < trials; ++i) {
        bool failed = false;
        std::string tag = "trial " + std::to_string(i);
        auto expect_member = [&](const std::string& what, const Verdict& v) {
            if (!v.is_yes()) {
                rep.fail(tag + ": " + what, "member", v.str());
                failed = true;
            }
        };

        int d = int(g.pick(1, 5));
        expect_member("identity matrix", mem_semireg(Operator::matrix(Mat::identity(d)), s, m));
        Operator band_id = identity_like(Operator::forward_shift(1));
        expect_member("identity band", mem_semireg(band_id, s, m));

        expect_member("invertible matrix",
                      mem_semireg(Operator::matrix(g.invertible(int(g.pick(2, 5)))), s, m));
        expect_member("invertible scaled identity band",
                      mem_semireg(scaled(band_id, g.nonzero_rat(2, 2)), s, m));

        RatSpectrumMatrix a = g.spectrum_matrix(2, 4);
        std::set<Rat> eigs;
        for (const auto& [v, mult] : a.spectrum) eigs.insert(v);

        Poly p;
        for (;;) {
            p = g.poly(1, 2);
            bool vanishes = false;
            for (const Rat& v : eigs)
                if (p.eval(v).is_zero()) vanishes = true;
            if (!vanishes) break;
        }
        Operator ao = Operator::matrix(a.m);
        Operator bo = Operator::matrix(p.eval(a.m));
        internal_check(alpha(bo) == ExtNat::finite(0),
                       "polynomial avoiding the spectrum gives an invertible image");
        if (mem_semireg(ao, s, m).is_yes())
            expect_member("product with a commuting invertible", mem_semireg(compose(ao, bo), s, m));

        for (int probe = 0; probe < 5; ++probe) {
            Rat lambda;
            do lambda = g.rat(5, 2);
            while (eigs.count(lambda));
            Mat shifted = a.m - Mat::identity(a.m.rows()).scaled(lambda);
            expect_member("membership off the spectrum",
                          mem_semireg(Operator::matrix(shifted), s, m));
        }

        Rat mu = g.rat(3, 2);
        RatSpectrumMatrix translated;
        translated.m = a.m + Mat::identity(a.m.rows()).scaled(mu);
        for (const auto& [v, mult] : a.spectrum) translated.spectrum.emplace_back(v + mu, mult);
        std::set<Rat> base = r_spectrum_semireg(a, s, m);
        std::set<Rat> moved = r_spectrum_semireg(translated, s, m);
        std::set<Rat> expected;
        for (const Rat& v : base) expected.insert(v + mu);
        if (moved != expected) {
            rep.fail(tag + ": translation of the class spectrum", std::to_string(expected.size()) + " points",
                     std::to_string(moved.size()) + " points");
            failed = true;
        }

        if (!failed) ++rep.passes;
    }
    return rep;
}

SuiteReport finite_rank_stability(const OpFamily& f, const FiniteRankFamily& k, RegularityId r,
                                  int n_max) {
    static const std::set<int> stable = {4, 5, 9, 10, 12, 13, 14, 15};
    if (!stable.count(int(r)))
        throw PreconditionError("finite_rank_stability: membership in " + regularity_name(r) +
                                " is not preserved by finite-rank perturbations");
    SuiteReport rep;
    rep.suite = "finite-rank stability " + regularity_name(r);
    rep.trials = 1;
    Verdict v0 = mem_family(f, r, n_max);
    if (v0.is_no())
        throw PreconditionError("finite_rank_stability: the family is not a member of " +
                                regularity_name(r));
    if (v0.is_unknown()) {
        rep.note_unknown("base membership undecided at bound " + std::to_string(v0.bound));
        return rep;
    }
    Verdict v1 = mem_family(perturb(f, k), r, n_max);
    if (v1.is_yes()) ++rep.passes;
    else if (v1.is_no()) rep.fail("perturbed membership in " + regularity_name(r), "member", "not member");
    else rep.note_unknown("perturbed membership undecided at bound " + std::to_string(v1.bound));
    return rep;
}

SuiteReport factor_implications(const OpFamily& t1, const OpFamily& t2, int n_max) {
    SuiteReport rep;
    rep.suite = "factor implications";
    rep.trials = 3;
    OpFamily prod = compose_pointwise_unchecked(t1, t2);
    Verdict p9 = mem_family(prod, RegularityId::R9, n_max);
    Verdict p4 = mem_family(prod, RegularityId::R4, n_max);
    Verdict a9 = mem_family(t2, RegularityId::R9, n_max);
    Verdict a4 = mem_family(t1, RegularityId::R4, n_max);
    bool failed = false;
    auto item = [&](const std::string& what, const Verdict& pre, const Verdict& post) {
        bool item_failed = false;
        axiom_impl(rep, item_failed, what, pre, post);
        if (item_failed) failed = true;
        else if (!pre.is_unknown() && !(pre.is_yes() && post.is_unknown())) ++rep.passes;
    };
    item("product upper semi-Fredholm forces the right factor", p9, a9);
    item("product lower semi-Fredholm forces the left factor", p4, a4);
    item("product Fredholm forces left lower and right upper", verdict_and(p4, p9),
         verdict_and(a4, a9));
    (void)failed;
    return rep;
}

SuiteReport inclusion_chain_suite(const std::vector<Operator>& corpus, int n_max) {
    SuiteReport rep;
    rep.suite = "inclusion chains";
    rep.trials = int(corpus.size());
    using R = RegularityId;
    struct Link {
        std::vector<R> lhs, rhs;
    };
    static const std::vector<Link> links = {
        {{R::R1}, {R::R2}},
        {{R::R2}, {R::R3}},
        {{R::R3}, {R::R3, R::R4}},
        {{R::R3, R::R4}, {R::R5}},
        {{R::R5}, {R::R13}},
        {{R::R6}, {R::R7}},
        {{R::R7}, {R::R8}},
        {{R::R8}, {R::R8, R::R9}},
        {{R::R8, R::R9}, {R::R10}},
        {{R::R10}, {R::R13}},
        {{R::R11}, {R::R12}},
        {{R::R12}, {R::R13}},
        {{R::R13}, {R::R13, R::R14}},
        {{R::R13, R::R14}, {R::R15}},
        {{R::R15}, {R::R16}},
    };
    auto side_name = [](const std::vector<R>& ids) {
        std::string s;
        for (size_t i = 0; i < ids.size(); ++i) {
            if (i) s += "|";
            s += regularity_name(ids[i]);
        }
        return s;
    };
    for (size_t ti = 0; ti < corpus.size(); ++ti) {
        OperatorAnalysis an(corpus[ti], n_max);
        std::map<int, Verdict> memo;
        auto get = [&](R r) {
            auto it = memo.find(int(r));
            if (it == memo.end()) it = memo.emplace(int(r), mem(an, r)).first;
            return it->second;
        };
        auto side = [&](const std::vector<R>& ids) {
            Verdict v = Verdict::no();
            for (R r : ids) v = verdict_or(v, get(r));
            return v;
        };
        bool failed = false;
        for (const Link& l : links) {
            Verdict a = side(l.lhs);
            if (!a.is_yes()) continue; // inclusion only bites on members
            Verdict b = side(l.rhs);
            std::string what =
                "op " + std::to_string(ti) + ": " + side_name(l.lhs) + " inside " + side_name(l.rhs);
            if (b.is_no()) {
                rep.fail(what, "member", "not member");
                failed = true;
            } else if (b.is_unknown()) {
                rep.note_unknown(what);
            }
        }
        if (!failed) ++rep.passes;
    }
    return rep;
}

} // namespace fredop

#include "fredop/gen.hpp"
#include "fredop/json_io.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace fredop;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok) ++failures;
}

long long ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

Mat jordan(int k) {
    Mat m(k, k);
    for (int i = 0; i + 1 < k; ++i) m.at(i, i + 1) = Rat(1);
    return m;
}

// 1. nullity minus defect equals the monomial imbalance across shift products
void criterion1() {
    Gen gen(101);
    auto start = Clock::now();
    int n = 0;
    bool ok = true;
    std::string why;
    for (int a = 0; a <= 4 && ok; ++a)
        for (int b = 0; a + b <= 4 && ok; ++b)
            for (int rep = 0; rep < 15 && ok; ++rep) {
                int w = int(gen.pick(0, 6));
                Operator t = Operator::shift_band(gen.nonzero_rat(), a, b, gen.sparse_window(w));
                ExtNat al = alpha(t), be = beta(t);
                if (al.is_infinite() || be.is_infinite() ||
                    al.value() - be.value() != b - a ||
                    index_of(t) != ExtInt::finite(b - a)) {
                    ok = false;
                    why = "mismatch at fwd=" + std::to_string(a) + " bwd=" + std::to_string(b);
                }
                ++n;
            }
    long long el = ms_since(start);
    if (ok && n < 200) { ok = false; why = "only " + std::to_string(n) + " cases"; }
    if (ok && el >= 30000) { ok = false; why = "too slow"; }
    report(1, ok, ok ? std::to_string(n) + " shift products, nullity - defect = bwd - fwd (" +
                           std::to_string(el) + " ms)"
                     : why);
}

// 2. per-component index maps survive finite-rank perturbation
void criterion2() {
    Gen gen(102);
    auto start = Clock::now();
    int n = 0;
    bool ok = true;
    std::string why;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        ParamSpace p = gen.space(20, 3);
        OpFamily f = gen.family(p, [&] { return gen.band_op(2, 3); });
        IndexMap before = family_index(f);
        OpFamily g = perturb(f, gen.finite_rank_for(f));
        if (family_index(g) != before) {
            ok = false;
            why = "index moved on trial " + std::to_string(trial);
        }
        ++n;
    }
    if (ok) {
        // a lane pairing an omega shift with a band: the index is minus infinity
        // and stays there when the band lane is perturbed
        OpFamily f;
        f.space.vertices = {"a", "b", "c"};
        f.space.edges = {{"a", "b"}, {"b", "c"}};
        for (const std::string& v : f.space.vertices)
            f.ops.emplace(v, Operator::direct_sum(
                                 {Operator::omega(true),
                                  Operator::shift_band(Rat(1), 1, 0, gen.sparse_window(3))}));
        IndexMap before = family_index(f);
        if (before.at("a") != ExtInt::minus_inf()) {
            ok = false;
            why = "omega lane index expected -inf";
        } else {
            FiniteRankFamily k;
            k.space = f.space;
            for (const std::string& v : f.space.vertices)
                k.ops.emplace(v, Operator::direct_sum({Operator::window_only(Mat(0, 0)),
                                                       Operator::window_only(gen.sparse_window(2))}));
            OpFamily g = perturb(f, k);
            if (family_index(g) != before) {
                ok = false;
                why = "omega lane index moved under a band-lane perturbation";
            }
            ++n;
        }
    }
    long long el = ms_since(start);
    if (ok && el >= 60000) { ok = false; why = "too slow"; }
    report(2, ok, ok ? std::to_string(n) + " perturbed families, indices unchanged (" +
                           std::to_string(el) + " ms)"
                     : why);
}

// 3. composition adds indices; mixed variants are rejected
void criterion3() {
    Gen gen(103);
    int n = 0;
    bool ok = true;
    std::string why;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        Operator s = gen.band_op(2, 3);
        Operator t = gen.band_op(2, 3);
        if (index_of(compose(s, t)) != index_of(s) + index_of(t)) {
            ok = false;
            why = "index not additive on trial " + std::to_string(trial);
        }
        ++n;
    }
    if (ok) {
        bool threw = false;
        try {
            compose(Operator::matrix(Mat::identity(2)), Operator::forward_shift(1));
        } catch (const PreconditionError&) {
            threw = true;
        }
        if (!threw) { ok = false; why = "matrix x band composition was not rejected"; }
        threw = false;
        try {
            compose(Operator::omega(true), Operator::omega(false));
        } catch (const PreconditionError&) {
            threw = true;
        }
        if (!threw) { ok = false; why = "opposite omega composition was not rejected"; }
    }
    report(3, ok, ok ? std::to_string(n) + " compositions additive, mixed types rejected" : why);
}

// 4. homotopies with constant layout pass; a planted monomial jump is caught
void criterion4() {
    Gen gen(104);
    int n = 0;
    bool ok = true;
    std::string why;
    for (int trial = 0; trial < 20 && ok; ++trial) {
        OpFamily f = gen.band_family(8, 2);
        Homotopy h = gen.homotopy_for(f, 5 + trial % 3);
        HomotopyReport r = homotopy_check(h);
        if (!r.pass) {
            ok = false;
            why = "homotopy failed on trial " + std::to_string(trial) + ": " + r.detail;
        }
        ++n;
    }
    if (ok) {
        Homotopy jump;
        jump.space.vertices = {"a"};
        std::map<std::string, Operator> s0, s1;
        s0.emplace("a", Operator::forward_shift(1));
        s1.emplace("a", Operator::backward_shift(1));
        jump.steps.push_back(std::move(s0));
        jump.steps.push_back(std::move(s1));
        bool threw = false;
        try {
            homotopy_check(jump);
        } catch (const AdmissibilityError&) {
            threw = true;
        }
        if (!threw) { ok = false; why = "monomial jump between steps was not rejected"; }
    }
    report(4, ok, ok ? std::to_string(n) + " homotopies pass, planted jump rejected" : why);
}

// 5. chain goldens across all operator shapes
void criterion5() {
    bool ok = true;
    std::string why;
    auto expect = [&](bool cond, const std::string& what) {
        if (ok && !cond) { ok = false; why = what; }
    };

    for (int k = 1; k <= 4; ++k) {
        OperatorAnalysis an(Operator::matrix(jordan(k)));
        expect(an.ascent() == ChainResult::finite(k), "jordan ascent");
        expect(an.descent() == ChainResult::finite(k), "jordan descent");
        expect(an.uniform_descent_from() == ChainResult::finite(k), "jordan udf");
    }
    OperatorAnalysis j3(Operator::matrix(jordan(3)));
    expect(j3.k(2) == ExtNat::finite(1) && j3.k(3) == ExtNat::finite(0), "jordan gap sequence");

    OperatorAnalysis sp(Operator::forward_shift(1));
    expect(sp.ascent() == ChainResult::finite(0), "fwd ascent");
    expect(sp.descent() == ChainResult::exceeds(8), "fwd descent probe");
    expect(sp.essential_ascent() == ChainResult::finite(0), "fwd essential ascent");
    expect(sp.uniform_descent_from() == ChainResult::finite(0), "fwd udf");
    expect(sp.tud().is_yes(), "fwd tud");

    OperatorAnalysis sm(Operator::backward_shift(1), 10);
    expect(sm.ascent() == ChainResult::exceeds(10), "bwd ascent probe");
    expect(sm.descent() == ChainResult::finite(0), "bwd descent");

    Mat p0(1, 1);
    p0.at(0, 0) = Rat(1);
    OperatorAnalysis proj(Operator::window_only(p0));
    expect(proj.ascent() == ChainResult::finite(1), "window ascent");
    expect(proj.c(0).is_infinite() && proj.k(0).is_infinite(), "window infinite gaps");
    expect(proj.uniform_descent_from() == ChainResult::finite(1), "window udf");

    OperatorAnalysis of(Operator::omega(true));
    expect(of.ascent() == ChainResult::finite(0) && of.descent() == ChainResult::infinite(),
           "omega fwd chain");
    OperatorAnalysis ob(Operator::omega(false));
    expect(ob.ascent() == ChainResult::infinite() && ob.descent() == ChainResult::finite(0),
           "omega bwd chain");

    OperatorAnalysis mix(
        Operator::direct_sum({Operator::matrix(jordan(2)), Operator::forward_shift(1)}));
    expect(mix.ascent() == ChainResult::finite(2), "sum ascent");
    expect(mix.descent() == ChainResult::exceeds(8), "sum descent probe");
    expect(mix.uniform_descent_from() == ChainResult::finite(2), "sum udf");

    report(5, ok, ok ? "chain goldens hold for matrix, band, window, omega, sum" : why);
}

// 6. membership axioms for all sixteen classes over generated corpora
void criterion6() {
    auto start = Clock::now();
    bool ok = true;
    std::string why;
    long long trials = 0, unknowns = 0;
    for (RegularityId r : all_regularities()) {
        SuiteReport rep = axiom_suite(r, AxiomKind::Regularity, 200, 106);
        trials += rep.trials;
        unknowns += static_cast<long long>(rep.unknowns.size());
        if (!rep.ok()) {
            ok = false;
            why = regularity_name(r) + ": " + rep.failures[0].what + " (expected " +
                  rep.failures[0].expected + ", got " + rep.failures[0].got + ")";
            break;
        }
    }
    long long el = ms_since(start);
    if (ok && el >= 300000) { ok = false; why = "too slow"; }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "16 classes x 200 trials, zero failures, %lld/%lld comparisons undecided (%lld ms)",
                  unknowns, trials, el);
    report(6, ok, ok ? buf : why);
}

// 7. two-way spectral mapping for every class over certified matrices
void criterion7() {
    Gen gen(107);
    std::vector<Poly> polys = {Poly::parse("0,1"),    Poly::parse("-2,3"), Poly::parse("1,0,1"),
                               Poly::parse("0,-1,2"), Poly::parse("0,0,0,1")};
    bool ok = true;
    std::string why;
    int checks = 0;
    for (int i = 0; i < 30 && ok; ++i) {
        RatSpectrumMatrix t = gen.spectrum_matrix(2, 6);
        for (const Poly& p : polys) {
            for (RegularityId r : all_regularities()) {
                SmtReport rep = smt_check(t, p, r);
                ++checks;
                if (!rep.pass) {
                    ok = false;
                    why = regularity_name(r) + " with p = " + p.str() + ": " + rep.detail;
                    break;
                }
            }
            if (!ok) break;
        }
    }
    report(7, ok,
           ok ? std::to_string(checks) + " mapped spectra equal the spectra of images" : why);
}

// 8. inclusion chains hold; stable classes survive finite-rank perturbation
void criterion8() {
    Gen gen(108);
    bool ok = true;
    std::string why;

    std::vector<Operator> corpus;
    for (int i = 0; i < 36; ++i) corpus.push_back(gen.semi_fredholm_op());
    corpus.push_back(Operator::forward_shift(1));
    corpus.push_back(Operator::backward_shift(1));
    corpus.push_back(Operator::omega(true));
    corpus.push_back(Operator::omega(false));
    corpus.push_back(Operator::matrix(jordan(3)));
    SuiteReport inc = inclusion_chain_suite(corpus);
    if (!inc.ok()) {
        ok = false;
        why = "inclusion: " + inc.failures[0].what;
    }

    const RegularityId stable[] = {RegularityId::R4,  RegularityId::R5,  RegularityId::R9,
                                   RegularityId::R10, RegularityId::R12, RegularityId::R13,
                                   RegularityId::R14, RegularityId::R15};
    int pairs = 0;
    for (int i = 0; i < 104 && ok; ++i) {
        OpFamily f = gen.band_family(6, 2);
        FiniteRankFamily k = gen.finite_rank_for(f);
        SuiteReport rep = finite_rank_stability(f, k, stable[i % 8]);
        if (!rep.ok()) {
            ok = false;
            why = "stability " + regularity_name(stable[i % 8]) + ": " + rep.failures[0].what;
        }
        ++pairs;
    }
    report(8, ok,
           ok ? std::to_string(corpus.size()) + " operators through the inclusion chains, " +
                    std::to_string(pairs) + " perturbation pairs stable"
              : why);
}

// 9. factor implications and quasi-inverses
void criterion9() {
    Gen gen(109);
    bool ok = true;
    std::string why;

    auto singleton = [](const Operator& t) {
        OpFamily f;
        f.space.vertices = {"p"};
        f.ops.emplace("p", t);
        return f;
    };

    int pairs = 0;
    for (int i = 0; i < 50 && ok; ++i) {
        OpFamily a = singleton(gen.band_op(2, 3));
        OpFamily b = singleton(gen.band_op(2, 3));
        SuiteReport rep = factor_implications(a, b);
        if (!rep.ok()) {
            ok = false;
            why = "factor: " + rep.failures[0].what;
        }
        ++pairs;
    }
    if (ok) {
        SuiteReport down_up = factor_implications(singleton(Operator::backward_shift(1)),
                                                  singleton(Operator::forward_shift(1)));
        SuiteReport up_down = factor_implications(singleton(Operator::forward_shift(1)),
                                                  singleton(Operator::backward_shift(1)));
        if (!down_up.ok() || !up_down.ok()) { ok = false; why = "factor: shift goldens"; }
        pairs += 2;
    }

    int shifts = 0;
    for (int i = 0; i < 50 && ok; ++i) {
        Operator t = i % 2 ? gen.band_op(3, 4) : gen.shifted_band_op(4, 5);
        QuasiInverse qi = quasi_inverse(t);
        Operator residue = qi.k;
        if (!is_finite_rank(residue) ||
            compose(t, qi.u) != op_add(identity_like(t), residue)) {
            ok = false;
            why = "quasi-inverse residue is not a finite-rank defect";
        }
        ++shifts;
    }
    report(9, ok,
           ok ? std::to_string(pairs) + " factor pairs, " + std::to_string(shifts) +
                    " quasi-inverses with finite-rank residue"
              : why);
}

// 10. lemmas, one-way mapping, and the two-sided class intersection
void criterion10() {
    Gen gen(110);
    bool ok = true;
    std::string why;

    for (SemiregId s : all_semiregs()) {
        SuiteReport rep = lemma_suite(s, 25, 110, is_lower_semireg(s) ? 1 : 2);
        if (!rep.ok()) {
            ok = false;
            why = semireg_name(s) + " lemmas: " + rep.failures[0].what;
            break;
        }
    }

    int checks = 0;
    std::vector<Poly> polys = {Poly::parse("0,1"), Poly::parse("1,0,1"), Poly::parse("0,-1,2")};
    for (int i = 0; i < 10 && ok; ++i) {
        RatSpectrumMatrix t = gen.spectrum_matrix(2, 5);
        for (const Poly& p : polys)
            for (SemiregId s : all_semiregs()) {
                SmtReport rep = smt_oneway_check(t, p, s, 1);
                ++checks;
                if (!rep.pass) {
                    ok = false;
                    why = semireg_name(s) + " one-way with p = " + p.str() + ": " + rep.detail;
                    break;
                }
            }
    }

    if (ok) {
        std::vector<Operator> corpus = {Operator::forward_shift(1), Operator::backward_shift(2),
                                        Operator::matrix(jordan(2)),
                                        Operator::matrix(Mat::identity(3)), Operator::omega(true),
                                        Operator::omega(false)};
        for (int i = 0; i < 14; ++i) corpus.push_back(gen.semi_fredholm_op());
        for (const Operator& t : corpus) {
            Verdict both =
                verdict_and(mem_semireg(t, SemiregId::USR1), mem_semireg(t, SemiregId::USR2));
            if (!(mem_semireg(t, SemiregId::USR4) == both)) {
                ok = false;
                why = "USR4 differs from USR1 and USR2 on " + t.str();
                break;
            }
        }
    }
    report(10, ok,
           ok ? "lemma suites clean, " + std::to_string(checks) +
                    " one-way inclusions, USR4 = USR1 meet USR2"
              : why);
}

// 11. invertible-plus-finite-rank splitting of balanced bands
void criterion11() {
    Gen gen(111);
    bool ok = true;
    std::string why;
    int n = 0;
    for (int i = 0; i < 30 && ok; ++i) {
        int w = int(gen.pick(1, 5));
        Operator t = Operator::shift_band(gen.nonzero_rat(), 0, 0, gen.sparse_window(w));
        WeylParts parts = weyl_decompose(t);
        if (op_add(parts.v, parts.f) != t || alpha(parts.v) != ExtNat::finite(0) ||
            beta(parts.v) != ExtNat::finite(0) || !is_finite_rank(parts.f)) {
            ok = false;
            why = "splitting identities failed on trial " + std::to_string(i);
            break;
        }
        for (int j = 0; j <= w + 4; ++j) {
            FinVec e = FinVec::unit(j);
            if (apply(parts.v, e) + apply(parts.f, e) != apply(t, e)) {
                ok = false;
                why = "pointwise action differs at coordinate " + std::to_string(j);
                break;
            }
        }
        ++n;
    }
    report(11, ok,
           ok ? std::to_string(n) + " balanced bands split into invertible plus finite rank" : why);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all 11 criteria passed\n");
    return failures ? 1 : 0;
}

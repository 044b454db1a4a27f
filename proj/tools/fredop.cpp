#include "CLI11.hpp"
#include "fredop/gen.hpp"
#include "fredop/json_io.hpp"

#include <iostream>
#include <string>

namespace fredop {
namespace {

struct ClassRef {
    bool is_reg = true;
    RegularityId r = RegularityId::R1;
    SemiregId s = SemiregId::LSR1;
};

ClassRef resolve_class(const std::string& name) {
    try {
        return {true, parse_regularity(name), SemiregId::LSR1};
    } catch (const InputError&) {
    }
    try {
        return {false, RegularityId::R1, parse_semireg(name)};
    } catch (const InputError&) {
    }
    throw InputError("unknown membership class '" + name +
                     "' (expected R1..R16, LSR1..LSR3, or USR1..USR6)");
}

struct Options {
    std::string file;
    std::string cls;
    std::string poly;
    std::string kind;
    std::string suite_name;
    std::string out;
    int chain_bound = -1;
    int trials = 100;
    unsigned long long seed = 0;
    long long param = 0;
};

void emit(const Options& o, const Json& j) {
    if (o.out.empty()) std::cout << j.dump(2) << "\n";
    else save_json_file(o.out, j);
}

int suite_exit(const SuiteReport& rep) {
    if (!rep.ok()) return 2;
    if (!rep.decided()) return 3;
    return 0;
}

int run_invariants(const Options& o) {
    Operator t = operator_from_json(load_json_file(o.file));
    OperatorAnalysis an(t, o.chain_bound);
    Json out;
    out["alpha"] = extnat_to_json(an.alpha_pow(1));
    out["beta"] = extnat_to_json(an.beta_pow(1));
    if (is_semi_fredholm(t).is_yes()) out["index"] = extint_to_json(index_of(t));
    else out["index"] = nullptr;
    ChainResult chains[] = {an.ascent(), an.descent(), an.essential_ascent(),
                            an.essential_descent(), an.uniform_descent_from()};
    out["ascent"] = chain_to_json(chains[0]);
    out["descent"] = chain_to_json(chains[1]);
    out["essential_ascent"] = chain_to_json(chains[2]);
    out["essential_descent"] = chain_to_json(chains[3]);
    out["uniform_descent_from"] = chain_to_json(chains[4]);
    Verdict tud = an.tud();
    out["tud"] = verdict_to_json(tud);
    emit(o, out);
    bool undecided = tud.is_unknown();
    for (const ChainResult& c : chains)
        if (c.kind == ChainResult::ExceedsBound) undecided = true;
    return undecided ? 3 : 0;
}

int run_family_index(const Options& o) {
    OpFamily f = family_from_json(load_json_file(o.file));
    emit(o, index_map_to_json(family_index(f)));
    return 0;
}

int run_membership(const Options& o) {
    Json j = load_json_file(o.file);
    ClassRef c = resolve_class(o.cls);
    Verdict v;
    std::string kind;
    if (looks_like_family(j)) {
        kind = "family";
        OpFamily f = family_from_json(j);
        v = c.is_reg ? mem_family(f, c.r, o.chain_bound) : mem_family_semireg(f, c.s, o.param);
    } else {
        kind = "operator";
        Operator t = operator_from_json(j);
        v = c.is_reg ? mem(t, c.r, o.chain_bound) : mem_semireg(t, c.s, o.param);
    }
    Json out;
    out["class"] = o.cls;
    out["input"] = kind;
    out["verdict"] = verdict_to_json(v);
    emit(o, out);
    return v.is_unknown() ? 3 : 0;
}

int run_spectrum(const Options& o) {
    RatSpectrumMatrix t = ratspec_from_json(load_json_file(o.file));
    ClassRef c = resolve_class(o.cls);
    std::set<Rat> pts =
        c.is_reg ? r_spectrum(t, c.r, o.chain_bound) : r_spectrum_semireg(t, c.s, o.param);
    Json out;
    out["class"] = o.cls;
    Json arr = Json::array();
    for (const Rat& v : pts) arr.push_back(rat_to_json(v));
    out["points"] = std::move(arr);
    emit(o, out);
    return 0;
}

int run_smt(const Options& o) {
    RatSpectrumMatrix t = ratspec_from_json(load_json_file(o.file));
    ClassRef c = resolve_class(o.cls);
    Poly p = Poly::parse(o.poly);
    SmtReport rep = c.is_reg ? smt_check(t, p, c.r, o.chain_bound)
                             : smt_oneway_check(t, p, c.s, o.param);
    Json out = smt_to_json(rep);
    out["class"] = o.cls;
    out["poly"] = p.str();
    emit(o, out);
    return rep.pass ? 0 : 2;
}

int run_suite(const Options& o) {
    SuiteReport rep;
    if (o.suite_name == "axioms") {
        if (o.cls.empty()) throw InputError("suite axioms: --reg/--class names the class to test");
        ClassRef c = resolve_class(o.cls);
        AxiomKind kind;
        if (!o.kind.empty()) kind = parse_axiom_kind(o.kind);
        else if (c.is_reg) kind = AxiomKind::Regularity;
        else kind = is_lower_semireg(c.s) ? AxiomKind::Lower : AxiomKind::Upper;
        rep = c.is_reg ? axiom_suite(c.r, kind, o.trials, o.seed, o.chain_bound)
                       : axiom_suite(c.s, kind, o.trials, o.seed, o.param);
    } else if (o.suite_name == "lemmas") {
        if (o.cls.empty()) throw InputError("suite lemmas: --reg/--class names the class to test");
        ClassRef c = resolve_class(o.cls);
        if (c.is_reg) throw InputError("suite lemmas: expects a semiregularity class (LSR/USR)");
        rep = lemma_suite(c.s, o.trials, o.seed, o.param);
    } else {
        throw InputError("unknown suite '" + o.suite_name + "' (expected axioms or lemmas)");
    }
    emit(o, report_to_json(rep));
    return suite_exit(rep);
}

int run_homotopy(const Options& o) {
    Homotopy h = homotopy_from_json(load_json_file(o.file));
    HomotopyReport rep = homotopy_check(h);
    emit(o, homotopy_report_to_json(rep));
    return rep.pass ? 0 : 2;
}

int run_probe(const Options& o) {
    OpFamily f = family_from_json(load_json_file(o.file));
    ProbeReport rep = local_constancy_probe(f, o.trials, o.seed);
    emit(o, probe_report_to_json(rep));
    return rep.ok() ? 0 : 2;
}

int run_validate(const Options& o) {
    Json j = load_json_file(o.file);
    std::string kind;
    if (looks_like_family(j)) {
        OpFamily f = family_from_json(j);
        check_admissible(f);
        kind = "family";
    } else if (j.is_object() && j.contains("space") && j.contains("steps")) {
        Homotopy h = homotopy_from_json(j);
        homotopy_check(h); // admissibility; index outcomes are not validity
        kind = "homotopy";
    } else if (j.is_object() && j.contains("type") && j["type"] == "ratspecmatrix") {
        ratspec_from_json(j);
        kind = "ratspecmatrix";
    } else {
        operator_from_json(j);
        kind = "operator";
    }
    Json out;
    out["ok"] = true;
    out["kind"] = kind;
    emit(o, out);
    return 0;
}

} // namespace
} // namespace fredop

int main(int argc, char** argv) {
    using namespace fredop;
    CLI::App app{"exact invariants, chains and membership classes for sequence-space operators"};
    app.require_subcommand(1);
    Options o;

    app.add_option("--chain-bound", o.chain_bound, "probe bound for chain computations");
    app.add_option("--seed", o.seed, "random seed for generated corpora");
    app.add_option("--trials", o.trials, "trial count for suites and probes");
    app.add_option("--out", o.out, "write the JSON result to this file instead of stdout");

    auto with_file = [&](CLI::App* sub) {
        sub->add_option("file", o.file, "input JSON file")->required();
        sub->fallthrough();
        return sub;
    };

    CLI::App* inv = with_file(app.add_subcommand("invariants", "exact invariants of one operator"));
    CLI::App* fam = with_file(app.add_subcommand("family-index", "per-component index of a family"));
    CLI::App* mem_cmd = with_file(app.add_subcommand("membership", "class membership of an operator or family"));
    mem_cmd->add_option("--class,--reg", o.cls, "membership class (R1..R16, LSR*, USR*)")->required();
    mem_cmd->add_option("--param", o.param, "semiregularity bound / index modulus");
    CLI::App* spec = with_file(app.add_subcommand("spectrum", "class spectrum of a certified matrix"));
    spec->add_option("--class,--reg", o.cls, "membership class")->required();
    spec->add_option("--param", o.param, "semiregularity bound / index modulus");
    CLI::App* smt = with_file(app.add_subcommand("smt-check", "spectral mapping check for a polynomial"));
    smt->add_option("--class,--reg", o.cls, "membership class")->required();
    smt->add_option("--poly", o.poly, "polynomial, constant term first: \"c0,c1,...\"")->required();
    smt->add_option("--param", o.param, "semiregularity bound / index modulus");
    CLI::App* suite = app.add_subcommand("suite", "run a property suite");
    suite->add_option("name", o.suite_name, "suite name: axioms | lemmas")->required();
    suite->add_option("--class,--reg", o.cls, "membership class under test");
    suite->add_option("--kind", o.kind, "axiom direction: regularity | lower | upper");
    suite->add_option("--param", o.param, "semiregularity bound / index modulus");
    suite->fallthrough();
    CLI::App* hom = with_file(app.add_subcommand("homotopy-check", "index constancy along a discrete path"));
    CLI::App* probe = with_file(app.add_subcommand("probe", "local index constancy under perturbations"));
    CLI::App* val = with_file(app.add_subcommand("validate", "parse and admissibility-check a JSON file"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*inv) return run_invariants(o);
        if (*fam) return run_family_index(o);
        if (*mem_cmd) return run_membership(o);
        if (*spec) return run_spectrum(o);
        if (*smt) return run_smt(o);
        if (*suite) return run_suite(o);
        if (*hom) return run_homotopy(o);
        if (*probe) return run_probe(o);
        if (*val) return run_validate(o);
    } catch (const AdmissibilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const TheoremViolation& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

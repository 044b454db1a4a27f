#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fredop/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace fredop;

namespace {

std::string data_path(const std::string& name) {
    const char* dir = std::getenv("FREDOP_DATA");
    REQUIRE(dir != nullptr);
    return std::string(dir) + "/" + name;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const char* bin = std::getenv("FREDOP_CLI");
    REQUIRE(bin != nullptr);
    static int counter = 0;
    std::string tmp = "cli_out_" + std::to_string(counter++) + ".txt";
    std::string cmd = std::string(bin) + " " + args + " > " + tmp + " 2>&1";
    int rc = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = (rc >= 0 && rc % 256 == 0) ? rc / 256 : rc;
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    std::remove(tmp.c_str());
    return r;
}

Json parse(const std::string& text) { return Json::parse(text); }

} // namespace

TEST_CASE("rational values round-trip") {
    CHECK(rat_to_json(Rat(BigInt(-3), BigInt(4))) == Json("-3/4"));
    CHECK(rat_to_json(Rat(7)) == Json("7"));
    CHECK(rat_from_json(parse("\"5/10\""), "t") == Rat(BigInt(1), BigInt(2)));
    CHECK(rat_from_json(parse("-6"), "t") == Rat(-6));
    CHECK_THROWS_AS(rat_from_json(parse("0.5"), "t"), InputError);
    CHECK_THROWS_AS(rat_from_json(parse("\"1/0\""), "t"), InputError);
    CHECK_THROWS_AS(rat_from_json(parse("[1]"), "t"), InputError);
}

TEST_CASE("operators of every variant round-trip") {
    std::vector<Operator> ops;
    Mat m(2, 2);
    m.at(0, 1) = Rat(BigInt(1), BigInt(3));
    ops.push_back(Operator::matrix(m));
    Mat w(2, 2);
    w.at(1, 0) = Rat(-2);
    ops.push_back(Operator::shift_band(Rat(BigInt(2), BigInt(5)), 0, 3, w));
    ops.push_back(Operator::window_only(w));
    ops.push_back(Operator::omega(true, 2));
    ops.push_back(Operator::omega(false));
    ops.push_back(Operator::direct_sum({Operator::forward_shift(2), Operator::matrix(m)}));
    for (const Operator& t : ops) {
        Json j = operator_to_json(t);
        CHECK(operator_from_json(j) == t);
    }
}

TEST_CASE("operator parsing accepts defaults and rejects junk") {
    Operator t = operator_from_json(parse(R"({"type":"shiftband","fwd":1,"bwd":0,
        "window":{"size":0,"entries":[]}})"));
    CHECK(t.as_band().lead == Rat(1)); // lead defaults to 1

    Operator om = operator_from_json(parse(R"({"type":"omegashift","dir":"fwd"})"));
    CHECK(om.as_omega().power == 1);
    CHECK_THROWS_AS(operator_from_json(parse(R"({"type":"omegashift","dir":"forward"})")),
                    InputError);

    CHECK_THROWS_AS(operator_from_json(parse(R"({"type":"warp"})")), InputError);
    CHECK_THROWS_AS(operator_from_json(parse(R"({"type":"matrix","entries":[["1","2"]]})")),
                    InputError); // non-square
    CHECK_THROWS_AS(operator_from_json(parse(R"({"type":"shiftband","fwd":1,"bwd":1,
        "window":{"size":0,"entries":[]}})")),
                    InputError); // not in normal form
    CHECK_THROWS_AS(operator_from_json(parse(R"({"type":"shiftband","lead":"0","fwd":1,"bwd":0,
        "window":{"size":0,"entries":[]}})")),
                    InputError); // zero lead with a nonzero monomial
    CHECK_THROWS_AS(operator_from_json(parse(R"({"type":"shiftband","fwd":1,"bwd":0,
        "window":{"size":2,"entries":[["1"]]}})")),
                    InputError); // size does not match entries
    CHECK_THROWS_AS(operator_from_json(parse(R"({"type":"directsum","parts":[]})")), InputError);
}

TEST_CASE("spaces families homotopies and spectra round-trip") {
    Json fam = load_json_file(data_path("fam.json"));
    CHECK(looks_like_family(fam));
    OpFamily f = family_from_json(fam);
    CHECK(f.space.vertices.size() == 3);
    CHECK(family_from_json(family_to_json(f)).ops == f.ops);

    Json hom = load_json_file(data_path("hom.json"));
    CHECK_FALSE(looks_like_family(hom));
    Homotopy h = homotopy_from_json(hom);
    CHECK(h.steps.size() == 3);
    Homotopy h2 = homotopy_from_json(homotopy_to_json(h));
    CHECK(h2.steps == h.steps);

    Json rsp = load_json_file(data_path("rsm.json"));
    RatSpectrumMatrix t = ratspec_from_json(rsp);
    CHECK(t.spectrum.size() == 2);
    RatSpectrumMatrix t2 = ratspec_from_json(ratspec_to_json(t));
    CHECK(t2.m == t.m);

    // a wrong certificate is rejected at parse time
    Json bad = rsp;
    bad["spectrum"][0]["mult"] = 1;
    CHECK_THROWS_AS(ratspec_from_json(bad), InputError);
}

TEST_CASE("scalar serializers") {
    CHECK(extnat_to_json(ExtNat::finite(3)) == Json(3));
    CHECK(extnat_to_json(ExtNat::infinite()) == Json("inf"));
    CHECK(extint_to_json(ExtInt::finite(-2)) == Json(-2));
    CHECK(extint_to_json(ExtInt::plus_inf()) == Json("inf"));
    CHECK(extint_to_json(ExtInt::minus_inf()) == Json("-inf"));
    CHECK(chain_to_json(ChainResult::finite(2)) == Json(2));
    CHECK(chain_to_json(ChainResult::exceeds(8)) == Json("exceeds(8)"));
    CHECK(chain_to_json(ChainResult::infinite()) == Json("infinite"));
    CHECK(verdict_to_json(Verdict::yes()) == Json("yes"));
    CHECK(verdict_to_json(Verdict::unknown(8)) == Json("unknown(8)"));
}

TEST_CASE("cli reports invariants") {
    CliResult r = run_cli("invariants " + data_path("splus.json"));
    CHECK(r.exit_code == 3); // descent probe exhausts its bound
    Json j = parse(r.out);
    CHECK(j["alpha"] == Json(0));
    CHECK(j["beta"] == Json(1));
    CHECK(j["index"] == Json(-1));
    CHECK(j["ascent"] == Json(0));
    CHECK(j["descent"] == Json("exceeds(8)"));
    CHECK(j["tud"] == Json("yes"));

    CliResult r2 = run_cli("invariants " + data_path("sminus.json") + " --chain-bound 10");
    Json j2 = parse(r2.out);
    CHECK(j2["ascent"] == Json("exceeds(10)"));
    CHECK(j2["descent"] == Json(0));
    CHECK(j2["index"] == Json(1));
}

TEST_CASE("cli computes the family index") {
    CliResult r = run_cli("family-index " + data_path("fam.json"));
    CHECK(r.exit_code == 0);
    Json j = parse(r.out);
    CHECK(j["components"] == Json(2));
    CHECK(j["index"]["v0"] == Json(-1));
    CHECK(j["index"]["w0"] == Json(2));
}

TEST_CASE("cli answers membership queries") {
    CliResult yes = run_cli("membership " + data_path("splus.json") + " --class R6");
    CHECK(yes.exit_code == 0);
    CHECK(parse(yes.out)["verdict"] == Json("yes"));

    CliResult no = run_cli("membership " + data_path("sminus.json") + " --class R6");
    CHECK(no.exit_code == 0);
    CHECK(parse(no.out)["verdict"] == Json("no"));

    CliResult unk = run_cli("membership " + data_path("sminus.json") + " --class R7 --chain-bound 10");
    CHECK(unk.exit_code == 3);
    CHECK(parse(unk.out)["verdict"] == Json("unknown(10)"));

    CliResult semi = run_cli("membership " + data_path("splus.json") + " --class LSR1 --param 0");
    CHECK(semi.exit_code == 0);
    CHECK(parse(semi.out)["verdict"] == Json("yes"));

    CliResult fam = run_cli("membership " + data_path("fam.json") + " --class R9");
    CHECK(fam.exit_code == 0);
    CHECK(parse(fam.out)["verdict"] == Json("yes"));
}

TEST_CASE("cli computes class spectra and the mapping check") {
    CliResult r = run_cli("spectrum " + data_path("rsm.json") + " --class R11");
    CHECK(r.exit_code == 0);
    Json j = parse(r.out);
    CHECK(j["points"] == Json::parse(R"(["0","3"])"));

    CliResult s = run_cli("smt-check " + data_path("rsm.json") + " --class R11 --poly 0,0,1");
    CHECK(s.exit_code == 0);
    Json sj = parse(s.out);
    CHECK(sj["pass"] == Json(true));
    CHECK(sj["mapped_spectrum"] == Json::parse(R"(["0","9"])"));
    CHECK(sj["spectrum_of_image"] == Json::parse(R"(["0","9"])"));
}

TEST_CASE("cli validates inputs and reports failures distinctly") {
    CliResult ok = run_cli("validate " + data_path("fam.json"));
    CHECK(ok.exit_code == 0);

    CliResult jump = run_cli("homotopy-check " + data_path("homotopy_monomial_jump.json"));
    CHECK(jump.exit_code == 1);
    CHECK(jump.out.find("error:") != std::string::npos);

    CliResult good = run_cli("homotopy-check " + data_path("hom.json"));
    CHECK(good.exit_code == 0);
    CHECK(parse(good.out)["pass"] == Json(true));

    CliResult missing = run_cli("invariants no_such_file.json");
    CHECK(missing.exit_code == 1);

    CliResult badcls = run_cli("membership " + data_path("splus.json") + " --class R99");
    CHECK(badcls.exit_code == 1);
}

TEST_CASE("cli probe and suites") {
    CliResult probe = run_cli("probe " + data_path("fam.json") + " --trials 5 --seed 3");
    CHECK(probe.exit_code == 0);
    CHECK(parse(probe.out)["trials"] == Json(5));

    CliResult vac = run_cli("suite axioms --class R1 --trials 0");
    CHECK(vac.exit_code == 0);

    CliResult one = run_cli("suite axioms --class R9 --trials 5 --seed 17");
    CHECK(one.exit_code == 0);
    Json oj = parse(one.out);
    CHECK(oj["failures"] == Json::array());

    CliResult two = run_cli("suite axioms --class R9 --trials 5 --seed 17");
    CHECK(two.out == one.out); // byte-identical under one seed

    CliResult lem = run_cli("suite lemmas --class USR2 --trials 4 --seed 5");
    CHECK(lem.exit_code == 0);
}

TEST_CASE("cli writes output files on request") {
    CliResult r = run_cli("invariants " + data_path("sminus.json") + " --out cli_saved.json");
    CHECK(r.exit_code == 3); // ascent probe exhausted: undecided entries present
    Json j = load_json_file("cli_saved.json");
    CHECK(j["beta"] == Json(0));
    std::remove("cli_saved.json");
}

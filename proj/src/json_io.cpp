#include "fredop/json_io.hpp"

#include <fstream>

namespace fredop {

namespace {

[[noreturn]] void bad(const std::string& ctx, const std::string& what) {
    throw InputError(ctx + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& ctx) {
    if (!j.is_object()) bad(ctx, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(ctx, "missing field '" + key + "'");
    return *it;
}

int int_field(const Json& j, const std::string& key, const std::string& ctx) {
    const Json& v = field(j, key, ctx);
    if (!v.is_number_integer()) bad(ctx, "field '" + key + "' must be an integer");
    return v.get<int>();
}

std::string str_field(const Json& j, const std::string& key, const std::string& ctx) {
    const Json& v = field(j, key, ctx);
    if (!v.is_string()) bad(ctx, "field '" + key + "' must be a string");
    return v.get<std::string>();
}

} // namespace

Json rat_to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const Json& j, const std::string& ctx) {
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const InputError& e) {
            bad(ctx, e.what());
        }
    }
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number()) bad(ctx, "non-integer number; write rationals as strings like \"3/4\"");
    bad(ctx, "expected a rational (string \"p/q\" or integer)");
}

Json mat_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_from_json(const Json& j, const std::string& ctx) {
    if (!j.is_array()) bad(ctx, "expected an array of rows");
    int rows = int(j.size());
    int cols = -1;
    for (int i = 0; i < rows; ++i) {
        if (!j[size_t(i)].is_array()) bad(ctx, "row " + std::to_string(i) + " is not an array");
        int c = int(j[size_t(i)].size());
        if (cols == -1) cols = c;
        else if (c != cols) bad(ctx, "rows have different lengths");
    }
    if (cols == -1) cols = 0;
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int c = 0; c < cols; ++c)
            m.at(i, c) = rat_from_json(j[size_t(i)][size_t(c)],
                                       ctx + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    return m;
}

Json operator_to_json(const Operator& t) {
    Json j;
    if (t.is_matrix()) {
        j["type"] = "matrix";
        j["entries"] = mat_to_json(t.as_matrix().m);
        return j;
    }
    if (t.is_band()) {
        const ShiftBand& s = t.as_band();
        j["type"] = "shiftband";
        j["lead"] = rat_to_json(s.lead);
        j["fwd"] = s.fwd;
        j["bwd"] = s.bwd;
        Json w;
        w["size"] = s.window.rows();
        w["entries"] = mat_to_json(s.window);
        j["window"] = std::move(w);
        return j;
    }
    if (t.is_omega()) {
        j["type"] = "omegashift";
        j["dir"] = t.as_omega().forward ? "fwd" : "bwd";
        j["power"] = t.as_omega().power;
        return j;
    }
    Json parts = Json::array();
    for (const Operator& p : t.as_sum().parts) parts.push_back(operator_to_json(p));
    j["type"] = "directsum";
    j["parts"] = std::move(parts);
    return j;
}

Operator operator_from_json(const Json& j, const std::string& ctx) {
    std::string type = str_field(j, "type", ctx);
    if (type == "matrix") {
        Mat m = mat_from_json(field(j, "entries", ctx), ctx + ".entries");
        if (m.rows() != m.cols()) bad(ctx, "matrix must be square");
        return Operator::matrix(std::move(m));
    }
    if (type == "shiftband") {
        int fwd = int_field(j, "fwd", ctx);
        int bwd = int_field(j, "bwd", ctx);
        if (fwd < 0 || bwd < 0) bad(ctx, "shift exponents must be nonnegative");
        if (fwd > 0 && bwd > 0)
            bad(ctx, "shift monomial not in normal form: min(fwd, bwd) must be 0");
        Rat lead(1);
        if (j.contains("lead")) lead = rat_from_json(j["lead"], ctx + ".lead");
        if (lead.is_zero() && fwd + bwd > 0)
            bad(ctx, "zero lead with a nonzero shift monomial");
        const Json& w = field(j, "window", ctx);
        int size = int_field(w, "size", ctx + ".window");
        if (size < 0) bad(ctx, "window size must be nonnegative");
        Mat win = mat_from_json(field(w, "entries", ctx + ".window"), ctx + ".window.entries");
        if (win.rows() != size || win.cols() != size)
            bad(ctx, "window entries must be size x size");
        return Operator::shift_band(lead, fwd, bwd, std::move(win));
    }
    if (type == "omegashift") {
        std::string dir = str_field(j, "dir", ctx);
        if (dir != "fwd" && dir != "bwd") bad(ctx, "dir must be \"fwd\" or \"bwd\"");
        int power = 1;
        if (j.contains("power")) {
            if (!j["power"].is_number_integer()) bad(ctx, "field 'power' must be an integer");
            power = j["power"].get<int>();
            if (power < 1) bad(ctx, "power must be at least 1");
        }
        return Operator::omega(dir == "fwd", power);
    }
    if (type == "directsum") {
        const Json& parts = field(j, "parts", ctx);
        if (!parts.is_array() || parts.empty()) bad(ctx, "parts must be a nonempty array");
        std::vector<Operator> ops;
        for (size_t i = 0; i < parts.size(); ++i)
            ops.push_back(operator_from_json(parts[i], ctx + ".parts[" + std::to_string(i) + "]"));
        return Operator::direct_sum(std::move(ops));
    }
    bad(ctx, "unknown operator type '" + type + "'");
}

Json space_to_json(const ParamSpace& p) {
    Json j;
    j["vertices"] = p.vertices;
    Json edges = Json::array();
    for (const auto& [a, b] : p.edges) edges.push_back(Json::array({a, b}));
    j["edges"] = std::move(edges);
    return j;
}

ParamSpace space_from_json(const Json& j, const std::string& ctx) {
    ParamSpace p;
    const Json& vs = field(j, "vertices", ctx);
    if (!vs.is_array()) bad(ctx, "vertices must be an array");
    for (const Json& v : vs) {
        if (!v.is_string()) bad(ctx, "vertex labels must be strings");
        p.vertices.push_back(v.get<std::string>());
    }
    const Json& es = field(j, "edges", ctx);
    if (!es.is_array()) bad(ctx, "edges must be an array");
    for (size_t i = 0; i < es.size(); ++i) {
        const Json& e = es[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            bad(ctx, "edge " + std::to_string(i) + " must be a pair of vertex labels");
        p.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    try {
        validate_space(p);
    } catch (const std::exception& e) {
        bad(ctx, e.what());
    }
    return p;
}

namespace {

std::map<std::string, Operator> ops_from_json(const Json& j, const std::string& ctx) {
    if (!j.is_object()) bad(ctx, "expected an object mapping vertices to operators");
    std::map<std::string, Operator> ops;
    for (auto it = j.begin(); it != j.end(); ++it)
        ops.emplace(it.key(), operator_from_json(it.value(), ctx + "." + it.key()));
    return ops;
}

Json ops_to_json(const std::map<std::string, Operator>& ops) {
    Json j = Json::object();
    for (const auto& [v, op] : ops) j[v] = operator_to_json(op);
    return j;
}

} // namespace

Json family_to_json(const OpFamily& f) {
    Json j;
    j["space"] = space_to_json(f.space);
    j["ops"] = ops_to_json(f.ops);
    return j;
}

OpFamily family_from_json(const Json& j, const std::string& ctx) {
    OpFamily f;
    f.space = space_from_json(field(j, "space", ctx), ctx + ".space");
    f.ops = ops_from_json(field(j, "ops", ctx), ctx + ".ops");
    return f;
}

Json homotopy_to_json(const Homotopy& h) {
    Json j;
    j["space"] = space_to_json(h.space);
    Json steps = Json::array();
    for (const auto& step : h.steps) steps.push_back(ops_to_json(step));
    j["steps"] = std::move(steps);
    return j;
}

Homotopy homotopy_from_json(const Json& j, const std::string& ctx) {
    Homotopy h;
    h.space = space_from_json(field(j, "space", ctx), ctx + ".space");
    const Json& steps = field(j, "steps", ctx);
    if (!steps.is_array() || steps.empty()) bad(ctx, "steps must be a nonempty array");
    for (size_t i = 0; i < steps.size(); ++i)
        h.steps.push_back(ops_from_json(steps[i], ctx + ".steps[" + std::to_string(i) + "]"));
    return h;
}

Json ratspec_to_json(const RatSpectrumMatrix& t) {
    Json j;
    j["type"] = "ratspecmatrix";
    j["entries"] = mat_to_json(t.m);
    Json spec = Json::array();
    for (const auto& [v, mult] : t.spectrum) {
        Json e;
        e["value"] = rat_to_json(v);
        e["mult"] = mult;
        spec.push_back(std::move(e));
    }
    j["spectrum"] = std::move(spec);
    return j;
}

RatSpectrumMatrix ratspec_from_json(const Json& j, const std::string& ctx) {
    std::string type = str_field(j, "type", ctx);
    if (type != "ratspecmatrix") bad(ctx, "expected type \"ratspecmatrix\", got '" + type + "'");
    RatSpectrumMatrix t;
    t.m = mat_from_json(field(j, "entries", ctx), ctx + ".entries");
    const Json& spec = field(j, "spectrum", ctx);
    if (!spec.is_array()) bad(ctx, "spectrum must be an array");
    for (size_t i = 0; i < spec.size(); ++i) {
        const std::string ec = ctx + ".spectrum[" + std::to_string(i) + "]";
        Rat v = rat_from_json(field(spec[i], "value", ec), ec + ".value");
        int mult = int_field(spec[i], "mult", ec);
        t.spectrum.emplace_back(v, mult);
    }
    validate_spectrum(t);
    return t;
}

Json extnat_to_json(const ExtNat& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

Json extint_to_json(const ExtInt& v) {
    switch (v.kind()) {
        case ExtInt::PlusInf: return "inf";
        case ExtInt::MinusInf: return "-inf";
        default: return v.value();
    }
}

Json verdict_to_json(const Verdict& v) { return v.str(); }

Json chain_to_json(const ChainResult& c) {
    if (c.kind == ChainResult::Finite) return c.n;
    return c.str();
}

Json index_map_to_json(const IndexMap& m) {
    Json j;
    j["components"] = m.size();
    Json idx = Json::object();
    for (const auto& [rep, v] : m) idx[rep] = extint_to_json(v);
    j["index"] = std::move(idx);
    return j;
}

Json report_to_json(const SuiteReport& r) {
    Json j;
    j["suite"] = r.suite;
    j["trials"] = r.trials;
    j["passes"] = r.passes;
    Json fails = Json::array();
    for (const SuiteFailure& f : r.failures) {
        Json e;
        e["case"] = f.what;
        e["expected"] = f.expected;
        e["got"] = f.got;
        fails.push_back(std::move(e));
    }
    j["failures"] = std::move(fails);
    j["unknowns"] = r.unknowns;
    return j;
}

Json smt_to_json(const SmtReport& r) {
    Json j;
    j["pass"] = r.pass;
    j["reverse_holds"] = r.reverse_holds;
    Json lhs = Json::array();
    for (const Rat& v : r.lhs) lhs.push_back(rat_to_json(v));
    Json rhs = Json::array();
    for (const Rat& v : r.rhs) rhs.push_back(rat_to_json(v));
    j["mapped_spectrum"] = std::move(lhs);
    j["spectrum_of_image"] = std::move(rhs);
    j["detail"] = r.detail;
    return j;
}

Json homotopy_report_to_json(const HomotopyReport& r) {
    Json j;
    j["pass"] = r.pass;
    j["steps"] = r.steps;
    Json idx = Json::array();
    for (const IndexMap& m : r.step_indices) idx.push_back(index_map_to_json(m));
    j["step_indices"] = std::move(idx);
    j["detail"] = r.detail;
    return j;
}

Json probe_report_to_json(const ProbeReport& r) {
    Json j;
    j["trials"] = r.trials;
    j["passes"] = r.passes;
    j["failures"] = r.failures;
    return j;
}

bool looks_like_family(const Json& j) {
    return j.is_object() && j.contains("space") && j.contains("ops");
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw InputError(path + ": cannot open file for writing");
    out << j.dump(2) << "\n";
}

} // namespace fredop

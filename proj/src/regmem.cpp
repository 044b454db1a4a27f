#include "fredop/regmem.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fredop {

namespace {

void internal_check(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("internal invariant violated: " + what);
}

Verdict v_bool(bool b) { return b ? Verdict::yes() : Verdict::no(); }

// Finiteness of a chain quantity as a three-valued verdict.
Verdict v_chain_finite(const ChainResult& c) {
    switch (c.kind) {
        case ChainResult::Finite: return Verdict::yes();
        case ChainResult::Infinite: return Verdict::no();
        default: return Verdict::unknown(c.n);
    }
}

} // namespace

std::string regularity_name(RegularityId r) { return "R" + std::to_string(int(r)); }

RegularityId parse_regularity(const std::string& s) {
    if (s.size() >= 2 && (s[0] == 'R' || s[0] == 'r')) {
        try {
            size_t used = 0;
            int v = std::stoi(s.substr(1), &used);
            if (used == s.size() - 1 && v >= 1 && v <= 16) return RegularityId(v);
        } catch (const std::exception&) {
        }
    }
    throw InputError("unknown membership class '" + s + "' (expected R1..R16)");
}

std::string semireg_name(SemiregId s) {
    switch (s) {
        case SemiregId::LSR1: return "LSR1";
        case SemiregId::LSR2: return "LSR2";
        case SemiregId::LSR3: return "LSR3";
        case SemiregId::USR1: return "USR1";
        case SemiregId::USR2: return "USR2";
        case SemiregId::USR3: return "USR3";
        case SemiregId::USR4: return "USR4";
        case SemiregId::USR5: return "USR5";
        default: return "USR6";
    }
}

SemiregId parse_semireg(const std::string& s) {
    for (SemiregId id : all_semiregs())
        if (semireg_name(id) == s) return id;
    throw InputError("unknown membership class '" + s + "' (expected LSR1..LSR3 or USR1..USR6)");
}

bool is_lower_semireg(SemiregId s) {
    return s == SemiregId::LSR1 || s == SemiregId::LSR2 || s == SemiregId::LSR3;
}

const std::vector<RegularityId>& all_regularities() {
    static const std::vector<RegularityId> v = [] {
        std::vector<RegularityId> r;
        for (int i = 1; i <= 16; ++i) r.push_back(RegularityId(i));
        return r;
    }();
    return v;
}

const std::vector<SemiregId>& all_semiregs() {
    static const std::vector<SemiregId> v = {
        SemiregId::LSR1, SemiregId::LSR2, SemiregId::LSR3, SemiregId::USR1, SemiregId::USR2,
        SemiregId::USR3, SemiregId::USR4, SemiregId::USR5, SemiregId::USR6,
    };
    return v;
}

Verdict mem(OperatorAnalysis& an, RegularityId r) {
    switch (r) {
        case RegularityId::R1:
            return v_bool(an.beta_pow(1) == ExtNat::finite(0));
        case RegularityId::R2:
            return verdict_and(v_bool(!an.beta_pow(1).is_infinite()), v_chain_finite(an.descent()));
        case RegularityId::R3:
            return v_chain_finite(an.descent());
        case RegularityId::R4:
            return v_bool(!an.beta_pow(1).is_infinite());
        case RegularityId::R5:
            return v_chain_finite(an.essential_descent());
        case RegularityId::R6:
            return v_bool(an.alpha_pow(1) == ExtNat::finite(0));
        case RegularityId::R7:
            return verdict_and(v_bool(!an.alpha_pow(1).is_infinite()), v_chain_finite(an.ascent()));
        case RegularityId::R8:
            return v_chain_finite(an.ascent());
        case RegularityId::R9:
            return v_bool(!an.alpha_pow(1).is_infinite());
        case RegularityId::R10:
            return v_chain_finite(an.essential_ascent());
        case RegularityId::R11:
            return an.kernel_in_hyperrange();
        case RegularityId::R12:
            return an.kernel_in_hyperrange_essential();
        case RegularityId::R13:
            return an.chain_stabilizes();
        case RegularityId::R14:
            return an.all_k_finite();
        case RegularityId::R15:
            return an.k_finite_eventually();
        default:
            return an.tud();
    }
}

Verdict mem(const Operator& t, RegularityId r, int n_max) {
    OperatorAnalysis an(t, n_max);
    return mem(an, r);
}

Verdict mem_semireg(const Operator& t, SemiregId s, long long m) {
    if (m < 0) throw PreconditionError("mem_semireg: bound must be nonnegative");
    ExtNat a = alpha(t);
    ExtNat b = beta(t);
    bool upper_sf = !a.is_infinite();
    bool lower_sf = !b.is_infinite();
    bool fred = upper_sf && lower_sf;
    auto ind = [&] { return index_of(t); };
    switch (s) {
        case SemiregId::LSR1:
            return v_bool(upper_sf && a.value() <= m);
        case SemiregId::LSR2:
            return v_bool(lower_sf && b.value() <= m);
        case SemiregId::LSR3:
            // closed range holds structurally in the model; same set as LSR1
            return v_bool(range_closed(t) && upper_sf && a.value() <= m);
        case SemiregId::USR1:
            return v_bool(fred && ind().value() >= 0);
        case SemiregId::USR2:
            return v_bool(fred && ind().value() <= 0);
        case SemiregId::USR3: {
            if (!fred) return Verdict::no();
            long long v = ind().value();
            if (m == 0) return v_bool(v == 0);
            return v_bool(v % m == 0);
        }
        case SemiregId::USR4:
            return v_bool(fred && ind().value() == 0);
        case SemiregId::USR5: {
            if (!upper_sf) return Verdict::no();
            ExtInt v = ind(); // may be -inf
            return v_bool(v.kind() == ExtInt::MinusInf || v.value() <= 0);
        }
        default: { // USR6
            if (!lower_sf) return Verdict::no();
            ExtInt v = ind();
            return v_bool(v.kind() == ExtInt::PlusInf || v.value() >= 0);
        }
    }
}

Verdict mem_family(const OpFamily& f, RegularityId r, int n_max) {
    check_admissible(f);
    Verdict v = Verdict::yes();
    for (const auto& [vtx, op] : f.ops) {
        OperatorAnalysis an(op, n_max);
        v = verdict_and(v, mem(an, r));
        if (v.is_no()) break;
    }
    return v;
}

Verdict mem_family_semireg(const OpFamily& f, SemiregId s, long long m) {
    check_admissible(f);
    Verdict v = Verdict::yes();
    for (const auto& [vtx, op] : f.ops) {
        v = verdict_and(v, mem_semireg(op, s, m));
        if (v.is_no()) break;
    }
    return v;
}

void validate_spectrum(const RatSpectrumMatrix& t) {
    if (t.m.rows() != t.m.cols()) throw InputError("spectrum matrix must be square");
    if (t.m.rows() == 0) throw InputError("spectrum matrix must be nonempty");
    long long total = 0;
    for (size_t i = 0; i < t.spectrum.size(); ++i) {
        if (t.spectrum[i].second < 1) throw InputError("eigenvalue multiplicity must be positive");
        total += t.spectrum[i].second;
        for (size_t j = i + 1; j < t.spectrum.size(); ++j)
            if (t.spectrum[i].first == t.spectrum[j].first)
                throw InputError("eigenvalue listed twice: " + t.spectrum[i].first.str());
    }
    if (total != t.m.rows())
        throw InputError("eigenvalue multiplicities must sum to the dimension");
    Poly cp = charpoly(t.m);
    Poly prod({Rat(1)});
    for (const auto& [v, mult] : t.spectrum) {
        Poly lin({-v, Rat(1)});
        for (int i = 0; i < mult; ++i) prod = prod * lin;
    }
    if (!(cp == prod))
        throw InputError("spectrum certificate does not match the characteristic polynomial");
}

RatSpectrumMatrix poly_image(const RatSpectrumMatrix& t, const Poly& p) {
    validate_spectrum(t);
    RatSpectrumMatrix out;
    out.m = p.eval(t.m);
    std::map<Rat, int> agg;
    for (const auto& [v, mult] : t.spectrum) agg[p.eval(v)] += mult;
    for (const auto& [v, mult] : agg) out.spectrum.emplace_back(v, mult);
    validate_spectrum(out); // re-certified: image charpoly must split over the mapped values
    return out;
}

namespace {

Mat shifted_by(const Mat& m, const Rat& lambda) {
    return m - Mat::identity(m.rows()).scaled(lambda);
}

template <typename MemFn>
std::set<Rat> spectrum_scan(const RatSpectrumMatrix& t, MemFn&& member) {
    validate_spectrum(t);
    std::set<Rat> out;
    for (const auto& [lambda, mult] : t.spectrum) {
        Verdict v = member(Operator::matrix(shifted_by(t.m, lambda)));
        internal_check(!v.is_unknown(), "matrix membership is always decided");
        if (v.is_no()) out.insert(lambda);
    }
    return out;
}

} // namespace

std::set<Rat> r_spectrum(const RatSpectrumMatrix& t, RegularityId r, int n_max) {
    return spectrum_scan(t, [&](const Operator& s) { return mem(s, r, n_max); });
}

std::set<Rat> r_spectrum_semireg(const RatSpectrumMatrix& t, SemiregId s, long long m) {
    return spectrum_scan(t, [&](const Operator& op) { return mem_semireg(op, s, m); });
}

std::set<Rat> fredholm_spectrum(const RatSpectrumMatrix& t) {
    std::set<Rat> by_union = r_spectrum(t, RegularityId::R4);
    std::set<Rat> s9 = r_spectrum(t, RegularityId::R9);
    by_union.insert(s9.begin(), s9.end());
    std::set<Rat> direct = spectrum_scan(t, [](const Operator& s) { return is_fredholm(s); });
    internal_check(by_union == direct, "Fredholm spectrum: union route equals direct route");
    return by_union;
}

bool inverse_closed(SemiregId) {
    // An invertible member has alpha = beta = 0 and index 0; so does its
    // inverse, which therefore satisfies every implemented membership test.
    return true;
}

namespace {

std::string set_str(const std::set<Rat>& s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const Rat& v : s) {
        if (!first) os << ", ";
        os << v.str();
        first = false;
    }
    os << "}";
    return os.str();
}

} // namespace

SmtReport smt_check(const RatSpectrumMatrix& t, const Poly& p, RegularityId r, int n_max) {
    if (p.degree() < 1) throw PreconditionError("smt_check: polynomial must be nonconstant");
    SmtReport rep;
    std::set<Rat> st = r_spectrum(t, r, n_max);
    for (const Rat& v : st) rep.lhs.insert(p.eval(v));
    rep.rhs = r_spectrum(poly_image(t, p), r, n_max);
    rep.pass = rep.lhs == rep.rhs;
    rep.reverse_holds = rep.pass;
    rep.detail = regularity_name(r) + ": p(sigma) = " + set_str(rep.lhs) +
                 ", sigma(p) = " + set_str(rep.rhs);
    return rep;
}

SmtReport smt_oneway_check(const RatSpectrumMatrix& t, const Poly& p, SemiregId s, long long m) {
    if (p.degree() < 1) throw PreconditionError("smt_oneway_check: polynomial must be nonconstant");
    internal_check(inverse_closed(s), "one-way transform needs inverse-closedness");
    SmtReport rep;
    std::set<Rat> st = r_spectrum_semireg(t, s, m);
    for (const Rat& v : st) rep.lhs.insert(p.eval(v));
    rep.rhs = r_spectrum_semireg(poly_image(t, p), s, m);
    bool lhs_in_rhs = std::includes(rep.rhs.begin(), rep.rhs.end(), rep.lhs.begin(), rep.lhs.end());
    bool rhs_in_lhs = std::includes(rep.lhs.begin(), rep.lhs.end(), rep.rhs.begin(), rep.rhs.end());
    if (is_lower_semireg(s)) {
        rep.pass = lhs_in_rhs;
        rep.reverse_holds = rhs_in_lhs;
    } else {
        rep.pass = rhs_in_lhs;
        rep.reverse_holds = lhs_in_rhs;
    }
    rep.detail = semireg_name(s) + ": p(sigma) = " + set_str(rep.lhs) +
                 ", sigma(p) = " + set_str(rep.rhs);
    return rep;
}

BezoutQuadruple bezout_quadruple(const Operator& t, const Poly& p, const Poly& q) {
    if (!t.is_matrix())
        throw PreconditionError("bezout_quadruple: polynomial calculus needs a matrix operator");
    if (p.is_zero() || q.is_zero())
        throw PreconditionError("bezout_quadruple: polynomials must be nonzero");
    Poly g = poly_gcd(p, q);
    if (g.degree() != 0)
        throw PreconditionError("bezout_quadruple: polynomials are not coprime (gcd " + g.str() + ")");
    PolyXgcd x = poly_xgcd(p, q);
    internal_check(x.g.degree() == 0, "xgcd of coprime polynomials is constant");
    const Mat& mm = t.as_matrix().m;
    Mat a = p.eval(mm);
    Mat b = q.eval(mm);
    Mat c = x.u.eval(mm);
    Mat d = x.v.eval(mm);
    internal_check(a * c + b * d == Mat::identity(mm.rows()), "resolution of the identity");
    return {Operator::matrix(a), Operator::matrix(b), Operator::matrix(c), Operator::matrix(d)};
}

void SuiteReport::fail(std::string what, std::string expected, std::string got) {
    failures.push_back({std::move(what), std::move(expected), std::move(got)});
}

void SuiteReport::note_unknown(std::string what) { unknowns.push_back(std::move(what)); }

std::string SuiteReport::summary() const {
    std::ostringstream os;
    os << suite << ": " << passes << "/" << trials << " passed, " << failures.size()
       << " failed, " << unknowns.size() << " undecided";
    return os.str();
}

AxiomKind parse_axiom_kind(const std::string& s) {
    if (s == "regularity") return AxiomKind::Regularity;
    if (s == "lower") return AxiomKind::Lower;
    if (s == "upper") return AxiomKind::Upper;
    throw InputError("unknown axiom kind '" + s + "' (expected regularity, lower, or upper)");
}

} // namespace fredop

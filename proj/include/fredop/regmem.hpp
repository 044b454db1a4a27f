#pragma once

#include "fredop/chains.hpp"
#include "fredop/family.hpp"
#include "fredop/poly.hpp"

#include <set>
#include <string>
#include <vector>

namespace fredop {

// The sixteen membership classes, by increasing strength of the defining
// chain/inclusion conditions. Range-closedness subconditions hold structurally
// in every model class and are recorded, not computed.
//  R1 onto                R2 lower sF + finite descent   R3 finite descent
//  R4 lower sF            R5 finite essential descent    R6 bounded below
//  R7 upper sF + ascent   R8 finite ascent               R9 upper sF
//  R10 finite essential ascent                           R11 kernel in hyperrange
//  R12 kernel essentially in hyperrange                  R13 stationary sum chain
//  R14 all k(n) finite    R15 k(n) eventually finite     R16 uniform descent (TUD)
enum class RegularityId {
    R1 = 1, R2, R3, R4, R5, R6, R7, R8, R9, R10, R11, R12, R13, R14, R15, R16
};

// Lower ids demand small nullity/defect; upper ids constrain the index sign.
enum class SemiregId { LSR1, LSR2, LSR3, USR1, USR2, USR3, USR4, USR5, USR6 };

std::string regularity_name(RegularityId r);
RegularityId parse_regularity(const std::string& s); // "R1".."R16"
std::string semireg_name(SemiregId s);
SemiregId parse_semireg(const std::string& s); // "LSR1".."USR6"
bool is_lower_semireg(SemiregId s);
const std::vector<RegularityId>& all_regularities();
const std::vector<SemiregId>& all_semiregs();

// Membership of a single operator. Chain subconditions may come back Unknown;
// everything else is decided exactly.
Verdict mem(OperatorAnalysis& an, RegularityId r);
Verdict mem(const Operator& t, RegularityId r, int n_max = -1);
// m is the nullity/defect bound for LSR1-3 and the index modulus for USR3.
Verdict mem_semireg(const Operator& t, SemiregId s, long long m = 0);

// Family membership is the conjunction over vertices.
Verdict mem_family(const OpFamily& f, RegularityId r, int n_max = -1);
Verdict mem_family_semireg(const OpFamily& f, SemiregId s, long long m = 0);

// Square matrix whose characteristic polynomial splits over the rationals,
// carrying its eigenvalues as a certificate (validated, not trusted).
struct RatSpectrumMatrix {
    Mat m;
    std::vector<std::pair<Rat, int>> spectrum; // distinct eigenvalue, multiplicity
};
void validate_spectrum(const RatSpectrumMatrix& t); // charpoly = prod (x - v)^mult
// p(t) with the mapped, re-certified spectrum {p(v)}.
RatSpectrumMatrix poly_image(const RatSpectrumMatrix& t, const Poly& p);

// { v in spectrum : t - vI is not a member }. Off-spectrum points are excluded
// soundly because invertible operators belong to every implemented class.
std::set<Rat> r_spectrum(const RatSpectrumMatrix& t, RegularityId r, int n_max = -1);
std::set<Rat> r_spectrum_semireg(const RatSpectrumMatrix& t, SemiregId s, long long m = 0);
// r_spectrum(R4) union r_spectrum(R9), asserted equal to the direct
// not-Fredholm scan (both empty for matrices).
std::set<Rat> fredholm_spectrum(const RatSpectrumMatrix& t);

// Does the implemented class contain inverses of its invertible members?
// Holds for every implemented semiregularity; recorded per id.
bool inverse_closed(SemiregId s);

struct SmtReport {
    bool pass = false;          // the required relation between lhs and rhs
    bool reverse_holds = true;  // informational for one-way checks
    std::set<Rat> lhs;          // p(spectrum-of-class(t))
    std::set<Rat> rhs;          // spectrum-of-class(p(t))
    std::string detail;
};
// Two-way equality p(sigma_r(t)) = sigma_r(p(t)); deg(p) >= 1 required.
SmtReport smt_check(const RatSpectrumMatrix& t, const Poly& p, RegularityId r, int n_max = -1);
// Lower ids: p(sigma(t)) inside sigma(p(t)); upper ids: the reverse inclusion.
SmtReport smt_oneway_check(const RatSpectrumMatrix& t, const Poly& p, SemiregId s, long long m = 0);

struct BezoutQuadruple {
    Operator a, b, c, d; // mutually commuting, a c + b d = identity
};
// a = p(t), b = q(t), c, d from the extended Euclidean identity; p, q coprime.
BezoutQuadruple bezout_quadruple(const Operator& t, const Poly& p, const Poly& q);

struct SuiteFailure {
    std::string what;
    std::string expected;
    std::string got;
};

struct SuiteReport {
    std::string suite;
    int trials = 0;
    int passes = 0;
    std::vector<SuiteFailure> failures;
    std::vector<std::string> unknowns;

    bool ok() const { return failures.empty(); }
    bool decided() const { return unknowns.empty(); }
    void fail(std::string what, std::string expected, std::string got);
    void note_unknown(std::string what);
    std::string summary() const;
};

enum class AxiomKind { Regularity, Lower, Upper };
AxiomKind parse_axiom_kind(const std::string& s); // "regularity" | "lower" | "upper"

// Seeded property suites over generated corpora.
SuiteReport axiom_suite(RegularityId r, AxiomKind kind, int trials, unsigned long long seed,
                        int n_max = -1);
SuiteReport axiom_suite(SemiregId s, AxiomKind kind, int trials, unsigned long long seed,
                        long long m = 0);
SuiteReport lemma_suite(SemiregId s, int trials, unsigned long long seed, long long m = 0);
SuiteReport finite_rank_stability(const OpFamily& f, const FiniteRankFamily& k, RegularityId r,
                                  int n_max = -1);
SuiteReport factor_implications(const OpFamily& t1, const OpFamily& t2, int n_max = -1);
SuiteReport inclusion_chain_suite(const std::vector<Operator>& corpus, int n_max = -1);

} // namespace fredop

#pragma once

#include "fredop/opmodel.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fredop {

// Input violates the family contract (unknown vertex, layout mismatch across
// an edge, a claimed finite-rank term that is not finite rank, ...).
struct AdmissibilityError : InputError {
    using InputError::InputError;
};

// A verified theorem property failed at runtime; always indicates a bug.
struct TheoremViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite graph standing in for the compact parameter space.
struct ParamSpace {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
};

// Unique nonempty labels; edge endpoints must exist. Self-loops are allowed
// and ignored by the component structure.
void validate_space(const ParamSpace& p);

struct Components {
    std::map<std::string, std::string> rep; // vertex -> smallest label in its class
    int count = 0;
    std::vector<std::string> reps() const;  // sorted distinct representatives
};
Components components(const ParamSpace& p);

// Vertexwise operator assignment. Admissible when the layout signature agrees
// across every edge: neighbors differ only in windows / matrix entries, which
// keeps their difference finite rank.
struct OpFamily {
    ParamSpace space;
    std::map<std::string, Operator> ops;
};
void check_admissible(const OpFamily& f);

struct FiniteRankFamily {
    ParamSpace space;
    std::map<std::string, Operator> ops; // matrix, or zero-monomial window band
};
void check_finite_rank(const FiniteRankFamily& k);

using IndexMap = std::map<std::string, ExtInt>; // component representative -> index

// Per-component index. Verifies constancy across each component at runtime and
// raises TheoremViolation if two vertices of one component disagree.
IndexMap family_index(const OpFamily& f);

// Vertexwise sum with a finite-rank family of compatible layout.
OpFamily perturb(const OpFamily& f, const FiniteRankFamily& k);

// Vertexwise composition; every vertex pair must be both upper semi-Fredholm
// or both lower semi-Fredholm (mixed types rejected).
OpFamily compose_families(const OpFamily& s, const OpFamily& t);
// Raw pointwise product without the sidedness check; used by implication suites.
OpFamily compose_pointwise_unchecked(const OpFamily& s, const OpFamily& t);

// Finite list of families over one space; consecutive steps must agree in
// layout signature at every vertex (a discretized continuous path).
struct Homotopy {
    ParamSpace space;
    std::vector<std::map<std::string, Operator>> steps;
};

struct HomotopyReport {
    bool pass = false;
    int steps = 0;
    std::vector<IndexMap> step_indices;
    std::string detail; // first mismatch when failing
};
// Throws AdmissibilityError when a step breaks the family contract or jumps
// layout between consecutive steps; reports index equality across steps.
HomotopyReport homotopy_check(const Homotopy& h);

// Max induced sup norm over the vertices; matrix families only.
Rat sup_norm(const OpFamily& f);

struct ProbeReport {
    int trials = 0;
    int passes = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};
// Seeded structured perturbations (windows and matrix entries jittered by small
// rationals, monomials fixed); each perturbed family must stay semi-Fredholm
// with the same per-component index.
ProbeReport local_constancy_probe(const OpFamily& f, int trials, unsigned long long seed);

} // namespace fredop

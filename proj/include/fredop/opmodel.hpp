#pragma once

#include "fredop/ratlin.hpp"

#include <memory>
#include <variant>

namespace fredop {

// Three-valued answer for predicates that may be undecided at a finite probe bound.
struct Verdict {
    enum State { Yes, No, Unknown };
    State state = Unknown;
    int bound = 0; // exhausted probe bound; meaningful only when state == Unknown

    static Verdict yes() { return {Yes, 0}; }
    static Verdict no() { return {No, 0}; }
    static Verdict unknown(int bound) { return {Unknown, bound}; }

    bool is_yes() const { return state == Yes; }
    bool is_no() const { return state == No; }
    bool is_unknown() const { return state == Unknown; }
    bool operator==(const Verdict& o) const {
        return state == o.state && (state != Unknown || bound == o.bound);
    }
    std::string str() const;
};

Verdict verdict_and(const Verdict& a, const Verdict& b); // No dominates, then Unknown
Verdict verdict_or(const Verdict& a, const Verdict& b);  // Yes dominates, then Unknown

// N ∪ {∞}, for kernel/cokernel dimensions.
class ExtNat {
  public:
    ExtNat() : inf_(false), v_(0) {}
    static ExtNat finite(long long v);
    static ExtNat infinite() { ExtNat e; e.inf_ = true; return e; }
    bool is_infinite() const { return inf_; }
    long long value() const; // finite only
    ExtNat operator+(const ExtNat& o) const;
    bool operator==(const ExtNat& o) const { return inf_ == o.inf_ && (inf_ || v_ == o.v_); }
    bool operator!=(const ExtNat& o) const { return !(*this == o); }
    std::string str() const;

  private:
    bool inf_;
    long long v_;
};

// Z ∪ {+∞, -∞}. Addition is partial: opposite infinities throw.
class ExtInt {
  public:
    ExtInt() : kind_(Finite), v_(0) {}
    enum Kind { Finite, PlusInf, MinusInf };
    static ExtInt finite(long long v);
    static ExtInt plus_inf() { ExtInt e; e.kind_ = PlusInf; return e; }
    static ExtInt minus_inf() { ExtInt e; e.kind_ = MinusInf; return e; }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Finite; }
    long long value() const; // finite only
    ExtInt operator+(const ExtInt& o) const;
    bool operator==(const ExtInt& o) const { return kind_ == o.kind_ && (kind_ != Finite || v_ == o.v_); }
    bool operator!=(const ExtInt& o) const { return !(*this == o); }
    std::string str() const;

  private:
    Kind kind_;
    long long v_;
};

// Finitely supported rational sequence (x_0, x_1, ...): dense prefix, trailing zeros trimmed.
class FinVec {
  public:
    FinVec() = default;
    explicit FinVec(std::vector<Rat> coords);
    static FinVec unit(int i);

    int support_bound() const { return int(c_.size()); } // all coords >= bound are zero
    const Rat& at(int i) const;
    const std::vector<Rat>& coords() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    FinVec operator+(const FinVec& o) const;
    FinVec operator-(const FinVec& o) const;
    FinVec scaled(const Rat& k) const;
    bool operator==(const FinVec& o) const { return c_ == o.c_; }
    std::string str() const;

  private:
    std::vector<Rat> c_;
};

class Operator;

// Square rational matrix acting on Q^d.
struct MatrixOp {
    Mat m;
};

// lead * S+^fwd S-^bwd + window, on the one-sided sequence space.
// Normal form: min(fwd, bwd) = 0; lead = 0 forces fwd = bwd = 0 (pure window);
// window is W x W acting on coordinates [0, W), trimmed to minimal size.
struct ShiftBand {
    Rat lead;
    int fwd = 0;
    int bwd = 0;
    Mat window; // W x W
};

// Shift of infinite multiplicity on the doubly-indexed sequence space,
// flattened by the Cantor pairing. Realizes the infinite indices:
// forward: alpha = 0, beta = inf; backward: alpha = inf, beta = 0.
struct OmegaShift {
    bool forward = true;
    int power = 1; // composition depth; invariants do not depend on it
};

struct DirectSumOp {
    std::vector<Operator> parts; // never nested, never singleton
};

// Immutable operator value; copies are cheap.
class Operator {
  public:
    using Node = std::variant<MatrixOp, ShiftBand, OmegaShift, DirectSumOp>;

    static Operator matrix(Mat m); // square
    static Operator shift_band(Rat lead, int fwd, int bwd, Mat window); // normalizes
    static Operator forward_shift(int n = 1);
    static Operator backward_shift(int n = 1);
    static Operator window_only(Mat window); // lead = 0
    static Operator omega(bool forward, int power = 1);
    static Operator direct_sum(std::vector<Operator> parts); // flattens, collapses singletons

    const Node& node() const { return *n_; }
    bool is_matrix() const { return std::holds_alternative<MatrixOp>(*n_); }
    bool is_band() const { return std::holds_alternative<ShiftBand>(*n_); }
    bool is_omega() const { return std::holds_alternative<OmegaShift>(*n_); }
    bool is_sum() const { return std::holds_alternative<DirectSumOp>(*n_); }
    const MatrixOp& as_matrix() const { return std::get<MatrixOp>(*n_); }
    const ShiftBand& as_band() const { return std::get<ShiftBand>(*n_); }
    const OmegaShift& as_omega() const { return std::get<OmegaShift>(*n_); }
    const DirectSumOp& as_sum() const { return std::get<DirectSumOp>(*n_); }

    bool operator==(const Operator& o) const;
    bool operator!=(const Operator& o) const { return !(*this == o); }
    std::string str() const;

  private:
    explicit Operator(Node n) : n_(std::make_shared<const Node>(std::move(n))) {}
    std::shared_ptr<const Node> n_;
};

// Pointwise action. Matrix lanes reject vectors supported outside their domain.
FinVec apply(const Operator& t, const FinVec& x);

Operator compose(const Operator& s, const Operator& t); // x -> s(t(x))
Operator transpose(const Operator& t);
Operator power(const Operator& t, int n); // n >= 0; power(t, 0) = identity of t's layout
Operator identity_like(const Operator& t);
Operator scaled(const Operator& t, const Rat& k); // not available for omega lanes
// Partial sum: defined when the result stays in the model class
// (same matrix shape / compatible band monomials / omega + zero window / sums partwise).
Operator op_add(const Operator& a, const Operator& b);

ExtNat alpha(const Operator& t); // dim N(t)
ExtNat beta(const Operator& t);  // codim R(t), computed as alpha of the transpose model
ExtInt index_of(const Operator& t); // pre: semi-Fredholm

Verdict is_upper_sf(const Operator& t);      // alpha < inf (+ structurally closed range)
Verdict is_lower_sf(const Operator& t);      // beta < inf
Verdict is_semi_fredholm(const Operator& t); // upper or lower
Verdict is_fredholm(const Operator& t);      // upper and lower

bool is_finite_rank(const Operator& t);

// Range closedness is structural in every model class; callers record it as a
// proven flag rather than a computation.
bool range_closed(const Operator& t);
std::string range_closed_reason(const Operator& t);

// Variant layout plus per-lane shift monomial data; windows and matrix entries
// are excluded. Families are admissible when this agrees across every edge.
std::string layout_signature(const Operator& t);
// True when f can be added to an operator of t's layout as a finite-rank term.
bool finite_rank_compatible(const Operator& t, const Operator& f);

// Canonical (column echelon) kernel basis; Matrix or band with lead != 0.
// Band kernels come from a truncated solve whose dimension is checked at two
// consecutive truncation sizes on every call.
std::vector<FinVec> kernel_vectors(const Operator& t);

struct QuasiInverse {
    Operator u;        // t*u = identity + k
    Operator k;        // finite rank
    Operator p_kernel; // projection onto N(t)
};
QuasiInverse quasi_inverse(const Operator& t); // Matrix, or band with lead != 0

struct WeylParts {
    Operator v; // invertible in the model class (alpha = beta = 0, checked)
    Operator f; // finite rank, rank = alpha(t)
};
// pre: index 0 with alpha = beta < inf: Matrix, or balanced band (fwd = bwd = 0, lead != 0).
WeylParts weyl_decompose(const Operator& t);

Rat matrix_sup_norm(const Mat& m); // induced sup norm: max absolute row sum

} // namespace fredop

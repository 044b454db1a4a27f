#pragma once

#include "fredop/opmodel.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace fredop {

// Outcome of a chain-stabilization question under a finite probe bound.
// Finite(n) requires a proof (dimension bound, one-step kernel/range chain
// certificate, or a certified tail); Infinite requires a structural proof;
// ExceedsBound(b) is the honest "not decided within b".
struct ChainResult {
    enum Kind { Finite, ExceedsBound, Infinite };
    Kind kind = ExceedsBound;
    int n = 0; // Finite: stabilization point; ExceedsBound: exhausted bound

    static ChainResult finite(int v) { return {Finite, v}; }
    static ChainResult exceeds(int bound) { return {ExceedsBound, bound}; }
    static ChainResult infinite() { return {Infinite, 0}; }

    bool is_finite() const { return kind == Finite; }
    bool operator==(const ChainResult& o) const { return kind == o.kind && n == o.n; }
    bool operator!=(const ChainResult& o) const { return !(*this == o); }
    std::string str() const; // "3" | "exceeds(8)" | "infinite"
};

// Probe bound covering the window and monomial reach of the operator.
int default_chain_bound(const Operator& t);

// Lazily computed, cached chain data for one operator: powers, their kernel
// and cokernel dimensions, the chain gaps, and stabilization verdicts. All
// values are exact; inconclusive scans stop at the bound fixed at construction.
class OperatorAnalysis {
  public:
    explicit OperatorAnalysis(Operator t, int n_max = -1); // -1: default bound
    const Operator& op() const { return t_; }
    int bound() const { return bound_; }

    ExtNat alpha_pow(int n); // dim N(t^n)
    ExtNat beta_pow(int n);  // codim R(t^n)

    ExtNat c(int n);       // dim R(t^n)/R(t^{n+1})
    ExtNat c_prime(int n); // dim N(t^{n+1})/N(t^n)
    ExtNat k(int n);       // dim (R(t^n) cap N(t)) / (R(t^{n+1}) cap N(t))

    // dim(N(t^p) cap R(t^q)); Matrix, or band with lead != 0.
    long long dim_kernel_in_range(int p, int q);

    ChainResult ascent();
    ChainResult descent();
    ChainResult essential_ascent();
    ChainResult essential_descent();
    ChainResult uniform_descent_from();

    // Existence of a point past which the chain R(t)+N(t^n) is stationary,
    // even when the minimal such point was not located within the bound.
    Verdict chain_stabilizes();
    Verdict tud(); // chain_stabilizes + closed-range conditions (structural)

    Verdict kernel_in_hyperrange();           // N(t) inside every R(t^n)
    Verdict kernel_in_hyperrange_essential(); // ... up to a finite-dimensional part
    Verdict all_k_finite();
    Verdict k_finite_eventually();

    // Matrix only: stabilized intersection / union of the power chains.
    Subspace hyperrange_subspace();
    Subspace hyperkernel_subspace();

  private:
    enum Kind { KMatrix, KBand, KWindow, KOmega, KSum };
    enum CrKey { CrAscent, CrDescent, CrEssAscent, CrEssDescent, CrUniform };

    Kind kind_ = KMatrix;
    Operator t_;
    int bound_ = 8;

    struct MatrixChain {
        int d = 0;
        std::vector<Mat> pow;      // t^0 .. t^{d+2}
        std::vector<Subspace> ker; // kernels of the powers
        std::vector<Subspace> im;  // images of the powers
        std::vector<Subspace> u;   // R(t) + N(t^n)
    };
    std::unique_ptr<MatrixChain> mx_;

    std::vector<Operator> pow_; // band powers, lazily extended
    std::map<int, long long> a_, b_;
    std::map<int, std::vector<FinVec>> kv_;
    std::map<std::pair<int, int>, long long> meet_;
    std::map<int, ChainResult> cr_;
    bool tail_done_ = false;
    std::optional<int> tail_;

    std::unique_ptr<OperatorAnalysis> blk_;                 // window-only block
    std::vector<std::unique_ptr<OperatorAnalysis>> parts_;  // direct sums
    bool omega_fwd_ = false;

    int mclamp(int n) const;
    const Operator& pow_op(int n);
    long long band_alpha(int n);
    long long band_beta(int n);
    const std::vector<FinVec>& band_kernel(int p);
    long long band_meet(int p, int q);
    long long band_meet_at(const Operator& tq, const std::vector<FinVec>& kv, int m) const;
    std::optional<int> band_tail(); // certified point with k(n) = 0 beyond it
    ChainResult combine_max(ChainResult (OperatorAnalysis::*f)());
};

ExtNat c_n(const Operator& t, int n);
ExtNat c_prime_n(const Operator& t, int n);
ExtNat k_n(const Operator& t, int n);
ChainResult ascent(const Operator& t, int n_max = -1);
ChainResult descent(const Operator& t, int n_max = -1);
ChainResult essential_ascent(const Operator& t, int n_max = -1);
ChainResult essential_descent(const Operator& t, int n_max = -1);
ChainResult uniform_descent_from(const Operator& t, int n_max = -1);
Verdict has_tud(const Operator& t, int n_max = -1);
Subspace hyperrange(const Operator& t);  // Matrix only
Subspace hyperkernel(const Operator& t); // Matrix only

} // namespace fredop

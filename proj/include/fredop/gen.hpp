#pragma once

#include "fredop/family.hpp"
#include "fredop/regmem.hpp"

#include <functional>
#include <random>
#include <utility>

namespace fredop {

// Seeded corpus builder. One instance per seed; a fixed call order yields a
// fixed corpus, which keeps suite runs byte-reproducible.
class Gen {
  public:
    explicit Gen(unsigned long long seed) : rng_(seed) {}
    std::mt19937_64& rng() { return rng_; }

    long long pick(long long lo, long long hi); // uniform inclusive
    bool chance(int num, int den);              // true with probability num/den
    Rat rat(int max_abs_num = 3, int max_den = 3);
    Rat nonzero_rat(int max_abs_num = 3, int max_den = 3);
    Mat mat(int rows, int cols, int max_abs_num = 3, int max_den = 2);
    Mat sparse_window(int w); // about half the entries zero
    Mat invertible(int d);    // unit lower times unit upper, determinant 1

    Operator matrix_op(int min_d = 1, int max_d = 5);
    Operator band_op(int max_shift = 2, int max_w = 4);      // nonzero lead
    Operator window_op(int max_w = 4);                       // finite rank
    Operator shifted_band_op(int max_total = 4, int max_w = 6); // both monomial
                                                                // exponents drawn, then normalized
    Operator semi_fredholm_op(); // matrix, band, or a two-part direct sum
    Operator finite_rank_like(const Operator& t); // addable to t's layout
    Operator vary(const Operator& t);             // t plus a finite-rank term

    Poly poly(int min_deg = 1, int max_deg = 3);
    std::pair<Poly, Poly> coprime_pair(int max_deg = 2);
    RatSpectrumMatrix spectrum_matrix(int min_d = 2, int max_d = 6);

    ParamSpace space(int max_vertices = 20, int max_components = 3);
    OpFamily family(const ParamSpace& p, const std::function<Operator()>& shape);
    OpFamily band_family(int max_vertices = 12, int max_components = 2);
    FiniteRankFamily finite_rank_for(const OpFamily& f);
    Homotopy homotopy_for(const OpFamily& f, int steps); // linear window interpolation

  private:
    std::mt19937_64 rng_;
};

} // namespace fredop

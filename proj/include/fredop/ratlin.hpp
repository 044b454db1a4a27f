#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fredop {

using BigInt = boost::multiprecision::cpp_int;

// Thrown when an operation's stated precondition is violated by the caller.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown on malformed external input (text, JSON, CLI arguments).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact rational number, always normalized: den > 0, gcd(|num|, den) = 1.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(BigInt n) : num_(std::move(n)), den_(1) {}
    Rat(BigInt n, BigInt d);

    static Rat parse(const std::string& s); // "p/q" or "p"
    std::string str() const;

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rat operator-() const;
    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const; // o != 0
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    Rat abs() const { return num_ < 0 ? -*this : *this; }
    Rat inv() const; // != 0

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Rat& o) const { return num_ * o.den_ <= o.num_ * den_; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return o <= *this; }

  private:
    BigInt num_, den_;
};

// Dense exact matrix, row-major.
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
        if (rows < 0 || cols < 0) throw PreconditionError("Mat: negative dimension");
    }
    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    Mat transpose() const;
    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(const Rat& c) const;
    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool is_zero() const;

    std::vector<Rat> apply(const std::vector<Rat>& x) const; // x.size() == cols
    std::string str() const;                                 // compact one-line form for diagnostics

  private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

struct RrefResult {
    Mat m;                       // reduced row echelon form
    int rank = 0;
    std::vector<int> pivot_cols; // increasing
};

// Fraction-free (Bareiss) elimination followed by normalization to reduced form.
RrefResult rref(const Mat& m);
int rank(const Mat& m);

// Column span of a matrix in canonical reduced column echelon form.
// Canonical form makes equality and containment decidable by direct comparison.
class Subspace {
  public:
    static Subspace zero(int ambient);
    static Subspace full(int ambient);
    static Subspace span(const Mat& columns); // ambient = columns.rows()

    int ambient() const { return ambient_; }
    int dim() const { return canon_.cols(); }
    const Mat& canon() const { return canon_; } // ambient x dim, reduced column echelon

    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && canon_ == o.canon_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool contains(const Subspace& o) const;          // o ⊆ this
    bool contains_vector(const std::vector<Rat>& v) const;

  private:
    Subspace(int ambient, Mat canon) : ambient_(ambient), canon_(std::move(canon)) {}
    int ambient_;
    Mat canon_;
};

Subspace kernel_basis(const Mat& m); // subspace of Q^cols
Subspace image_basis(const Mat& m);  // subspace of Q^rows

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

// dim(e / f); precondition f ⊆ e.
int quotient_dim(const Subspace& e, const Subspace& f);

// Existence of a finite-dimensional G with e ⊆ f + G. Trivially true in finite
// ambient dimension (take G = e); kept as an operation so callers state intent.
bool essentially_included(const Subspace& e, const Subspace& f);

// One solution x of A x = b if the system is consistent.
std::optional<std::vector<Rat>> solve(const Mat& A, const std::vector<Rat>& b);

// Inverse of a square matrix, if it is nonsingular.
std::optional<Mat> inverse(const Mat& m);

} // namespace fredop

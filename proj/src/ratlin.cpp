#include "fredop/ratlin.hpp"

#include <algorithm>
#include <sstream>

namespace fredop {

namespace {

BigInt big_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    return boost::multiprecision::gcd(a, b);
}

} // namespace

Rat::Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw PreconditionError("Rat: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = big_gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rat Rat::parse(const std::string& s) {
    auto bad = [&] { return InputError("bad rational literal: '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto parse_int = [&](const std::string& t) {
        if (t.empty() || (t.size() == 1 && (t[0] == '+' || t[0] == '-'))) throw bad();
        size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        for (; i < t.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(t[i]))) throw bad();
        return BigInt(t);
    };
    if (slash == std::string::npos) return Rat(parse_int(s));
    BigInt p = parse_int(s.substr(0, slash));
    BigInt q = parse_int(s.substr(slash + 1));
    if (q == 0) throw InputError("bad rational literal (zero denominator): '" + s + "'");
    return Rat(p, q);
}

std::string Rat::str() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
}

Rat Rat::operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rat Rat::operator+(const Rat& o) const {
    return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rat Rat::operator-(const Rat& o) const {
    return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rat Rat::operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }

Rat Rat::operator/(const Rat& o) const {
    if (o.is_zero()) throw PreconditionError("Rat: division by zero");
    return Rat(num_ * o.den_, den_ * o.num_);
}

Rat Rat::inv() const {
    if (is_zero()) throw PreconditionError("Rat: inverse of zero");
    return Rat(den_, num_);
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
    return m;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw PreconditionError("Mat: product shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Rat& y = o.at(k, j);
                if (!y.is_zero()) r.at(i, j) += x * y;
            }
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("Mat: sum shape mismatch");
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("Mat: diff shape mismatch");
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Mat Mat::scaled(const Rat& c) const {
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return x.is_zero(); });
}

std::vector<Rat> Mat::apply(const std::vector<Rat>& x) const {
    if (int(x.size()) != cols_) throw PreconditionError("Mat: apply shape mismatch");
    std::vector<Rat> y(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) y[i] += at(i, j) * x[j];
    return y;
}

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

RrefResult rref(const Mat& m) {
    const int nr = m.rows(), nc = m.cols();

    // Clear denominators row by row so elimination runs over integers.
    std::vector<std::vector<BigInt>> b(nr, std::vector<BigInt>(nc));
    for (int i = 0; i < nr; ++i) {
        BigInt l = 1;
        for (int j = 0; j < nc; ++j) l = l / big_gcd(l, m.at(i, j).den()) * m.at(i, j).den();
        for (int j = 0; j < nc; ++j) b[i][j] = m.at(i, j).num() * (l / m.at(i, j).den());
    }

    // Bareiss fraction-free forward elimination. All divisions are exact.
    std::vector<int> pivot_cols;
    BigInt prev = 1;
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int piv = -1;
        for (int i = row; i < nr; ++i)
            if (b[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(b[row], b[piv]);
        for (int i = row + 1; i < nr; ++i) {
            for (int j = col + 1; j < nc; ++j)
                b[i][j] = (b[row][col] * b[i][j] - b[i][col] * b[row][j]) / prev;
            b[i][col] = 0;
        }
        prev = b[row][col];
        pivot_cols.push_back(col);
        ++row;
    }
    const int rk = row;

    // Normalize: unit pivots, then eliminate above each pivot.
    Mat r(nr, nc);
    for (int i = 0; i < rk; ++i) {
        const BigInt& p = b[i][pivot_cols[i]];
        for (int j = pivot_cols[i]; j < nc; ++j) r.at(i, j) = Rat(b[i][j], p);
    }
    for (int i = rk - 1; i >= 0; --i)
        for (int k = 0; k < i; ++k) {
            Rat f = r.at(k, pivot_cols[i]);
            if (f.is_zero()) continue;
            for (int j = pivot_cols[i]; j < nc; ++j) r.at(k, j) -= f * r.at(i, j);
        }
    return RrefResult{std::move(r), rk, std::move(pivot_cols)};
}

int rank(const Mat& m) { return rref(m).rank; }

Subspace Subspace::zero(int ambient) { return Subspace(ambient, Mat(ambient, 0)); }

Subspace Subspace::full(int ambient) { return Subspace(ambient, Mat::identity(ambient)); }

Subspace Subspace::span(const Mat& columns) {
    // Reduced column echelon = transposed rref of the transpose, zero columns dropped.
    RrefResult r = rref(columns.transpose());
    Mat canon(columns.rows(), r.rank);
    for (int i = 0; i < r.rank; ++i)
        for (int j = 0; j < columns.rows(); ++j) canon.at(j, i) = r.m.at(i, j);
    return Subspace(columns.rows(), std::move(canon));
}

bool Subspace::contains(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw PreconditionError("Subspace: ambient mismatch");
    if (o.dim() == 0) return true;
    Mat joint(ambient_, dim() + o.dim());
    for (int i = 0; i < ambient_; ++i) {
        for (int j = 0; j < dim(); ++j) joint.at(i, j) = canon_.at(i, j);
        for (int j = 0; j < o.dim(); ++j) joint.at(i, dim() + j) = o.canon_.at(i, j);
    }
    return rank(joint) == dim();
}

bool Subspace::contains_vector(const std::vector<Rat>& v) const {
    if (int(v.size()) != ambient_) throw PreconditionError("Subspace: vector ambient mismatch");
    Mat joint(ambient_, dim() + 1);
    for (int i = 0; i < ambient_; ++i) {
        for (int j = 0; j < dim(); ++j) joint.at(i, j) = canon_.at(i, j);
        joint.at(i, dim()) = v[i];
    }
    return rank(joint) == dim();
}

Subspace kernel_basis(const Mat& m) {
    RrefResult r = rref(m);
    const int nc = m.cols();
    std::vector<int> is_pivot(nc, -1);
    for (int i = 0; i < r.rank; ++i) is_pivot[r.pivot_cols[i]] = i;
    Mat basis(nc, nc - r.rank);
    int k = 0;
    for (int f = 0; f < nc; ++f) {
        if (is_pivot[f] >= 0) continue;
        basis.at(f, k) = Rat(1);
        for (int i = 0; i < r.rank; ++i) basis.at(r.pivot_cols[i], k) = -r.m.at(i, f);
        ++k;
    }
    return Subspace::span(basis);
}

Subspace image_basis(const Mat& m) { return Subspace::span(m); }

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw PreconditionError("subspace_sum: ambient mismatch");
    Mat joint(a.ambient(), a.dim() + b.dim());
    for (int i = 0; i < a.ambient(); ++i) {
        for (int j = 0; j < a.dim(); ++j) joint.at(i, j) = a.canon().at(i, j);
        for (int j = 0; j < b.dim(); ++j) joint.at(i, a.dim() + j) = b.canon().at(i, j);
    }
    return Subspace::span(joint);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw PreconditionError("subspace_intersect: ambient mismatch");
    const int p = a.dim(), q = b.dim();
    if (p == 0 || q == 0) return Subspace::zero(a.ambient());
    // x in both spans iff A u = B w for some coefficients; read u off ker[A | -B].
    Mat joint(a.ambient(), p + q);
    for (int i = 0; i < a.ambient(); ++i) {
        for (int j = 0; j < p; ++j) joint.at(i, j) = a.canon().at(i, j);
        for (int j = 0; j < q; ++j) joint.at(i, p + j) = -b.canon().at(i, j);
    }
    Subspace null = kernel_basis(joint);
    Mat gens(a.ambient(), null.dim());
    for (int k = 0; k < null.dim(); ++k)
        for (int i = 0; i < a.ambient(); ++i) {
            Rat s;
            for (int j = 0; j < p; ++j) s += a.canon().at(i, j) * null.canon().at(j, k);
            gens.at(i, k) = s;
        }
    return Subspace::span(gens);
}

int quotient_dim(const Subspace& e, const Subspace& f) {
    if (!e.contains(f)) throw PreconditionError("quotient_dim: divisor not contained in dividend");
    return e.dim() - f.dim();
}

bool essentially_included(const Subspace& e, const Subspace& f) {
    if (e.ambient() != f.ambient()) throw PreconditionError("essentially_included: ambient mismatch");
    return true;
}

std::optional<std::vector<Rat>> solve(const Mat& A, const std::vector<Rat>& b) {
    if (int(b.size()) != A.rows()) throw PreconditionError("solve: rhs length mismatch");
    Mat aug(A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = b[i];
    }
    RrefResult r = rref(aug);
    for (int c : r.pivot_cols)
        if (c == A.cols()) return std::nullopt; // inconsistent
    std::vector<Rat> x(A.cols());
    for (int i = 0; i < r.rank; ++i) x[r.pivot_cols[i]] = r.m.at(i, A.cols());
    return x;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw PreconditionError("inverse: matrix not square");
    int n = m.rows();
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = Rat(1);
    }
    RrefResult r = rref(aug);
    if (r.rank < n || r.pivot_cols[n - 1] != n - 1) return std::nullopt;
    Mat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = r.m.at(i, n + j);
    return inv;
}

} // namespace fredop

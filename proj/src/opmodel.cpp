#include "fredop/opmodel.hpp"

#include <algorithm>
#include <sstream>

namespace fredop {

namespace {

void internal_check(bool ok, const char* msg) {
    if (!ok) throw std::logic_error(std::string("internal invariant violated: ") + msg);
}

Mat trim_window(const Mat& w) {
    int need = 0;
    for (int i = 0; i < w.rows(); ++i)
        for (int j = 0; j < w.cols(); ++j)
            if (!w.at(i, j).is_zero()) need = std::max(need, std::max(i, j) + 1);
    if (need == w.rows() && need == w.cols()) return w;
    Mat r(need, need);
    for (int i = 0; i < need; ++i)
        for (int j = 0; j < need; ++j)
            if (i < w.rows() && j < w.cols()) r.at(i, j) = w.at(i, j);
    return r;
}

bool is_identity_band(const Operator& t) {
    if (!t.is_band()) return false;
    const ShiftBand& s = t.as_band();
    return s.lead == Rat(1) && s.fwd == 0 && s.bwd == 0 && s.window.rows() == 0;
}

long long cantor_flat(long long i, long long j) {
    long long s = i + j;
    return s * (s + 1) / 2 + j;
}

std::pair<long long, long long> cantor_unflat(long long n) {
    long long s = 0;
    while ((s + 1) * (s + 2) / 2 <= n) ++s;
    long long j = n - s * (s + 1) / 2;
    return {s - j, j};
}

// Direct sum coordinate layout: matrix parts own contiguous blocks in part
// order; the remaining (sequence-space) parts are lane-interleaved after them.
struct SumLayout {
    int finite_total = 0;
    std::vector<int> part_of_block;  // matrix parts, in order
    std::vector<int> block_offset;   // parallel to part_of_block
    std::vector<int> lane_part;      // non-matrix parts, in order
};

SumLayout sum_layout(const DirectSumOp& s) {
    SumLayout l;
    for (int p = 0; p < int(s.parts.size()); ++p) {
        if (s.parts[p].is_matrix()) {
            l.part_of_block.push_back(p);
            l.block_offset.push_back(l.finite_total);
            l.finite_total += s.parts[p].as_matrix().m.rows();
        } else {
            l.lane_part.push_back(p);
        }
    }
    return l;
}

} // namespace

std::string Verdict::str() const {
    switch (state) {
        case Yes: return "yes";
        case No: return "no";
        default: return "unknown(" + std::to_string(bound) + ")";
    }
}

Verdict verdict_and(const Verdict& a, const Verdict& b) {
    if (a.is_no() || b.is_no()) return Verdict::no();
    if (a.is_unknown()) return a;
    if (b.is_unknown()) return b;
    return Verdict::yes();
}

Verdict verdict_or(const Verdict& a, const Verdict& b) {
    if (a.is_yes() || b.is_yes()) return Verdict::yes();
    if (a.is_unknown()) return a;
    if (b.is_unknown()) return b;
    return Verdict::no();
}

ExtNat ExtNat::finite(long long v) {
    if (v < 0) throw PreconditionError("ExtNat: negative value");
    ExtNat e;
    e.v_ = v;
    return e;
}

long long ExtNat::value() const {
    if (inf_) throw PreconditionError("ExtNat: value() of infinity");
    return v_;
}

ExtNat ExtNat::operator+(const ExtNat& o) const {
    if (inf_ || o.inf_) return infinite();
    return finite(v_ + o.v_);
}

std::string ExtNat::str() const { return inf_ ? "inf" : std::to_string(v_); }

ExtInt ExtInt::finite(long long v) {
    ExtInt e;
    e.v_ = v;
    return e;
}

long long ExtInt::value() const {
    if (kind_ != Finite) throw PreconditionError("ExtInt: value() of infinity");
    return v_;
}

ExtInt ExtInt::operator+(const ExtInt& o) const {
    if (kind_ == Finite && o.kind_ == Finite) return finite(v_ + o.v_);
    if (kind_ == Finite) return o;
    if (o.kind_ == Finite) return *this;
    if (kind_ == o.kind_) return *this;
    throw PreconditionError("ExtInt: (+inf) + (-inf) is undefined");
}

std::string ExtInt::str() const {
    switch (kind_) {
        case PlusInf: return "+inf";
        case MinusInf: return "-inf";
        default: return std::to_string(v_);
    }
}

FinVec::FinVec(std::vector<Rat> coords) : c_(std::move(coords)) {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FinVec FinVec::unit(int i) {
    if (i < 0) throw PreconditionError("FinVec: negative index");
    std::vector<Rat> c(i + 1);
    c[i] = Rat(1);
    return FinVec(std::move(c));
}

const Rat& FinVec::at(int i) const {
    static const Rat zero;
    return (i >= 0 && i < int(c_.size())) ? c_[i] : zero;
}

FinVec FinVec::operator+(const FinVec& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = at(int(i)) + o.at(int(i));
    return FinVec(std::move(r));
}

FinVec FinVec::operator-(const FinVec& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = at(int(i)) - o.at(int(i));
    return FinVec(std::move(r));
}

FinVec FinVec::scaled(const Rat& k) const {
    std::vector<Rat> r(c_);
    for (Rat& v : r) v *= k;
    return FinVec(std::move(r));
}

std::string FinVec::str() const {
    std::string s = "(";
    for (size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + c_[i].str();
    return s + ")";
}

Operator Operator::matrix(Mat m) {
    if (m.rows() != m.cols()) throw PreconditionError("matrix operator must be square");
    return Operator(Node(MatrixOp{std::move(m)}));
}

Operator Operator::shift_band(Rat lead, int fwd, int bwd, Mat window) {
    if (fwd < 0 || bwd < 0) throw PreconditionError("shift_band: negative monomial exponent");
    if (window.rows() != window.cols()) throw PreconditionError("shift_band: window must be square");
    if (lead.is_zero()) {
        fwd = 0;
        bwd = 0;
    }
    int m = std::min(fwd, bwd);
    if (m > 0) {
        // S+^f S-^b = S+^(f-m) S-^(b-m) - sum_{i=1..m} E_{f-i, b-i}
        int need = std::max({window.rows(), fwd, bwd});
        Mat w(need, need);
        for (int i = 0; i < window.rows(); ++i)
            for (int j = 0; j < window.cols(); ++j) w.at(i, j) = window.at(i, j);
        for (int i = 1; i <= m; ++i) w.at(fwd - i, bwd - i) -= lead;
        fwd -= m;
        bwd -= m;
        window = std::move(w);
    }
    return Operator(Node(ShiftBand{std::move(lead), fwd, bwd, trim_window(window)}));
}

Operator Operator::forward_shift(int n) { return shift_band(Rat(1), n, 0, Mat(0, 0)); }

Operator Operator::backward_shift(int n) { return shift_band(Rat(1), 0, n, Mat(0, 0)); }

Operator Operator::window_only(Mat window) { return shift_band(Rat(0), 0, 0, std::move(window)); }

Operator Operator::omega(bool forward, int power) {
    if (power < 1) throw PreconditionError("omega: power must be >= 1");
    return Operator(Node(OmegaShift{forward, power}));
}

Operator Operator::direct_sum(std::vector<Operator> parts) {
    std::vector<Operator> flat;
    for (Operator& p : parts) {
        if (p.is_sum()) {
            for (const Operator& q : p.as_sum().parts) flat.push_back(q);
        } else {
            flat.push_back(std::move(p));
        }
    }
    if (flat.empty()) throw PreconditionError("direct_sum: no parts");
    if (flat.size() == 1) return flat[0];
    return Operator(Node(DirectSumOp{std::move(flat)}));
}

bool Operator::operator==(const Operator& o) const {
    if (n_ == o.n_) return true;
    if (n_->index() != o.n_->index()) return false;
    if (is_matrix()) return as_matrix().m == o.as_matrix().m;
    if (is_band()) {
        const ShiftBand &a = as_band(), &b = o.as_band();
        return a.lead == b.lead && a.fwd == b.fwd && a.bwd == b.bwd && a.window == b.window;
    }
    if (is_omega()) {
        const OmegaShift &a = as_omega(), &b = o.as_omega();
        return a.forward == b.forward && a.power == b.power;
    }
    const auto &a = as_sum().parts, &b = o.as_sum().parts;
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

std::string Operator::str() const {
    if (is_matrix()) return "matrix" + as_matrix().m.str();
    if (is_band()) {
        const ShiftBand& s = as_band();
        std::ostringstream os;
        os << "band(lead=" << s.lead.str() << ",fwd=" << s.fwd << ",bwd=" << s.bwd
           << ",window=" << s.window.str() << ")";
        return os.str();
    }
    if (is_omega()) {
        const OmegaShift& w = as_omega();
        return std::string("omega(") + (w.forward ? "fwd" : "bwd") + "^" + std::to_string(w.power) + ")";
    }
    std::string s = "sum(";
    const auto& parts = as_sum().parts;
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? " | " : "") + parts[i].str();
    return s + ")";
}

namespace {

FinVec apply_band(const ShiftBand& s, const FinVec& x) {
    const int W = s.window.rows();
    int out = W;
    if (!s.lead.is_zero()) out = std::max(out, x.support_bound() - s.bwd + s.fwd);
    std::vector<Rat> y(std::max(out, 0));
    if (!s.lead.is_zero())
        for (int j = s.bwd; j < x.support_bound(); ++j) {
            const Rat& v = x.at(j);
            if (!v.is_zero()) y[j - s.bwd + s.fwd] += s.lead * v;
        }
    for (int i = 0; i < W; ++i)
        for (int j = 0; j < std::min(W, x.support_bound()); ++j)
            if (!s.window.at(i, j).is_zero()) y[i] += s.window.at(i, j) * x.at(j);
    return FinVec(std::move(y));
}

FinVec apply_omega(const OmegaShift& w, const FinVec& x) {
    std::vector<Rat> y;
    auto put = [&y](long long n, const Rat& v) {
        if (n >= static_cast<long long>(y.size())) y.resize(n + 1);
        y[n] += v;
    };
    for (int n = 0; n < x.support_bound(); ++n) {
        const Rat& v = x.at(n);
        if (v.is_zero()) continue;
        auto [i, j] = cantor_unflat(n);
        if (w.forward) {
            put(cantor_flat(i + w.power, j), v);
        } else if (i >= w.power) {
            put(cantor_flat(i - w.power, j), v);
        }
    }
    return FinVec(std::move(y));
}

} // namespace

FinVec apply(const Operator& t, const FinVec& x) {
    if (t.is_matrix()) {
        const Mat& m = t.as_matrix().m;
        if (x.support_bound() > m.rows())
            throw PreconditionError("apply: vector outside matrix domain");
        std::vector<Rat> xv(m.cols());
        for (int i = 0; i < x.support_bound(); ++i) xv[i] = x.at(i);
        return FinVec(m.apply(xv));
    }
    if (t.is_band()) return apply_band(t.as_band(), x);
    if (t.is_omega()) return apply_omega(t.as_omega(), x);

    const DirectSumOp& s = t.as_sum();
    SumLayout l = sum_layout(s);
    const int lanes = int(l.lane_part.size());
    // split t into per-part inputs
    std::vector<std::vector<Rat>> in(s.parts.size());
    for (int g = 0; g < x.support_bound(); ++g) {
        const Rat& v = x.at(g);
        if (v.is_zero()) continue;
        if (g < l.finite_total) {
            for (size_t b = 0; b < l.part_of_block.size(); ++b) {
                int off = l.block_offset[b];
                int d = s.parts[l.part_of_block[b]].as_matrix().m.rows();
                if (g >= off && g < off + d) {
                    auto& dst = in[l.part_of_block[b]];
                    if (int(dst.size()) <= g - off) dst.resize(g - off + 1);
                    dst[g - off] = v;
                    break;
                }
            }
        } else {
            if (lanes == 0) throw PreconditionError("apply: vector outside direct sum domain");
            int r = (g - l.finite_total) % lanes;
            int q = (g - l.finite_total) / lanes;
            auto& dst = in[l.lane_part[r]];
            if (int(dst.size()) <= q) dst.resize(q + 1);
            dst[q] = v;
        }
    }
    // apply parts and reassemble
    std::vector<Rat> y;
    auto put = [&y](int n, const Rat& v) {
        if (n >= int(y.size())) y.resize(n + 1);
        y[n] += v;
    };
    for (size_t b = 0; b < l.part_of_block.size(); ++b) {
        int p = l.part_of_block[b];
        FinVec out = apply(s.parts[p], FinVec(std::move(in[p])));
        for (int i = 0; i < out.support_bound(); ++i)
            if (!out.at(i).is_zero()) put(l.block_offset[b] + i, out.at(i));
    }
    for (int r = 0; r < lanes; ++r) {
        int p = l.lane_part[r];
        FinVec out = apply(s.parts[p], FinVec(std::move(in[p])));
        for (int q = 0; q < out.support_bound(); ++q)
            if (!out.at(q).is_zero()) put(l.finite_total + q * lanes + r, out.at(q));
    }
    return FinVec(std::move(y));
}

namespace {

Operator band_compose(const ShiftBand& s, const ShiftBand& t) {
    Rat lead = s.lead * t.lead;
    const int m1 = std::min(s.bwd, t.fwd); // S-^bs S+^at collapses exactly
    const int A = s.fwd + t.fwd - m1;
    const int B = s.bwd + t.bwd - m1;
    const int Ws = s.window.rows(), Wt = t.window.rows();
    int need = std::max({0, Wt - s.bwd + s.fwd, Wt, Ws, Ws + t.bwd - t.fwd});
    Mat w(need, need);
    // Ms * Ft: window rows travel through the left monomial
    if (!s.lead.is_zero())
        for (int r = std::max(s.fwd, 0); r < need; ++r) {
            int i0 = r + s.bwd - s.fwd;
            if (i0 < 0 || i0 >= Wt) continue;
            for (int j = 0; j < Wt; ++j)
                if (!t.window.at(i0, j).is_zero()) w.at(r, j) += s.lead * t.window.at(i0, j);
        }
    // Fs * Mt: window columns travel through the right monomial
    if (!t.lead.is_zero())
        for (int c = t.bwd; c < need; ++c) {
            int j0 = c - t.bwd + t.fwd;
            if (j0 < 0 || j0 >= Ws) continue;
            for (int i = 0; i < Ws; ++i)
                if (!s.window.at(i, j0).is_zero()) w.at(i, c) += t.lead * s.window.at(i, j0);
        }
    // Fs * Ft
    for (int i = 0; i < Ws; ++i)
        for (int k = 0; k < std::min(Ws, Wt); ++k) {
            if (s.window.at(i, k).is_zero()) continue;
            for (int j = 0; j < Wt; ++j)
                if (!t.window.at(k, j).is_zero()) w.at(i, j) += s.window.at(i, k) * t.window.at(k, j);
        }
    // the constructor absorbs S+^A S-^B into normal form with window corrections
    return Operator::shift_band(std::move(lead), A, B, std::move(w));
}

} // namespace

Operator compose(const Operator& s, const Operator& t) {
    if (s.is_matrix() && t.is_matrix()) {
        if (s.as_matrix().m.rows() != t.as_matrix().m.rows())
            throw PreconditionError("compose: matrix dimensions differ");
        return Operator::matrix(s.as_matrix().m * t.as_matrix().m);
    }
    if (s.is_band() && t.is_band()) return band_compose(s.as_band(), t.as_band());
    if (s.is_omega() && t.is_omega()) {
        const OmegaShift &a = s.as_omega(), &b = t.as_omega();
        if (a.forward != b.forward)
            throw PreconditionError("compose: omega shifts compose only with the same direction");
        return Operator::omega(a.forward, a.power + b.power);
    }
    if (s.is_omega() && is_identity_band(t)) return s;
    if (t.is_omega() && is_identity_band(s)) return t;
    if (s.is_sum() && t.is_sum()) {
        const auto &a = s.as_sum().parts, &b = t.as_sum().parts;
        if (a.size() != b.size()) throw PreconditionError("compose: direct sums differ in arity");
        std::vector<Operator> parts;
        parts.reserve(a.size());
        for (size_t i = 0; i < a.size(); ++i) parts.push_back(compose(a[i], b[i]));
        return Operator::direct_sum(std::move(parts));
    }
    throw PreconditionError("compose: incompatible variants");
}

Operator transpose(const Operator& t) {
    if (t.is_matrix()) return Operator::matrix(t.as_matrix().m.transpose());
    if (t.is_band()) {
        const ShiftBand& s = t.as_band();
        return Operator::shift_band(s.lead, s.bwd, s.fwd, s.window.transpose());
    }
    if (t.is_omega()) {
        const OmegaShift& w = t.as_omega();
        return Operator::omega(!w.forward, w.power);
    }
    std::vector<Operator> parts;
    for (const Operator& p : t.as_sum().parts) parts.push_back(transpose(p));
    return Operator::direct_sum(std::move(parts));
}

Operator identity_like(const Operator& t) {
    if (t.is_matrix()) return Operator::matrix(Mat::identity(t.as_matrix().m.rows()));
    if (t.is_band() || t.is_omega()) return Operator::shift_band(Rat(1), 0, 0, Mat(0, 0));
    std::vector<Operator> parts;
    for (const Operator& p : t.as_sum().parts) parts.push_back(identity_like(p));
    return Operator::direct_sum(std::move(parts));
}

Operator power(const Operator& t, int n) {
    if (n < 0) throw PreconditionError("power: negative exponent");
    if (n == 0) return identity_like(t);
    Operator acc = t;
    for (int i = 1; i < n; ++i) acc = compose(acc, t);
    return acc;
}

Operator scaled(const Operator& t, const Rat& k) {
    if (t.is_matrix()) return Operator::matrix(t.as_matrix().m.scaled(k));
    if (t.is_band()) {
        const ShiftBand& s = t.as_band();
        return Operator::shift_band(s.lead * k, s.fwd, s.bwd, s.window.scaled(k));
    }
    if (t.is_omega()) {
        if (k == Rat(1)) return t;
        throw PreconditionError("scaled: omega lanes cannot be scaled in the model class");
    }
    std::vector<Operator> parts;
    for (const Operator& p : t.as_sum().parts) parts.push_back(scaled(p, k));
    return Operator::direct_sum(std::move(parts));
}

Operator op_add(const Operator& a, const Operator& b) {
    if (a.is_matrix() && b.is_matrix()) {
        if (a.as_matrix().m.rows() != b.as_matrix().m.rows())
            throw PreconditionError("op_add: matrix dimensions differ");
        return Operator::matrix(a.as_matrix().m + b.as_matrix().m);
    }
    if (a.is_band() && b.is_band()) {
        const ShiftBand &s = a.as_band(), &t = b.as_band();
        bool same_monomial = s.fwd == t.fwd && s.bwd == t.bwd;
        if (!(s.lead.is_zero() || t.lead.is_zero() || same_monomial))
            throw PreconditionError("op_add: band sum leaves the model class");
        int fwd = s.lead.is_zero() ? t.fwd : s.fwd;
        int bwd = s.lead.is_zero() ? t.bwd : s.bwd;
        int W = std::max(s.window.rows(), t.window.rows());
        Mat w(W, W);
        for (int i = 0; i < W; ++i)
            for (int j = 0; j < W; ++j) {
                if (i < s.window.rows() && j < s.window.cols()) w.at(i, j) += s.window.at(i, j);
                if (i < t.window.rows() && j < t.window.cols()) w.at(i, j) += t.window.at(i, j);
            }
        return Operator::shift_band(s.lead + t.lead, fwd, bwd, std::move(w));
    }
    auto omega_plus = [](const Operator& om, const Operator& other) {
        if (other.is_band() && other.as_band().lead.is_zero() && other.as_band().window.rows() == 0)
            return om;
        throw PreconditionError("op_add: omega admits only the zero finite-rank perturbation");
    };
    if (a.is_omega()) return omega_plus(a, b);
    if (b.is_omega()) return omega_plus(b, a);
    if (a.is_sum() && b.is_sum()) {
        const auto &p = a.as_sum().parts, &q = b.as_sum().parts;
        if (p.size() != q.size()) throw PreconditionError("op_add: direct sums differ in arity");
        std::vector<Operator> parts;
        for (size_t i = 0; i < p.size(); ++i) parts.push_back(op_add(p[i], q[i]));
        return Operator::direct_sum(std::move(parts));
    }
    throw PreconditionError("op_add: incompatible variants");
}

namespace {

// T restricted to domain coordinates [0, M); rows cover every coordinate the
// restriction can hit, so its kernel is ker(T) ∩ span(e_0..e_{M-1}).
Mat band_trunc(const ShiftBand& s, int M) {
    const int W = s.window.rows();
    int R = W;
    if (!s.lead.is_zero()) R = std::max(R, M - s.bwd + s.fwd);
    R = std::max(R, 0);
    Mat m(R, M);
    if (!s.lead.is_zero())
        for (int j = s.bwd; j < M; ++j) m.at(j - s.bwd + s.fwd, j) += s.lead;
    for (int i = 0; i < std::min(W, R); ++i)
        for (int j = 0; j < std::min(W, M); ++j) m.at(i, j) += s.window.at(i, j);
    return m;
}

int band_kernel_truncation(const ShiftBand& s) {
    return s.window.rows() + s.fwd + s.bwd + 1;
}

ExtNat alpha_band(const ShiftBand& s) {
    if (s.lead.is_zero()) return ExtNat::infinite(); // finite rank on infinite dimension
    const int N = band_kernel_truncation(s);
    int n1 = N - rank(band_trunc(s, N));
    int n2 = (N + 1) - rank(band_trunc(s, N + 1));
    internal_check(n1 == n2, "band kernel dimension failed to stabilize across truncations");
    return ExtNat::finite(n1);
}

} // namespace

ExtNat alpha(const Operator& t) {
    if (t.is_matrix()) {
        const Mat& m = t.as_matrix().m;
        return ExtNat::finite(m.rows() - rank(m));
    }
    if (t.is_band()) return alpha_band(t.as_band());
    if (t.is_omega()) return t.as_omega().forward ? ExtNat::finite(0) : ExtNat::infinite();
    ExtNat total = ExtNat::finite(0);
    for (const Operator& p : t.as_sum().parts) total = total + alpha(p);
    return total;
}

ExtNat beta(const Operator& t) { return alpha(transpose(t)); }

ExtInt index_of(const Operator& t) {
    ExtNat a = alpha(t), b = beta(t);
    if (a.is_infinite() && b.is_infinite())
        throw PreconditionError("index: operator is not semi-Fredholm");
    ExtInt idx;
    if (a.is_infinite()) idx = ExtInt::plus_inf();
    else if (b.is_infinite()) idx = ExtInt::minus_inf();
    else idx = ExtInt::finite(a.value() - b.value());
    if (t.is_band() && !t.as_band().lead.is_zero()) {
        // the band index must equal bwd - fwd; disagreement means a solver bug
        internal_check(idx == ExtInt::finite(t.as_band().bwd - t.as_band().fwd),
                       "band index disagrees with monomial weight");
    }
    return idx;
}

Verdict is_upper_sf(const Operator& t) {
    return alpha(t).is_infinite() ? Verdict::no() : Verdict::yes();
}

Verdict is_lower_sf(const Operator& t) {
    return beta(t).is_infinite() ? Verdict::no() : Verdict::yes();
}

Verdict is_semi_fredholm(const Operator& t) { return verdict_or(is_upper_sf(t), is_lower_sf(t)); }

Verdict is_fredholm(const Operator& t) { return verdict_and(is_upper_sf(t), is_lower_sf(t)); }

bool is_finite_rank(const Operator& t) {
    if (t.is_matrix()) return true;
    if (t.is_band()) return t.as_band().lead.is_zero();
    if (t.is_omega()) return false;
    for (const Operator& p : t.as_sum().parts)
        if (!is_finite_rank(p)) return false;
    return true;
}

bool range_closed(const Operator&) { return true; }

std::string range_closed_reason(const Operator& t) {
    if (t.is_matrix()) return "finite-dimensional range";
    if (t.is_band())
        return t.as_band().lead.is_zero()
                   ? "finite-rank range"
                   : "band range contains a coordinate tail and a finite-dimensional head";
    if (t.is_omega()) return "multiplicity shift range is a coordinate subspace";
    return "direct sum of closed ranges";
}

std::string layout_signature(const Operator& t) {
    if (t.is_matrix()) return "matrix:" + std::to_string(t.as_matrix().m.rows());
    if (t.is_band()) {
        const ShiftBand& s = t.as_band();
        return "band:lead=" + s.lead.str() + ":f=" + std::to_string(s.fwd) +
               ":b=" + std::to_string(s.bwd);
    }
    if (t.is_omega()) {
        const OmegaShift& w = t.as_omega();
        return std::string("omega:") + (w.forward ? "fwd" : "bwd") + "^" + std::to_string(w.power);
    }
    std::string s = "sum(";
    const auto& parts = t.as_sum().parts;
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + layout_signature(parts[i]);
    return s + ")";
}

bool finite_rank_compatible(const Operator& t, const Operator& f) {
    if (t.is_matrix())
        return f.is_matrix() && f.as_matrix().m.rows() == t.as_matrix().m.rows();
    if (t.is_band()) return f.is_band() && f.as_band().lead.is_zero();
    if (t.is_omega())
        return f.is_band() && f.as_band().lead.is_zero() && f.as_band().window.rows() == 0;
    if (!f.is_sum()) return false;
    const auto &p = t.as_sum().parts, &q = f.as_sum().parts;
    if (p.size() != q.size()) return false;
    for (size_t i = 0; i < p.size(); ++i)
        if (!finite_rank_compatible(p[i], q[i])) return false;
    return true;
}

std::vector<FinVec> kernel_vectors(const Operator& t) {
    Subspace k = Subspace::zero(0);
    if (t.is_matrix()) {
        k = kernel_basis(t.as_matrix().m);
    } else if (t.is_band() && !t.as_band().lead.is_zero()) {
        const ShiftBand& s = t.as_band();
        const int N = band_kernel_truncation(s);
        Subspace k1 = kernel_basis(band_trunc(s, N));
        Subspace k2 = kernel_basis(band_trunc(s, N + 1));
        internal_check(k1.dim() == k2.dim(), "band kernel dimension failed to stabilize across truncations");
        k = std::move(k1);
    } else {
        throw PreconditionError("kernel_vectors: supported for Matrix and bands with nonzero lead");
    }
    std::vector<FinVec> out;
    out.reserve(k.dim());
    for (int j = 0; j < k.dim(); ++j) {
        std::vector<Rat> v(k.ambient());
        for (int i = 0; i < k.ambient(); ++i) v[i] = k.canon().at(i, j);
        out.emplace_back(std::move(v));
    }
    return out;
}

namespace {

int pivot_row(const FinVec& v) {
    for (int i = 0; i < v.support_bound(); ++i)
        if (!v.at(i).is_zero()) return i;
    throw PreconditionError("pivot_row: zero vector");
}

// projection onto the span of a canonical (column echelon) basis, as a window/matrix
Mat projection_from_canonical(const std::vector<FinVec>& basis, int size) {
    Mat p(size, size);
    for (const FinVec& col : basis) {
        int r = pivot_row(col);
        for (int i = 0; i < col.support_bound(); ++i)
            if (!col.at(i).is_zero()) p.at(i, r) = col.at(i);
    }
    return p;
}

} // namespace

QuasiInverse quasi_inverse(const Operator& t) {
    if (t.is_band() && !t.as_band().lead.is_zero()) {
        const ShiftBand& s = t.as_band();
        Operator u = Operator::shift_band(s.lead.inv(), s.bwd, s.fwd, Mat(0, 0));
        Operator tu = compose(t, u);
        internal_check(tu.is_band() && tu.as_band().lead == Rat(1) && tu.as_band().fwd == 0 &&
                           tu.as_band().bwd == 0,
                       "quasi inverse composition must be identity plus a window");
        Operator k = Operator::window_only(tu.as_band().window);
        std::vector<FinVec> kb = kernel_vectors(t);
        int size = 0;
        for (const FinVec& v : kb) size = std::max(size, v.support_bound());
        Operator p = Operator::window_only(projection_from_canonical(kb, size));
        return {std::move(u), std::move(k), std::move(p)};
    }
    if (t.is_matrix()) {
        const Mat& m = t.as_matrix().m;
        const int d = m.rows();
        Subspace im = image_basis(m);
        std::vector<FinVec> cols;
        for (int j = 0; j < im.dim(); ++j) {
            std::vector<Rat> v(d);
            for (int i = 0; i < d; ++i) v[i] = im.canon().at(i, j);
            cols.emplace_back(std::move(v));
        }
        Mat pr = projection_from_canonical(cols, d); // projection onto R(t)
        Mat u(d, d);
        for (int j = 0; j < d; ++j) {
            std::vector<Rat> rhs(d);
            for (int i = 0; i < d; ++i) rhs[i] = pr.at(i, j);
            auto x = solve(m, rhs);
            internal_check(x.has_value(), "projection column must lie in the range");
            for (int i = 0; i < d; ++i) u.at(i, j) = (*x)[i];
        }
        Mat k = pr - Mat::identity(d);
        std::vector<FinVec> kb = kernel_vectors(t);
        Mat p = projection_from_canonical(kb, d);
        return {Operator::matrix(std::move(u)), Operator::matrix(std::move(k)),
                Operator::matrix(std::move(p))};
    }
    throw PreconditionError("quasi_inverse: supported for Matrix and bands with nonzero lead");
}

WeylParts weyl_decompose(const Operator& t) {
    bool ok = t.is_matrix() ||
              (t.is_band() && !t.as_band().lead.is_zero() && t.as_band().fwd == 0 && t.as_band().bwd == 0);
    if (!ok)
        throw PreconditionError(
            "weyl_decompose: needs a Matrix or a balanced band (fwd = bwd = 0, nonzero lead)");
    ExtNat a = alpha(t), b = beta(t);
    internal_check(!a.is_infinite() && a == b, "weyl_decompose precondition: alpha = beta finite");

    std::vector<FinVec> ker = kernel_vectors(t);
    std::vector<FinVec> coker = kernel_vectors(transpose(t));
    internal_check(int(ker.size()) == int(coker.size()), "kernel/cokernel bases must pair up");

    int size = t.is_matrix() ? t.as_matrix().m.rows() : 0;
    for (const FinVec& v : ker) size = std::max(size, v.support_bound());
    for (const FinVec& v : coker) size = std::max(size, v.support_bound());
    Mat w(size, size);
    for (size_t j = 0; j < ker.size(); ++j) w.at(pivot_row(coker[j]), pivot_row(ker[j])) = Rat(1);

    Operator wop = t.is_matrix() ? Operator::matrix(w) : Operator::window_only(w);
    Operator v = op_add(t, wop);
    Operator f = scaled(wop, Rat(-1));
    internal_check(alpha(v) == ExtNat::finite(0) && beta(v) == ExtNat::finite(0),
                   "weyl correction must produce an invertible operator");
    return {std::move(v), std::move(f)};
}

Rat matrix_sup_norm(const Mat& m) {
    Rat best;
    for (int i = 0; i < m.rows(); ++i) {
        Rat s;
        for (int j = 0; j < m.cols(); ++j) s += m.at(i, j).abs();
        if (s > best) best = s;
    }
    return best;
}

} // namespace fredop

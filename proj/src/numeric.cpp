#include "finsp/numeric.hpp"

#include <algorithm>
#include <sstream>

namespace finsp {

std::vector<std::vector<long>> Window::lattice() const {
    std::vector<std::vector<long>> out;
    if (box.empty()) {
        out.push_back({});
        return out;
    }
    std::vector<long> cur(box.size());
    for (auto& [lo, hi] : box)
        if (lo > hi) return out;
    for (size_t i = 0; i < box.size(); ++i) cur[i] = box[i].first;
    while (true) {
        out.push_back(cur);
        size_t i = box.size();
        while (i > 0) {
            --i;
            if (cur[i] < box[i].second) {
                ++cur[i];
                for (size_t j = i + 1; j < box.size(); ++j) cur[j] = box[j].first;
                break;
            }
            if (i == 0) return out;
        }
    }
}

ZMat ZMat::identity(int n) {
    ZMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool ZMat::is_zero() const {
    for (auto& x : a)
        if (x != 0) return false;
    return true;
}

ZMat ZMat::mul(const ZMat& o) const {
    if (cols != o.rows) throw Error("ZMat::mul: dimension mismatch");
    ZMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

ZMat ZMat::hcat(const ZMat& o) const {
    if (rows != o.rows) throw Error("ZMat::hcat: row mismatch");
    ZMat r(rows, cols + o.cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) r(i, j) = (*this)(i, j);
        for (int j = 0; j < o.cols; ++j) r(i, cols + j) = o(i, j);
    }
    return r;
}

ZMat ZMat::vcat(const ZMat& o) const {
    if (cols != o.cols) throw Error("ZMat::vcat: col mismatch");
    ZMat r(rows + o.rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r(i, j) = (*this)(i, j);
    for (int i = 0; i < o.rows; ++i)
        for (int j = 0; j < cols; ++j) r(rows + i, j) = o(i, j);
    return r;
}

ZMat ZMat::transpose() const {
    ZMat r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ZMat ZMat::col_slice(int from, int to) const {
    ZMat r(rows, to - from);
    for (int i = 0; i < rows; ++i)
        for (int j = from; j < to; ++j) r(i, j - from) = (*this)(i, j);
    return r;
}

ZMat ZMat::row_slice(int from, int to) const {
    ZMat r(to - from, cols);
    for (int i = from; i < to; ++i)
        for (int j = 0; j < cols; ++j) r(i - from, j) = (*this)(i, j);
    return r;
}

ZMat ZMat::neg() const {
    ZMat r = *this;
    for (auto& x : r.a) x = -x;
    return r;
}

std::string ZMat::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows; ++i) {
        os << (i ? "; " : "[");
        for (int j = 0; j < cols; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
    }
    os << "]";
    return os.str();
}

namespace {

void swap_rows(ZMat& m, int i, int j) {
    for (int c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}
void swap_cols(ZMat& m, int i, int j) {
    for (int r = 0; r < m.rows; ++r) std::swap(m(r, i), m(r, j));
}
void add_row(ZMat& m, int dst, int src, const Int& f) {
    for (int c = 0; c < m.cols; ++c) m(dst, c) += f * m(src, c);
}
void add_col(ZMat& m, int dst, int src, const Int& f) {
    for (int r = 0; r < m.rows; ++r) m(r, dst) += f * m(r, src);
}
void neg_row(ZMat& m, int i) {
    for (int c = 0; c < m.cols; ++c) m(i, c) = -m(i, c);
}

}  // namespace

SnfResult snf(const ZMat& A) {
    SnfResult res;
    res.d = A;
    res.u = ZMat::identity(A.rows);
    res.v = ZMat::identity(A.cols);
    ZMat& d = res.d;
    ZMat& u = res.u;
    ZMat& v = res.v;
    const int n = std::min(A.rows, A.cols);

    for (int s = 0; s < n; ++s) {
        // find a pivot: smallest nonzero |entry| in the lower-right block
        auto find_pivot = [&](int& pi, int& pj) -> bool {
            bool found = false;
            Int best;
            for (int i = s; i < d.rows; ++i)
                for (int j = s; j < d.cols; ++j) {
                    if (d(i, j) == 0) continue;
                    Int ab = abs(d(i, j));
                    if (!found || ab < best) {
                        best = ab;
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            return found;
        };

        while (true) {
            int pi, pj;
            if (!find_pivot(pi, pj)) goto done_stage;
            if (pi != s) { swap_rows(d, s, pi); swap_rows(u, s, pi); }
            if (pj != s) { swap_cols(d, s, pj); swap_cols(v, s, pj); }

            bool dirty = false;
            for (int i = s + 1; i < d.rows; ++i) {
                if (d(i, s) == 0) continue;
                Int q = d(i, s) / d(s, s);
                if (q != 0) { add_row(d, i, s, -q); add_row(u, i, s, -q); }
                if (d(i, s) != 0) dirty = true;
            }
            for (int j = s + 1; j < d.cols; ++j) {
                if (d(s, j) == 0) continue;
                Int q = d(s, j) / d(s, s);
                if (q != 0) { add_col(d, j, s, -q); add_col(v, j, s, -q); }
                if (d(s, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // row s and column s are clear; enforce divisibility of the rest
            bool fixed = true;
            for (int i = s + 1; i < d.rows && fixed; ++i)
                for (int j = s + 1; j < d.cols && fixed; ++j)
                    if (d(i, j) % d(s, s) != 0) {
                        add_row(d, s, i, 1);
                        add_row(u, s, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (d(s, s) < 0) { neg_row(d, s); neg_row(u, s); }
        continue;
    done_stage:
        break;
    }

    for (int i = 0; i < n; ++i) {
        if (d(i, i) == 0) break;
        res.diag.push_back(d(i, i));
        ++res.rank;
        if (d(i, i) > 1) res.invariant_factors.push_back(d(i, i));
    }
    return res;
}

ZMat z_kernel(const ZMat& A) {
    if (A.cols == 0) return ZMat(0, 0);
    if (A.rows == 0) return ZMat::identity(A.cols);
    SnfResult s = snf(A);
    // A x = 0  <=>  D y = 0 with x = V y; free coordinates are those past rank.
    int free = A.cols - s.rank;
    ZMat k(A.cols, free);
    for (int j = 0; j < free; ++j)
        for (int i = 0; i < A.cols; ++i) k(i, j) = s.v(i, s.rank + j);
    return k;
}

std::optional<ZMat> z_solve(const ZMat& A, const ZMat& b) {
    if (A.rows != b.rows) throw Error("z_solve: dimension mismatch");
    SnfResult s = snf(A);
    ZMat ub = s.u.mul(b);
    ZMat y(A.cols, b.cols);
    for (int c = 0; c < b.cols; ++c) {
        for (int i = 0; i < A.rows; ++i) {
            if (i < s.rank) {
                if (ub(i, c) % s.diag[i] != 0) return std::nullopt;
                y(i, c) = ub(i, c) / s.diag[i];
            } else if (ub(i, c) != 0) {
                return std::nullopt;
            }
        }
    }
    return s.v.mul(y);
}

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool QMat::is_zero() const {
    for (auto& x : a)
        if (x != 0) return false;
    return true;
}

bool QMat::is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

QMat QMat::mul(const QMat& o) const {
    if (cols != o.rows) throw Error("QMat::mul: dimension mismatch");
    QMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Rat& x = (*this)(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

QMat QMat::add(const QMat& o) const {
    if (rows != o.rows || cols != o.cols) throw Error("QMat::add: dimension mismatch");
    QMat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
}

QMat QMat::sub(const QMat& o) const {
    if (rows != o.rows || cols != o.cols) throw Error("QMat::sub: dimension mismatch");
    QMat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
}

QMat QMat::scale(const Rat& c) const {
    QMat r = *this;
    for (auto& x : r.a) x *= c;
    return r;
}

QMat QMat::hcat(const QMat& o) const {
    if (rows != o.rows) throw Error("QMat::hcat: row mismatch");
    QMat r(rows, cols + o.cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) r(i, j) = (*this)(i, j);
        for (int j = 0; j < o.cols; ++j) r(i, cols + j) = o(i, j);
    }
    return r;
}

QMat QMat::vcat(const QMat& o) const {
    if (cols != o.cols) throw Error("QMat::vcat: col mismatch");
    QMat r(rows + o.rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r(i, j) = (*this)(i, j);
    for (int i = 0; i < o.rows; ++i)
        for (int j = 0; j < cols; ++j) r(rows + i, j) = o(i, j);
    return r;
}

QMat QMat::transpose() const {
    QMat r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
}

QMat QMat::col_slice(int from, int to) const {
    QMat r(rows, to - from);
    for (int i = 0; i < rows; ++i)
        for (int j = from; j < to; ++j) r(i, j - from) = (*this)(i, j);
    return r;
}

std::string QMat::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows; ++i) {
        os << (i ? "; " : "[");
        for (int j = 0; j < cols; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
    }
    os << "]";
    return os.str();
}

std::vector<int> q_rref(QMat& A) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        int p = -1;
        for (int i = r; i < A.rows; ++i)
            if (A(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < A.cols; ++j) std::swap(A(p, j), A(r, j));
        Rat inv = Rat(1) / A(r, c);
        for (int j = 0; j < A.cols; ++j) A(r, j) *= inv;
        for (int i = 0; i < A.rows; ++i) {
            if (i == r || A(i, c) == 0) continue;
            Rat f = A(i, c);
            for (int j = 0; j < A.cols; ++j) A(i, j) -= f * A(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int q_rank(const QMat& A) {
    QMat m = A;
    return int(q_rref(m).size());
}

QMat q_kernel(const QMat& A) {
    QMat m = A;
    std::vector<int> piv = q_rref(m);
    std::vector<bool> is_piv(A.cols, false);
    for (int c : piv) is_piv[c] = true;
    int free = A.cols - int(piv.size());
    QMat k(A.cols, free);
    int fj = 0;
    for (int c = 0; c < A.cols; ++c) {
        if (is_piv[c]) continue;
        k(c, fj) = 1;
        for (size_t pr = 0; pr < piv.size(); ++pr) k(piv[pr], fj) = -m(int(pr), c);
        ++fj;
    }
    return k;
}

std::optional<QMat> q_solve(const QMat& A, const QMat& b) {
    if (A.rows != b.rows) throw Error("q_solve: dimension mismatch");
    QMat m = A.hcat(b);
    std::vector<int> piv = q_rref(m);
    // inconsistency: a pivot in the b-part
    for (int c : piv)
        if (c >= A.cols) return std::nullopt;
    QMat x(A.cols, b.cols);
    for (size_t pr = 0; pr < piv.size(); ++pr)
        for (int j = 0; j < b.cols; ++j) x(piv[pr], j) = m(int(pr), A.cols + j);
    return x;
}

std::optional<QMat> q_inverse(const QMat& A) {
    if (A.rows != A.cols) return std::nullopt;
    QMat m = A.hcat(QMat::identity(A.rows));
    std::vector<int> piv = q_rref(m);
    if (int(piv.size()) != A.rows) return std::nullopt;
    for (int i = 0; i < A.rows; ++i)
        if (piv[i] != i) return std::nullopt;
    return m.col_slice(A.cols, 2 * A.cols);
}

std::vector<int> q_col_basis(const QMat& A) {
    QMat m = A;
    return q_rref(m);
}

}  // namespace finsp

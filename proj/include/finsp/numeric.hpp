#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "finsp/common.hpp"

namespace finsp {

using Int = mpz_class;
using Rat = mpq_class;

// Dense exact matrices, row-major. Sizes here are tiny (tens to a few
// hundreds), so simplicity wins over asymptotics throughout.

struct ZMat {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    ZMat() = default;
    ZMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Int(0)) {}

    Int& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
    const Int& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

    static ZMat identity(int n);
    static ZMat zero(int r, int c) { return ZMat(r, c); }
    bool is_zero() const;
    bool operator==(const ZMat&) const = default;

    ZMat mul(const ZMat& o) const;
    ZMat hcat(const ZMat& o) const;
    ZMat vcat(const ZMat& o) const;
    ZMat transpose() const;
    ZMat col_slice(int from, int to) const;  // columns [from, to)
    ZMat row_slice(int from, int to) const;
    ZMat neg() const;
    std::string str() const;
};

// Smith normal form: U * A * V = D diagonal with d1 | d2 | ... , U, V unimodular.
struct SnfResult {
    ZMat d, u, v;
    std::vector<Int> diag;              // nonzero diagonal entries d1 | d2 | ...
    std::vector<Int> invariant_factors; // diag entries > 1
    int rank = 0;                       // number of nonzero diagonal entries
};
SnfResult snf(const ZMat& A);

// Basis of the integer kernel lattice {x : A x = 0}, as matrix columns.
ZMat z_kernel(const ZMat& A);

// One integer solution of A x = b (b given as columns; solves each column).
// Returns nullopt if some column has no integral solution.
std::optional<ZMat> z_solve(const ZMat& A, const ZMat& b);

struct QMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Rat(0)) {}

    Rat& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
    const Rat& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

    static QMat identity(int n);
    static QMat zero(int r, int c) { return QMat(r, c); }
    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const QMat&) const = default;

    QMat mul(const QMat& o) const;
    QMat add(const QMat& o) const;
    QMat sub(const QMat& o) const;
    QMat scale(const Rat& c) const;
    QMat hcat(const QMat& o) const;
    QMat vcat(const QMat& o) const;
    QMat transpose() const;
    QMat col_slice(int from, int to) const;
    std::string str() const;
};

int q_rank(const QMat& A);
QMat q_kernel(const QMat& A);  // basis of null space, as columns
// Solve A x = b columnwise over the rationals; nullopt if inconsistent.
std::optional<QMat> q_solve(const QMat& A, const QMat& b);
std::optional<QMat> q_inverse(const QMat& A);
// Row-reduce A; returns pivot column indices. A is modified in place.
std::vector<int> q_rref(QMat& A);
// Extract a basis of the column space (as column indices into A).
std::vector<int> q_col_basis(const QMat& A);

}  // namespace finsp

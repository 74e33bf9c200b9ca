#include "finsp/ring.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace finsp {

// ------------------------------ QAlgebra -----------------------------------

QAlgebra QAlgebra::from_mult_table(int dim, const std::vector<QMat>& lmul) {
    if (int(lmul.size()) != dim) throw Error("QAlgebra: need one multiplication matrix per basis element");
    for (auto& m : lmul)
        if (m.rows != dim || m.cols != dim) throw Error("QAlgebra: multiplication matrix has wrong shape");
    // commutativity: column j of lmul[i] equals column i of lmul[j]
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (lmul[i](k, j) != lmul[j](k, i)) throw Error("QAlgebra: structure constants not commutative");
    QAlgebra a;
    a.dim = dim;
    a.lmul = lmul;
    // associativity: L_{e_i e_j} == L_{e_i} L_{e_j}
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            QMat prod(dim, 1);
            for (int k = 0; k < dim; ++k) prod(k, 0) = lmul[i](k, j);
            if (a.lmul_of(prod) != lmul[i].mul(lmul[j]))
                throw Error("QAlgebra: structure constants not associative");
        }
    // solve for the unit: sum_i u_i lmul[i] = I
    QMat sys(dim * dim, dim), rhs(dim * dim, 1);
    for (int i = 0; i < dim; ++i)
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) sys(r * dim + c, i) = lmul[i](r, c);
    for (int r = 0; r < dim; ++r) rhs(r * dim + r, 0) = 1;
    auto u = q_solve(sys, rhs);
    if (!u) throw Error("QAlgebra: algebra has no unit");
    a.unit = *u;
    return a;
}

QAlgebra QAlgebra::rationals() {
    QMat m = QMat::identity(1);
    return from_mult_table(1, {m});
}

QAlgebra QAlgebra::polynomial_quotient(const std::vector<Rat>& m) {
    // Q[x]/(x^n + m[n-1] x^{n-1} + ... + m[0]), basis 1, x, ..., x^{n-1}
    int n = int(m.size());
    if (n == 0) throw Error("polynomial_quotient: empty modulus");
    QMat lx(n, n);
    for (int i = 0; i + 1 < n; ++i) lx(i + 1, i) = 1;
    for (int i = 0; i < n; ++i) lx(i, n - 1) = -m[i];
    std::vector<QMat> tab(n);
    tab[0] = QMat::identity(n);
    for (int i = 1; i < n; ++i) tab[i] = lx.mul(tab[i - 1]);
    return from_mult_table(n, tab);
}

QAlgebra QAlgebra::dual_numbers() { return polynomial_quotient({Rat(0), Rat(0)}); }
QAlgebra QAlgebra::split_pair() { return polynomial_quotient({Rat(0), Rat(-1)}); }  // x^2 - x
QAlgebra QAlgebra::quadratic_field(const Rat& c) { return polynomial_quotient({-c, Rat(0)}); }

QMat QAlgebra::lmul_of(const QMat& v) const {
    QMat r(dim, dim);
    for (int i = 0; i < dim; ++i) {
        if (v(i, 0) == 0) continue;
        r = r.add(lmul[i].scale(v(i, 0)));
    }
    return r;
}

QMat QAlgebra::mul(const QMat& u, const QMat& v) const { return lmul_of(u).mul(v); }

QMat QAlgebra::trace_gram() const {
    QMat g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            QMat prod(dim, 1);
            for (int k = 0; k < dim; ++k) prod(k, 0) = lmul[i](k, j);
            QMat l = lmul_of(prod);
            Rat tr(0);
            for (int k = 0; k < dim; ++k) tr += l(k, k);
            g(i, j) = tr;
        }
    return g;
}

QMat QAlgebra::radical_basis() const {
    // Characteristic zero: the radical is the kernel of the trace form.
    return q_kernel(trace_gram());
}

std::string QAlgebra::str() const {
    return "Q-algebra(dim " + std::to_string(dim) + ")";
}

// ------------------------------ cones --------------------------------------

bool cone_contains(Cone c, long e) {
    switch (c) {
        case Cone::Zero: return e == 0;
        case Cone::NonNeg: return e >= 0;
        case Cone::NonPos: return e <= 0;
        case Cone::All: return true;
    }
    return false;
}

bool cone_subset(Cone a, Cone b) {
    if (a == b || b == Cone::All || a == Cone::Zero) return true;
    return false;
}

std::optional<Cone> cone_join(Cone a, Cone b) {
    if (cone_subset(a, b)) return b;
    if (cone_subset(b, a)) return a;
    return Cone::All;  // NonNeg join NonPos
}

const char* cone_name(Cone c) {
    switch (c) {
        case Cone::Zero: return "0";
        case Cone::NonNeg: return ">=0";
        case Cone::NonPos: return "<=0";
        case Cone::All: return "all";
    }
    return "?";
}

bool MonRing::allows(const std::vector<long>& e) const {
    if (e.size() != cone.size()) return false;
    for (size_t i = 0; i < e.size(); ++i)
        if (!cone_contains(cone[i], e[i])) return false;
    return true;
}

std::string MonRing::str() const {
    std::string s = "k[";
    for (int i = 0; i < nvars(); ++i) {
        if (i) s += ",";
        s += vars[i] + ":" + cone_name(cone[i]);
    }
    return s + "]";
}

// ------------------------------ Ring ----------------------------------------

Ring Ring::z() {
    Ring r;
    r.backend = Backend::ZConst;
    return r;
}

Ring Ring::q(QAlgebra a) {
    Ring r;
    r.backend = Backend::FinDimQ;
    r.alg = std::make_shared<const QAlgebra>(std::move(a));
    return r;
}

Ring Ring::graded(MonRing m) {
    Ring r;
    r.backend = Backend::GradedMonomial;
    r.mon = std::make_shared<const MonRing>(std::move(m));
    return r;
}

bool Ring::operator==(const Ring& o) const {
    if (backend != o.backend) return false;
    switch (backend) {
        case Backend::ZConst: return true;
        case Backend::FinDimQ: return alg == o.alg || *alg == *o.alg;
        case Backend::GradedMonomial: return mon == o.mon || *mon == *o.mon;
    }
    return false;
}

std::string Ring::str() const {
    switch (backend) {
        case Backend::ZConst: return "Z";
        case Backend::FinDimQ: return alg->str();
        case Backend::GradedMonomial: return mon->str();
    }
    return "?";
}

// ------------------------------ RingMap --------------------------------------

RingMap RingMap::z() {
    RingMap h;
    h.src = Ring::z();
    h.dst = Ring::z();
    return h;
}

RingMap RingMap::identity(const Ring& r) {
    switch (r.backend) {
        case Backend::ZConst: return z();
        case Backend::FinDimQ: return findimq(r, r, QMat::identity(r.alg->dim));
        case Backend::GradedMonomial: {
            std::vector<Monomial> im;
            for (int j = 0; j < r.mon->nvars(); ++j) {
                Monomial m;
                m.coeff = 1;
                m.exp.assign(r.mon->nvars(), 0);
                m.exp[j] = 1;
                im.push_back(m);
            }
            return graded(r, r, im);
        }
    }
    throw Error("identity: bad backend");
}

RingMap RingMap::findimq(const Ring& src, const Ring& dst, const QMat& mat) {
    if (src.backend != Backend::FinDimQ || dst.backend != Backend::FinDimQ)
        throw Error("RingMap::findimq: backend mismatch");
    const QAlgebra& a = *src.alg;
    const QAlgebra& b = *dst.alg;
    if (mat.rows != b.dim || mat.cols != a.dim) throw Error("RingMap: matrix shape mismatch");
    if (mat.mul(a.unit) != b.unit) throw Error("RingMap: unit not preserved");
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            QMat eij(a.dim, 1);
            for (int k = 0; k < a.dim; ++k) eij(k, 0) = a.lmul[i](k, j);
            QMat lhs = mat.mul(eij);
            QMat hi(b.dim, 1), hj(b.dim, 1);
            for (int k = 0; k < b.dim; ++k) { hi(k, 0) = mat(k, i); hj(k, 0) = mat(k, j); }
            if (lhs != b.mul(hi, hj)) throw Error("RingMap: not multiplicative on basis pair");
        }
    RingMap h;
    h.src = src;
    h.dst = dst;
    h.mat = mat;
    return h;
}

RingMap RingMap::graded(const Ring& src, const Ring& dst, std::vector<Monomial> images) {
    if (src.backend != Backend::GradedMonomial || dst.backend != Backend::GradedMonomial)
        throw Error("RingMap::graded: backend mismatch");
    const MonRing& a = *src.mon;
    const MonRing& b = *dst.mon;
    if (int(images.size()) != a.nvars()) throw Error("RingMap: need one image per source variable");
    for (int j = 0; j < a.nvars(); ++j) {
        const Monomial& m = images[j];
        if (int(m.exp.size()) != b.nvars()) throw Error("RingMap: image exponent arity mismatch");
        if (a.cone[j] == Cone::Zero) continue;  // variable absent from the source ring
        if (m.coeff == 0) {
            // sending an invertible variable to zero is not a ring map
            if (a.cone[j] != Cone::NonNeg) throw Error("RingMap: invertible variable mapped to zero");
            continue;
        }
        // every generator direction of the source cone must land in the target
        auto check_dir = [&](long sgn) {
            for (int k = 0; k < b.nvars(); ++k)
                if (!cone_contains(b.cone[k], sgn * m.exp[k]))
                    throw Error("RingMap: image of variable " + a.vars[j] + " leaves the target ring");
        };
        if (a.cone[j] == Cone::NonNeg || a.cone[j] == Cone::All) check_dir(1);
        if (a.cone[j] == Cone::NonPos || a.cone[j] == Cone::All) check_dir(-1);
    }
    RingMap h;
    h.src = src;
    h.dst = dst;
    h.images = std::move(images);
    return h;
}

RingMap RingMap::graded_inclusion(const Ring& src, const Ring& dst) {
    const MonRing& a = *src.mon;
    const MonRing& b = *dst.mon;
    if (a.vars != b.vars) throw Error("graded_inclusion: ambient variables differ");
    for (int j = 0; j < a.nvars(); ++j)
        if (!cone_subset(a.cone[j], b.cone[j]))
            throw Error("graded_inclusion: source not contained in target at variable " + a.vars[j]);
    std::vector<Monomial> im;
    for (int j = 0; j < a.nvars(); ++j) {
        Monomial m;
        m.coeff = 1;
        m.exp.assign(b.nvars(), 0);
        m.exp[j] = 1;
        im.push_back(m);
    }
    return graded(src, dst, im);
}

bool RingMap::is_identity() const {
    if (!(src == dst)) return false;
    switch (src.backend) {
        case Backend::ZConst: return true;
        case Backend::FinDimQ: return mat.is_identity();
        case Backend::GradedMonomial: return graded_is_ambient_identity();
    }
    return false;
}

bool RingMap::operator==(const RingMap& o) const {
    if (!(src == o.src) || !(dst == o.dst)) return false;
    switch (src.backend) {
        case Backend::ZConst: return true;
        case Backend::FinDimQ: return mat == o.mat;
        case Backend::GradedMonomial: return images == o.images;
    }
    return false;
}

std::string RingMap::str() const {
    switch (src.backend) {
        case Backend::ZConst: return "id_Z";
        case Backend::FinDimQ: return mat.str();
        case Backend::GradedMonomial: {
            std::ostringstream os;
            for (int j = 0; j < src.mon->nvars(); ++j) {
                if (j) os << ", ";
                os << src.mon->vars[j] << "->" << images[j].coeff.get_str();
                for (int k = 0; k < dst.mon->nvars(); ++k)
                    if (images[j].exp[k] != 0) os << "*" << dst.mon->vars[k] << "^" << images[j].exp[k];
            }
            return os.str();
        }
    }
    return "?";
}

std::vector<long> RingMap::transform_degree(const std::vector<long>& d) const {
    std::vector<long> out(dst.mon->nvars(), 0);
    for (size_t j = 0; j < d.size(); ++j) {
        if (d[j] == 0) continue;
        for (int k = 0; k < dst.mon->nvars(); ++k) out[k] += d[j] * images[j].exp[k];
    }
    return out;
}

bool RingMap::graded_is_ambient_identity() const {
    if (src.mon->vars != dst.mon->vars) return false;
    for (int j = 0; j < src.mon->nvars(); ++j) {
        if (src.mon->cone[j] == Cone::Zero) continue;
        if (images[j].coeff != 1) return false;
        for (int k = 0; k < dst.mon->nvars(); ++k)
            if (images[j].exp[k] != (k == j ? 1 : 0)) return false;
    }
    return true;
}

RingMap compose(const RingMap& g, const RingMap& f) {
    if (!(f.dst == g.src)) throw Error("compose: maps not composable");
    switch (f.src.backend) {
        case Backend::ZConst: return RingMap::z();
        case Backend::FinDimQ: return RingMap::findimq(f.src, g.dst, g.mat.mul(f.mat));
        case Backend::GradedMonomial: {
            std::vector<Monomial> im;
            for (int j = 0; j < f.src.mon->nvars(); ++j) {
                Monomial m;
                m.coeff = f.images[j].coeff;
                m.exp.assign(g.dst.mon->nvars(), 0);
                if (m.coeff != 0) {
                    for (int k = 0; k < f.dst.mon->nvars(); ++k) {
                        long e = f.images[j].exp[k];
                        if (e == 0) continue;
                        const Monomial& gk = g.images[k];
                        if (gk.coeff == 0) { m.coeff = 0; break; }
                        Rat c = gk.coeff;
                        Rat cp(1);
                        long n = e >= 0 ? e : -e;
                        for (long t = 0; t < n; ++t) cp *= c;
                        if (e < 0) cp = Rat(1) / cp;
                        m.coeff *= cp;
                        for (int l = 0; l < g.dst.mon->nvars(); ++l) m.exp[l] += e * gk.exp[l];
                    }
                }
                if (m.coeff == 0) m.exp.assign(g.dst.mon->nvars(), 0);
                im.push_back(m);
            }
            return RingMap::graded(f.src, g.dst, im);
        }
    }
    throw Error("compose: bad backend");
}

bool is_ring_iso(const RingMap& h) {
    switch (h.src.backend) {
        case Backend::ZConst: return true;
        case Backend::FinDimQ: {
            if (h.src.alg->dim != h.dst.alg->dim) return false;
            return q_rank(h.mat) == h.src.alg->dim;
        }
        case Backend::GradedMonomial: {
            // graded iso: a bijective signed matching of non-Zero variables
            const MonRing& a = *h.src.mon;
            const MonRing& b = *h.dst.mon;
            std::vector<bool> hit(b.nvars(), false);
            for (int j = 0; j < a.nvars(); ++j) {
                if (a.cone[j] == Cone::Zero) continue;
                if (h.images[j].coeff == 0) return false;
                int tgt = -1;
                long sgn = 0;
                for (int k = 0; k < b.nvars(); ++k) {
                    long e = h.images[j].exp[k];
                    if (e == 0) continue;
                    if (tgt >= 0 || (e != 1 && e != -1)) return false;
                    tgt = k;
                    sgn = e;
                }
                if (tgt < 0 || hit[tgt]) return false;
                hit[tgt] = true;
                Cone want = a.cone[j];
                if (sgn < 0) {
                    if (want == Cone::NonNeg) want = Cone::NonPos;
                    else if (want == Cone::NonPos) want = Cone::NonNeg;
                }
                if (b.cone[tgt] != want) return false;
            }
            for (int k = 0; k < b.nvars(); ++k)
                if (!hit[k] && b.cone[k] != Cone::Zero) return false;
            return true;
        }
    }
    return false;
}

Tri is_flat(const RingMap& h) {
    switch (h.src.backend) {
        case Backend::ZConst:
            return Tri::Yes;
        case Backend::FinDimQ: {
            // Tor_1(dst, src/J) with J the radical; vanishing <=> flat here.
            const QAlgebra& r = *h.src.alg;
            const QAlgebra& s = *h.dst.alg;
            QMat j = r.radical_basis();
            int k = j.cols;
            if (k == 0) return Tri::Yes;  // semisimple over Q: everything flat
            // kernel K of R^k -> R, (a_i) -> sum a_i j_i, as a Q-space
            QMat m1(r.dim, r.dim * k);
            for (int i = 0; i < k; ++i) {
                QMat ji(r.dim, 1);
                for (int t = 0; t < r.dim; ++t) ji(t, 0) = j(t, i);
                QMat l = r.lmul_of(ji);
                for (int a = 0; a < r.dim; ++a)
                    for (int b = 0; b < r.dim; ++b) m1(a, i * r.dim + b) = l(a, b);
            }
            QMat kker = q_kernel(m1);  // (r.dim * k) x kk
            // Tor_1 = ker(S^k -> S) / S-span of (h applied to K generators)
            QMat m2(s.dim, s.dim * k);
            for (int i = 0; i < k; ++i) {
                QMat ji(r.dim, 1);
                for (int t = 0; t < r.dim; ++t) ji(t, 0) = j(t, i);
                QMat hj = h.mat.mul(ji);
                QMat l = s.lmul_of(hj);
                for (int a = 0; a < s.dim; ++a)
                    for (int b = 0; b < s.dim; ++b) m2(a, i * s.dim + b) = l(a, b);
            }
            int dim_ker = s.dim * k - q_rank(m2);
            // image: h componentwise on K generators, then S-action saturation
            QMat gens(s.dim * k, kker.cols * s.dim);
            for (int c = 0; c < kker.cols; ++c) {
                // transport the generator to S^k
                QMat g(s.dim * k, 1);
                for (int i = 0; i < k; ++i) {
                    QMat comp(r.dim, 1);
                    for (int t = 0; t < r.dim; ++t) comp(t, 0) = kker(i * r.dim + t, c);
                    QMat hc = h.mat.mul(comp);
                    for (int t = 0; t < s.dim; ++t) g(i * s.dim + t, 0) = hc(t, 0);
                }
                for (int e = 0; e < s.dim; ++e) {
                    // act by basis element e on each component
                    for (int i = 0; i < k; ++i) {
                        QMat comp(s.dim, 1);
                        for (int t = 0; t < s.dim; ++t) comp(t, 0) = g(i * s.dim + t, 0);
                        QMat ac = s.lmul[e].mul(comp);
                        for (int t = 0; t < s.dim; ++t) gens(i * s.dim + t, c * s.dim + e) = ac(t, 0);
                    }
                }
            }
            int dim_im = q_rank(gens);
            return dim_ker == dim_im ? Tri::Yes : Tri::No;
        }
        case Backend::GradedMonomial: {
            // certified flat: signed variable matching (injective on non-Zero
            // variables) with compatible cones; a localization inclusion
            // composed with a renaming, possibly adding fresh variables.
            const MonRing& a = *h.src.mon;
            const MonRing& b = *h.dst.mon;
            std::vector<bool> hit(b.nvars(), false);
            for (int j = 0; j < a.nvars(); ++j) {
                if (a.cone[j] == Cone::Zero) continue;
                if (h.images[j].coeff == 0) return Tri::Unknown;
                int tgt = -1;
                long sgn = 0;
                for (int k2 = 0; k2 < b.nvars(); ++k2) {
                    long e = h.images[j].exp[k2];
                    if (e == 0) continue;
                    if (tgt >= 0 || (e != 1 && e != -1)) return Tri::Unknown;
                    tgt = k2;
                    sgn = e;
                }
                if (tgt < 0 || hit[tgt]) return Tri::Unknown;
                hit[tgt] = true;
                Cone want = a.cone[j];
                if (sgn < 0) {
                    if (want == Cone::NonNeg) want = Cone::NonPos;
                    else if (want == Cone::NonPos) want = Cone::NonNeg;
                }
                if (!cone_subset(want, b.cone[tgt])) return Tri::Unknown;
            }
            return Tri::Yes;
        }
    }
    return Tri::Unknown;
}

// ------------------------------ tensor --------------------------------------

TensorRing tensor_rings(const RingMap& h1, const RingMap& h2) {
    if (!(h1.src == h2.src)) throw Error("tensor_rings: the two maps have different sources");
    Backend bk = h1.src.backend;
    if (h1.dst.backend != bk || h2.dst.backend != bk) throw Error("tensor_rings: backend mismatch");
    TensorRing t;
    switch (bk) {
        case Backend::ZConst: {
            t.ring = Ring::z();
            t.inj1 = RingMap::z();
            t.inj2 = RingMap::z();
            return t;
        }
        case Backend::FinDimQ: {
            const QAlgebra& r0 = *h1.src.alg;
            const QAlgebra& r1 = *h1.dst.alg;
            const QAlgebra& r2 = *h2.dst.alg;
            int d1 = r1.dim, d2 = r2.dim, n = d1 * d2;
            // full tensor algebra on basis e_i (x) f_j, index i*d2+j
            std::vector<QMat> big(n, QMat(n, n));
            for (int i = 0; i < d1; ++i)
                for (int j = 0; j < d2; ++j)
                    for (int a = 0; a < d1; ++a)
                        for (int b = 0; b < d2; ++b)
                            for (int x = 0; x < d1; ++x)
                                for (int y = 0; y < d2; ++y) {
                                    Rat c = r1.lmul[i](x, a) * r2.lmul[j](y, b);
                                    if (c != 0) big[i * d2 + j](x * d2 + y, a * d2 + b) += c;
                                }
            // ideal generated by h1(c) (x) 1 - 1 (x) h2(c), saturated under mult
            QMat gens(n, r0.dim);
            for (int c = 0; c < r0.dim; ++c) {
                for (int x = 0; x < d1; ++x)
                    for (int y = 0; y < d2; ++y) {
                        Rat v(0);
                        v += h1.mat(x, c) * r2.unit(y, 0);
                        v -= r1.unit(x, 0) * h2.mat(y, c);
                        gens(x * d2 + y, c) = v;
                    }
            }
            QMat sat = gens;
            while (true) {
                QMat bigger = sat;
                for (int e = 0; e < n; ++e) bigger = bigger.hcat(big[e].mul(sat));
                if (q_rank(bigger) == q_rank(sat)) break;
                // keep an independent subset
                std::vector<int> cols = q_col_basis(bigger);
                QMat nxt(n, int(cols.size()));
                for (size_t ci = 0; ci < cols.size(); ++ci)
                    for (int rI = 0; rI < n; ++rI) nxt(rI, int(ci)) = bigger(rI, cols[ci]);
                sat = nxt;
            }
            // quotient basis: extend ideal basis to the whole space
            std::vector<int> icols = q_col_basis(sat);
            QMat ideal(n, int(icols.size()));
            for (size_t ci = 0; ci < icols.size(); ++ci)
                for (int rI = 0; rI < n; ++rI) ideal(rI, int(ci)) = sat(rI, icols[ci]);
            QMat ext = ideal.hcat(QMat::identity(n));
            std::vector<int> basis_cols = q_col_basis(ext);
            std::vector<int> rep;  // representative coordinates among identity cols
            for (int c : basis_cols)
                if (c >= ideal.cols) rep.push_back(c - ideal.cols);
            int dt = int(rep.size());
            // section: T basis element k -> e_{rep[k]} in the big algebra
            QMat sect(n, dt);
            for (int k = 0; k < dt; ++k) sect(rep[k], k) = 1;
            // projection: express each big basis vector mod ideal in rep basis
            QMat solve_sys = ideal.hcat(sect);
            auto sol = q_solve(solve_sys, QMat::identity(n));
            if (!sol) throw Error("tensor_rings: internal quotient failure");
            QMat proj(dt, n);
            for (int k = 0; k < dt; ++k)
                for (int c = 0; c < n; ++c) proj(k, c) = (*sol)(ideal.cols + k, c);
            // structure constants on the quotient
            std::vector<QMat> ql(dt, QMat(dt, dt));
            for (int k = 0; k < dt; ++k) {
                QMat lk = proj.mul(big[rep[k]]).mul(sect);
                // note: big[rep[k]] is left multiplication by the representative
                ql[k] = lk;
            }
            QAlgebra qa = QAlgebra::from_mult_table(dt, ql);
            t.ring = Ring::q(qa);
            t.proj = proj;
            t.sect = sect;
            t.d1 = d1;
            t.d2 = d2;
            // injections
            QMat m1(dt, d1), m2(dt, d2);
            for (int i = 0; i < d1; ++i) {
                QMat v(n, 1);
                for (int y = 0; y < d2; ++y) v(i * d2 + y, 0) = r2.unit(y, 0);
                QMat pv = proj.mul(v);
                for (int k = 0; k < dt; ++k) m1(k, i) = pv(k, 0);
            }
            for (int j = 0; j < d2; ++j) {
                QMat v(n, 1);
                for (int x = 0; x < d1; ++x) v(x * d2 + j, 0) = r1.unit(x, 0);
                QMat pv = proj.mul(v);
                for (int k = 0; k < dt; ++k) m2(k, j) = pv(k, 0);
            }
            t.inj1 = RingMap::findimq(h1.dst, t.ring, m1);
            t.inj2 = RingMap::findimq(h2.dst, t.ring, m2);
            return t;
        }
        case Backend::GradedMonomial: {
            const MonRing& r0 = *h1.src.mon;
            const MonRing& r1 = *h1.dst.mon;
            const MonRing& r2 = *h2.dst.mon;
            // require canonical single-variable embeddings of the base
            auto embedding = [&](const RingMap& h) {
                std::vector<int> e(r0.nvars(), -1);
                for (int j = 0; j < r0.nvars(); ++j) {
                    if (r0.cone[j] == Cone::Zero) continue;
                    const Monomial& m = h.images[j];
                    if (m.coeff != 1) throw Error("tensor_rings: non-canonical graded base map");
                    int tgt = -1;
                    for (size_t k = 0; k < m.exp.size(); ++k) {
                        if (m.exp[k] == 0) continue;
                        if (m.exp[k] != 1 || tgt >= 0)
                            throw Error("tensor_rings: non-canonical graded base map");
                        tgt = int(k);
                    }
                    if (tgt < 0) throw Error("tensor_rings: non-canonical graded base map");
                    e[j] = tgt;
                }
                return e;
            };
            std::vector<int> e1 = embedding(h1), e2 = embedding(h2);
            MonRing t_ring;
            // all of r1's variables first
            t_ring.vars = r1.vars;
            t_ring.cone = r1.cone;
            // shared variables: join the cones
            std::vector<int> r2_to_t(r2.nvars(), -1);
            for (int j = 0; j < r0.nvars(); ++j) {
                if (e1[j] < 0 || e2[j] < 0) continue;
                auto joined = cone_join(r1.cone[e1[j]], r2.cone[e2[j]]);
                if (!joined) throw Error("tensor_rings: incompatible cones on shared variable");
                t_ring.cone[e1[j]] = *joined;
                r2_to_t[e2[j]] = e1[j];
            }
            std::set<std::string> used(t_ring.vars.begin(), t_ring.vars.end());
            for (int k = 0; k < r2.nvars(); ++k) {
                if (r2_to_t[k] >= 0) continue;
                std::string nm = r2.vars[k];
                while (used.count(nm)) nm += "'";
                used.insert(nm);
                r2_to_t[k] = int(t_ring.vars.size());
                t_ring.vars.push_back(nm);
                t_ring.cone.push_back(r2.cone[k]);
            }
            t.ring = Ring::graded(t_ring);
            // injections
            std::vector<Monomial> im1, im2;
            for (int j = 0; j < r1.nvars(); ++j) {
                Monomial m;
                m.coeff = 1;
                m.exp.assign(t_ring.nvars(), 0);
                m.exp[j] = 1;
                im1.push_back(m);
            }
            for (int k = 0; k < r2.nvars(); ++k) {
                Monomial m;
                m.coeff = 1;
                m.exp.assign(t_ring.nvars(), 0);
                m.exp[r2_to_t[k]] = 1;
                im2.push_back(m);
            }
            t.inj1 = RingMap::graded(h1.dst, t.ring, im1);
            t.inj2 = RingMap::graded(h2.dst, t.ring, im2);
            return t;
        }
    }
    throw Error("tensor_rings: bad backend");
}

RingMap tensor_induced_hom(const TensorRing& t, const RingMap& phi1, const RingMap& phi2) {
    if (!(phi1.src == t.inj1.src) || !(phi2.src == t.inj2.src))
        throw Error("tensor_induced_hom: factor maps have wrong sources");
    if (!(phi1.dst == phi2.dst)) throw Error("tensor_induced_hom: targets differ");
    switch (t.ring.backend) {
        case Backend::ZConst:
            return RingMap::z();
        case Backend::FinDimQ: {
            const QAlgebra& s = *phi1.dst.alg;
            int n = t.d1 * t.d2;
            QMat big(s.dim, n);
            for (int i = 0; i < t.d1; ++i) {
                QMat pi(s.dim, 1);
                for (int r = 0; r < s.dim; ++r) pi(r, 0) = phi1.mat(r, i);
                QMat li = s.lmul_of(pi);
                for (int j = 0; j < t.d2; ++j) {
                    QMat pj(s.dim, 1);
                    for (int r = 0; r < s.dim; ++r) pj(r, 0) = phi2.mat(r, j);
                    QMat v = li.mul(pj);
                    for (int r = 0; r < s.dim; ++r) big(r, i * t.d2 + j) = v(r, 0);
                }
            }
            return RingMap::findimq(t.ring, phi1.dst, big.mul(t.sect));
        }
        case Backend::GradedMonomial: {
            const MonRing& tr = *t.ring.mon;
            const MonRing& r1 = *t.inj1.src.mon;
            std::vector<Monomial> im(tr.nvars());
            std::vector<bool> have(tr.nvars(), false);
            for (int j = 0; j < r1.nvars(); ++j) {
                // inj1 sends variable j of r1 to a single t-variable
                for (int k = 0; k < tr.nvars(); ++k)
                    if (t.inj1.images[j].exp[k] == 1) {
                        im[k] = phi1.images[j];
                        have[k] = true;
                    }
            }
            const MonRing& r2 = *t.inj2.src.mon;
            for (int j = 0; j < r2.nvars(); ++j) {
                for (int k = 0; k < tr.nvars(); ++k)
                    if (t.inj2.images[j].exp[k] == 1) {
                        if (have[k] && !(im[k] == phi2.images[j]) && tr.cone[k] != Cone::Zero)
                            throw Error("tensor_induced_hom: factor maps disagree on shared variable");
                        if (!have[k]) {
                            im[k] = phi2.images[j];
                            have[k] = true;
                        }
                    }
            }
            for (int k = 0; k < tr.nvars(); ++k)
                if (!have[k]) {
                    im[k].coeff = 0;
                    im[k].exp.assign(phi1.dst.mon->nvars(), 0);
                }
            return RingMap::graded(t.ring, phi1.dst, im);
        }
    }
    throw Error("tensor_induced_hom: bad backend");
}

// ------------------------------ iso search -----------------------------------

namespace {

// minimal polynomial of v: smallest monic m with m(v) = 0
std::vector<Rat> min_poly(const QAlgebra& a, const QMat& v) {
    QMat pows(a.dim, 1);
    for (int i = 0; i < a.dim; ++i) pows(i, 0) = a.unit(i, 0);
    QMat cur = a.unit;
    for (int deg = 1;; ++deg) {
        cur = a.mul(v, cur);
        auto sol = q_solve(pows, cur);
        if (sol) {
            std::vector<Rat> m(deg);
            for (int i = 0; i < deg; ++i) m[i] = -(*sol)(i, 0);
            return m;  // x^deg + m[deg-1] x^{deg-1} + ... (coeffs of lower powers negated)
        }
        pows = pows.hcat(cur);
    }
}

QMat eval_powers(const QAlgebra& a, const QMat& y, int deg) {
    // columns 1, y, y^2, ..., y^{deg-1}
    QMat cols(a.dim, deg);
    QMat cur = a.unit;
    for (int d = 0; d < deg; ++d) {
        for (int i = 0; i < a.dim; ++i) cols(i, d) = cur(i, 0);
        cur = a.mul(y, cur);
    }
    return cols;
}

bool rat_sqrt(const Rat& r, Rat& out) {
    if (r < 0) return false;
    if (r == 0) { out = 0; return true; }
    Int num = r.get_num(), den = r.get_den();
    Int sn = sqrt(num), sd = sqrt(den);
    if (sn * sn != num || sd * sd != den) return false;
    out = Rat(sn) / Rat(sd);
    return true;
}

}  // namespace

RingIsoSearch ring_iso_search(const Ring& r, const Ring& s) {
    RingIsoSearch out;
    if (r.backend != s.backend) {
        out.decided = Tri::No;
        return out;
    }
    switch (r.backend) {
        case Backend::ZConst:
            out.decided = Tri::Yes;
            out.isos.push_back(RingMap::z());
            return out;
        case Backend::GradedMonomial: {
            // enumerate signed variable matchings with coefficient 1
            const MonRing& a = *r.mon;
            const MonRing& b = *s.mon;
            std::vector<int> alive_a, alive_b;
            for (int j = 0; j < a.nvars(); ++j)
                if (a.cone[j] != Cone::Zero) alive_a.push_back(j);
            for (int j = 0; j < b.nvars(); ++j)
                if (b.cone[j] != Cone::Zero) alive_b.push_back(j);
            if (alive_a.size() != alive_b.size()) {
                out.decided = Tri::No;
                return out;
            }
            std::vector<int> perm(alive_a.size());
            for (size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
            do {
                // each matched pair can be straight or flipped
                int n = int(perm.size());
                for (int mask = 0; mask < (1 << n); ++mask) {
                    bool ok = true;
                    std::vector<Monomial> im(a.nvars());
                    for (int j = 0; j < a.nvars(); ++j) {
                        im[j].coeff = 0;
                        im[j].exp.assign(b.nvars(), 0);
                    }
                    for (int i = 0; i < n && ok; ++i) {
                        int ja = alive_a[i], jb = alive_b[perm[i]];
                        long sgn = (mask >> i) & 1 ? -1 : 1;
                        Cone want = a.cone[ja];
                        if (sgn < 0) {
                            if (want == Cone::NonNeg) want = Cone::NonPos;
                            else if (want == Cone::NonPos) want = Cone::NonNeg;
                        }
                        if (b.cone[jb] != want) { ok = false; break; }
                        im[ja].coeff = 1;
                        im[ja].exp[jb] = sgn;
                    }
                    if (!ok) continue;
                    out.isos.push_back(RingMap::graded(r, s, im));
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
            out.decided = out.isos.empty() ? Tri::Unknown : Tri::Yes;
            // cone multiset mismatch is a certain No
            if (out.isos.empty()) {
                std::vector<Cone> ca, cb;
                for (int j : alive_a) ca.push_back(a.cone[j]);
                for (int j : alive_b) cb.push_back(b.cone[j]);
                std::sort(ca.begin(), ca.end());
                std::sort(cb.begin(), cb.end());
                if (ca != cb) out.decided = Tri::No;
            }
            return out;
        }
        case Backend::FinDimQ: {
            const QAlgebra& a = *r.alg;
            const QAlgebra& b = *s.alg;
            if (a.dim != b.dim) { out.decided = Tri::No; return out; }
            if (a.radical_basis().cols != b.radical_basis().cols) { out.decided = Tri::No; return out; }
            if (a.dim == 1) {
                out.decided = Tri::Yes;
                out.isos.push_back(RingMap::findimq(r, s, QMat::identity(1)));
                return out;
            }
            // single-generator path: find a basis vector generating a
            std::optional<QMat> gen;
            for (int i = 0; i < a.dim && !gen; ++i) {
                QMat v(a.dim, 1);
                v(i, 0) = 1;
                if (q_rank(eval_powers(a, v, a.dim)) == a.dim) gen = v;
            }
            if (!gen) {
                out.decided = Tri::Unknown;
                return out;
            }
            std::vector<Rat> m = min_poly(a, *gen);  // degree == dim
            auto try_image = [&](const QMat& y) {
                // check m(y) = 0 and that powers of y span b
                QMat val(b.dim, 1);
                QMat cur = b.unit;
                // evaluate x^dim + m[dim-1] x^{dim-1} + ... + m[0] at y
                std::vector<QMat> pws;
                pws.push_back(b.unit);
                for (int d = 1; d <= a.dim; ++d) pws.push_back(b.mul(y, pws.back()));
                val = pws[a.dim];
                for (int d = 0; d < a.dim; ++d) val = val.add(pws[d].scale(m[d]));
                if (!val.is_zero()) return;
                QMat cols = eval_powers(b, y, a.dim);
                if (q_rank(cols) != a.dim) return;
                // iso matrix: send powers of gen to powers of y
                QMat src_cols = eval_powers(a, *gen, a.dim);
                auto inv = q_inverse(src_cols);
                if (!inv) return;
                QMat h = cols.mul(*inv);
                out.isos.push_back(RingMap::findimq(r, s, h));
            };
            if (a.dim == 2) {
                // exact: y = alpha*1 + beta*g' with discriminant matching
                // m = x^2 + m1 x + m0; write as x^2 - A x - B
                Rat A = -m[1], B = -m[0];
                // pick generator g' of b
                std::optional<QMat> gen2;
                for (int i = 0; i < b.dim && !gen2; ++i) {
                    QMat v(b.dim, 1);
                    v(i, 0) = 1;
                    if (q_rank(eval_powers(b, v, b.dim)) == b.dim) gen2 = v;
                }
                if (!gen2) { out.decided = Tri::Unknown; return out; }
                std::vector<Rat> m2 = min_poly(b, *gen2);
                Rat A2 = -m2[1], B2 = -m2[0];
                Rat disc = A * A + 4 * B, disc2 = A2 * A2 + 4 * B2;
                if (disc2 == 0) {
                    if (disc != 0) { out.decided = Tri::No; return out; }
                    // nilpotent case: beta free nonzero, alpha = A/2 (A=0 here)
                    for (Rat beta : {Rat(1), Rat(-1), Rat(2)}) {
                        QMat y = gen2->scale(beta);
                        QMat alpha_part = b.unit.scale((A - A2 * beta) / 2);
                        try_image(y.add(alpha_part));
                    }
                    out.decided = out.isos.empty() ? Tri::No : Tri::Yes;
                    return out;
                }
                Rat bsq = disc / disc2, broot;
                if (!rat_sqrt(bsq, broot) || broot == 0) {
                    out.decided = Tri::No;
                    return out;
                }
                for (Rat beta : {broot, -broot}) {
                    Rat alpha = (A - A2 * beta) / 2;
                    QMat y = gen2->scale(beta).add(b.unit.scale(alpha));
                    try_image(y);
                }
                out.decided = out.isos.empty() ? Tri::No : Tri::Yes;
                return out;
            }
            // small grid search for higher dimensions (budgeted, honest Unknown)
            std::vector<Rat> grid = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2)};
            std::vector<int> idx(b.dim, 0);
            long budget = 200000;
            while (budget-- > 0) {
                QMat y(b.dim, 1);
                for (int i = 0; i < b.dim; ++i) y(i, 0) = grid[idx[i]];
                try_image(y);
                int i = 0;
                while (i < b.dim) {
                    if (++idx[i] < int(grid.size())) break;
                    idx[i] = 0;
                    ++i;
                }
                if (i == b.dim) break;
            }
            out.decided = out.isos.empty() ? Tri::Unknown : Tri::Yes;
            return out;
        }
    }
    return out;
}

}  // namespace finsp

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "finsp/numeric.hpp"

namespace finsp {

// ---------------------------------------------------------------------------
// FinDimQ backend: commutative unital finite-dimensional Q-algebras, given by
// structure constants. lmul[i] is the matrix of multiplication by the basis
// element e_i, so (e_i * e_j) = lmul[i] * e_j (as coordinate vectors).
// ---------------------------------------------------------------------------
struct QAlgebra {
    int dim = 0;
    std::vector<QMat> lmul;
    QMat unit;  // dim x 1 coordinates of 1

    QAlgebra() = default;
    // Validates commutativity, associativity and solves for the unit.
    static QAlgebra from_mult_table(int dim, const std::vector<QMat>& lmul);
    static QAlgebra rationals();              // Q
    static QAlgebra dual_numbers();           // Q[e]/(e^2)
    static QAlgebra split_pair();             // Q x Q
    static QAlgebra quadratic_field(const Rat& c);  // Q[x]/(x^2 - c), c not a square
    static QAlgebra polynomial_quotient(const std::vector<Rat>& monic_coeffs);  // Q[x]/(m)

    QMat lmul_of(const QMat& v) const;        // multiplication-by-v matrix
    QMat mul(const QMat& u, const QMat& v) const;
    QMat trace_gram() const;                  // Gram matrix of (a,b) -> tr(L_ab)
    QMat radical_basis() const;               // columns span the Jacobson radical
    bool operator==(const QAlgebra& o) const { return dim == o.dim && lmul == o.lmul; }
    std::string str() const;
};

// ---------------------------------------------------------------------------
// GradedMonomial backend: rings spanned by monomials x^a whose exponents obey
// per-variable sign constraints. Cone::NonNeg is k[x], Cone::All is k[x,1/x],
// Cone::NonPos is the subring spanned by nonpositive powers, Cone::Zero means
// the variable does not occur. Everything is graded by Z^nvars.
// ---------------------------------------------------------------------------
enum class Cone { Zero, NonNeg, NonPos, All };

bool cone_contains(Cone c, long e);
bool cone_subset(Cone a, Cone b);
std::optional<Cone> cone_join(Cone a, Cone b);
const char* cone_name(Cone c);

struct MonRing {
    std::vector<std::string> vars;
    std::vector<Cone> cone;

    int nvars() const { return int(vars.size()); }
    bool allows(const std::vector<long>& e) const;
    bool operator==(const MonRing& o) const { return vars == o.vars && cone == o.cone; }
    std::string str() const;
};

struct Monomial {
    Rat coeff;
    std::vector<long> exp;
    bool operator==(const Monomial&) const = default;
};

// ---------------------------------------------------------------------------
// Ring: tagged union over the three backends.
// ---------------------------------------------------------------------------
class Ring {
public:
    Backend backend = Backend::ZConst;
    std::shared_ptr<const QAlgebra> alg;  // FinDimQ
    std::shared_ptr<const MonRing> mon;   // GradedMonomial

    static Ring z();
    static Ring q(QAlgebra a);
    static Ring graded(MonRing m);

    int qdim() const { return alg ? alg->dim : 0; }
    bool operator==(const Ring& o) const;
    bool operator!=(const Ring& o) const { return !(*this == o); }
    std::string str() const;
};

// ---------------------------------------------------------------------------
// RingMap: a unital ring homomorphism. ZConst maps are identities. FinDimQ
// maps are rational matrices (validated multiplicative on basis pairs).
// GradedMonomial maps send each source variable to a monomial of the target.
// ---------------------------------------------------------------------------
struct RingMap {
    Ring src, dst;
    QMat mat;                      // FinDimQ
    std::vector<Monomial> images;  // GradedMonomial, one per source variable

    static RingMap z();
    static RingMap identity(const Ring& r);
    static RingMap findimq(const Ring& src, const Ring& dst, const QMat& mat);
    static RingMap graded(const Ring& src, const Ring& dst, std::vector<Monomial> images);
    // inclusion of sign-restricted rings over a shared ambient variable list
    static RingMap graded_inclusion(const Ring& src, const Ring& dst);

    bool is_identity() const;
    bool operator==(const RingMap& o) const;
    std::string str() const;

    // GradedMonomial: degree transform (column j = exponent of image of var j)
    std::vector<long> transform_degree(const std::vector<long>& d) const;
    // GradedMonomial: true when every variable maps to 1 * (itself)
    bool graded_is_ambient_identity() const;
};

RingMap compose(const RingMap& g, const RingMap& f);  // g after f

bool is_ring_iso(const RingMap& h);
Tri is_flat(const RingMap& h);

// ---------------------------------------------------------------------------
// Tensor product R1 (x)_R0 R2 along h1: R0->R1, h2: R0->R2, with canonical
// injections and the universal property for maps into a common target.
// ---------------------------------------------------------------------------
struct TensorRing {
    Ring ring;
    RingMap inj1, inj2;
    // FinDimQ internals: projection from and section into R1 (x)_Q R2
    QMat proj, sect;
    int d1 = 0, d2 = 0;
};

TensorRing tensor_rings(const RingMap& h1, const RingMap& h2);

// The map T -> S induced by phi1: R1->S, phi2: R2->S (which must agree on R0).
RingMap tensor_induced_hom(const TensorRing& t, const RingMap& phi1, const RingMap& phi2);

// ---------------------------------------------------------------------------
// Budgeted graded/unital ring isomorphism search (used by core comparison).
// `decided` = No means certainly non-isomorphic; isos may be incomplete only
// when decided == Unknown.
// ---------------------------------------------------------------------------
struct RingIsoSearch {
    Tri decided = Tri::Unknown;
    std::vector<RingMap> isos;
};
RingIsoSearch ring_iso_search(const Ring& r, const Ring& s);

}  // namespace finsp

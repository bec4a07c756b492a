#pragma once

// K-theory classes on a smooth projective genus-g curve: Euler pairing via
// Riemann-Roch, slopes, twists, Serre duality and the semistable hom-dimension
// rules used by the stability data.

#include "pstab/numerics.hpp"

#include <optional>
#include <variant>

namespace pstab {

struct CurveCtx {
    Int genus = 0;
    std::optional<Int> polarisation_degree;  // degree of the very ample L

    CurveCtx() = default;
    explicit CurveCtx(Int g, std::optional<Int> D = std::nullopt)
        : genus(std::move(g)), polarisation_degree(std::move(D)) {
        if (genus < 0) throw domain_error("CurveCtx: genus must be >= 0");
        if (polarisation_degree && *polarisation_degree < 1)
            throw domain_error("CurveCtx: polarisation degree must be >= 1");
    }

    bool elliptic() const { return genus == 1; }
};

// K-theory class (rank, degree); negative rank encodes an odd total shift.
struct CurveClass {
    Int rank = 0;
    Int degree = 0;

    CurveClass() = default;
    CurveClass(Int r, Int d) : rank(std::move(r)), degree(std::move(d)) {}

    bool operator==(const CurveClass&) const = default;

    CurveClass operator+(const CurveClass& o) const {
        return {rank + o.rank, degree + o.degree};
    }
    CurveClass operator-(const CurveClass& o) const {
        return {rank - o.rank, degree - o.degree};
    }
    CurveClass operator-() const { return {-rank, -degree}; }

    // K-class of the shift by [1]
    CurveClass shifted() const { return -*this; }

    // rank >= 0 and (rank = 0 implies degree >= 0)
    bool is_sheaf_class() const { return rank > 0 || (rank == 0 && degree >= 0); }
    bool is_torsion() const { return rank == 0 && degree > 0; }
};

inline CurveClass structure_sheaf_class() { return {1, 0}; }
inline CurveClass canonical_class(const CurveCtx& ctx) {
    return {1, 2 * ctx.genus - 2};
}

// chi(a,b) = rk(a) deg(b) - rk(b) deg(a) + rk(a) rk(b) (1-g)
inline Int euler_pairing(const CurveCtx& ctx, const CurveClass& a, const CurveClass& b) {
    return a.rank * b.degree - b.rank * a.degree + a.rank * b.rank * (1 - ctx.genus);
}

inline Rat slope(const CurveClass& c) {
    if (c.rank == 0) throw domain_error("slope: undefined for rank 0");
    return Rat(c.degree, c.rank);
}

// degree shifts by rank * line_degree; torsion classes are twist-invariant
inline CurveClass twist(const CurveClass& c, const Int& line_degree) {
    return {c.rank, c.degree + c.rank * line_degree};
}

struct HomPair {
    Int h0 = 0;
    Int h1 = 0;
    bool operator==(const HomPair&) const = default;
};

// hom^i(a,b) = hom^{1-i}(b, a (x) omega_X): the (h0,h1) table for the
// Serre-dual pair is the swap of the input table.
inline HomPair serre_dual_dims(const CurveCtx&, const CurveClass&, const CurveClass&,
                               const HomPair& dims) {
    return {dims.h1, dims.h0};
}

// Slope comparison with the torsion-as-maximal-slope convention.
// Returns -1, 0, +1 for mu(a) <, =, > mu(b).
inline int slope_compare(const CurveClass& a, const CurveClass& b) {
    const bool ta = (a.rank == 0), tb = (b.rank == 0);
    if (ta && tb) return 0;
    if (ta) return 1;
    if (tb) return -1;
    const Rat ma = slope(a), mb = slope(b);
    if (ma < mb) return -1;
    if (ma > mb) return 1;
    return 0;
}

// Hom dimensions between declared-semistable classes, where Riemann-Roch
// plus slope separation determines them.  "indeterminate" carries the chi
// constraint h0 - h1 = chi when RR alone cannot resolve the table.
struct IndeterminateHom {
    Int chi = 0;  // the surviving constraint h0 - h1 = chi
    bool operator==(const IndeterminateHom&) const = default;
};
using HomDims = std::variant<HomPair, IndeterminateHom>;

inline bool is_determined(const HomDims& h) {
    return std::holds_alternative<HomPair>(h);
}

// assume_generic_vanishing: caller asserts h1 = 0 in the mu(a) < mu(b),
// chi >= 0 case (automatic for g = 1 where semistability gives it).
inline HomDims hom_dims_semistable(const CurveCtx& ctx, const CurveClass& a,
                                   const CurveClass& b,
                                   bool assume_generic_vanishing = false) {
    if (!a.is_sheaf_class() || !b.is_sheaf_class())
        throw domain_error("hom_dims_semistable: inputs must be sheaf classes");
    if (a.rank == 0 && a.degree == 0) return HomPair{0, 0};
    if (b.rank == 0 && b.degree == 0) return HomPair{0, 0};

    const Int chi = euler_pairing(ctx, a, b);

    // torsion target: every map from a bundle hits it, no higher ext
    if (b.rank == 0 && a.rank > 0) return HomPair{chi, 0};

    const int cmp = slope_compare(a, b);
    if (cmp > 0) {
        // mu(a) > mu(b): Hom(a,b) = 0 by semistability, so h1 = -chi.
        // chi > 0 here means no semistable pair with these classes exists on
        // this curve (possible only for g = 0): refuse to fabricate h1 < 0.
        if (chi > 0) return IndeterminateHom{chi};
        return HomPair{0, -chi};
    }
    if (cmp < 0) {
        if (ctx.elliptic() || (assume_generic_vanishing && chi >= 0)) {
            // slope-separated with vanishing hypothesis: h1 = 0
            return HomPair{chi, 0};
        }
        return IndeterminateHom{chi};
    }
    // equal slopes: RR alone cannot split h0/h1
    return IndeterminateHom{chi};
}

// Strict destabilising-quotient gap: mu(quotient) < mu(parent) - 1/r^2.
inline bool destabilizes(const CurveCtx&, const CurveClass& parent,
                         const CurveClass& quotient) {
    if (parent.rank <= 0 || quotient.rank <= 0)
        throw domain_error("destabilizes: ranks must be positive");
    return slope(quotient) < slope(parent) - Rat(1, parent.rank * parent.rank);
}

}  // namespace pstab

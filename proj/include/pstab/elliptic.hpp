#pragma once

// Formal derived objects on an elliptic curve: shifted semistable atoms,
// the Fourier-Mukai action on K-classes and atoms, torsion theta divisors
// and P-equivalence.

#include "pstab/curve.hpp"
#include "pstab/numerics.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace pstab {

// Opaque point label with a formal negation involution; no group-law
// arithmetic.  Negation toggles a leading '-' on the base name.
struct PointLabel {
    std::string name;

    PointLabel() = default;
    explicit PointLabel(std::string n) : name(std::move(n)) {}

    PointLabel negated() const {
        if (!name.empty() && name.front() == '-') return PointLabel{name.substr(1)};
        return PointLabel{"-" + name};
    }

    auto operator<=>(const PointLabel&) const = default;
};

using SupportMultiset = std::vector<PointLabel>;  // kept sorted

inline SupportMultiset normalized(SupportMultiset s) {
    std::sort(s.begin(), s.end());
    return s;
}

// One shifted semistable summand.  `shift` is the cohomological degree of
// the summand, i.e. the atom stands for sheaf[-shift].  Torsion atoms
// (rank 0) carry their support multiset, one label per length unit.
struct Atom {
    CurveClass kclass;
    Int shift = 0;
    SupportMultiset support;

    Atom() = default;
    Atom(CurveClass k, Int s, SupportMultiset sup = {})
        : kclass(std::move(k)), shift(std::move(s)), support(normalized(std::move(sup))) {
        if (!kclass.is_sheaf_class())
            throw domain_error("Atom: kclass must be a sheaf class");
        // An empty support on a torsion atom means "support unspecified";
        // a declared support must account for the full length.
        if (kclass.rank == 0 && kclass.degree >= 1 && !support.empty() &&
            Int(support.size()) != kclass.degree)
            throw domain_error("Atom: torsion support size must equal the length");
    }

    bool is_torsion() const { return kclass.is_torsion(); }

    // contribution to the total K-class: (-1)^shift * kclass
    CurveClass signed_kclass() const {
        bool odd = (shift % 2) != 0;
        return odd ? -kclass : kclass;
    }
};

struct EllipticObject {
    std::vector<Atom> atoms;

    EllipticObject() = default;
    explicit EllipticObject(std::vector<Atom> a) : atoms(std::move(a)) {}

    static EllipticObject torsion(SupportMultiset support) {
        Int len = Int(support.size());
        if (len == 0) return EllipticObject{};
        return EllipticObject{{Atom{{0, len}, 0, std::move(support)}}};
    }

    CurveClass total_kclass() const {
        CurveClass t{0, 0};
        for (const auto& a : atoms) t = t + a.signed_kclass();
        return t;
    }

    bool is_torsion_at_shift_zero() const {
        for (const auto& a : atoms)
            if (!a.is_torsion() || a.shift != 0) return false;
        return true;
    }

    Int torsion_length() const {
        Int len = 0;
        for (const auto& a : atoms) len += a.kclass.degree;
        return len;
    }
};

// K-theory action of the Fourier-Mukai transform: (r,d) -> (d,-r).
// Applying twice gives (-r,-d), the class of the shift by one.
inline CurveClass fm_kclass(const CurveClass& c) {
    return {c.degree, -c.rank};
}

// Atom-wise Fourier-Mukai transform.  The cohomological-degree bookkeeping
// follows the normalization fixed by the transform of O_X(-3P) (a rank-3
// degree-1 bundle placed in degree one) and of O_X (a skyscraper in degree
// one): atoms of slope mu < 0 and mu = 0 bundles land one degree higher
// with support labels negated; mu > 0 atoms and torsion atoms stay in
// their degree.  Double transform = degree shift with negated supports,
// the K-shadow of FM FM = iota^* [-1].
inline Atom fm_atom(const Atom& a) {
    const CurveClass& k = a.kclass;
    SupportMultiset neg;
    for (const auto& p : a.support) neg.push_back(p.negated());

    if (a.is_torsion()) {
        // length-n torsion -> semistable (n,0) bundle, same degree
        return Atom{{k.degree, 0}, a.shift, a.support};
    }
    if (k.degree > 0) {
        // mu > 0: (r,d) -> sheaf (d,-r), same degree
        return Atom{{k.degree, -k.rank}, a.shift, a.support};
    }
    if (k.degree < 0) {
        // mu < 0: (r,d) -> sheaf (-d,r) one degree higher
        return Atom{{-k.degree, k.rank}, a.shift + 1, neg};
    }
    // mu = 0 bundle of rank r -> torsion of length r one degree higher
    SupportMultiset sup = neg;
    if (Int(sup.size()) != k.rank)
        sup.assign(static_cast<std::size_t>(k.rank), PointLabel{"?"});
    return Atom{{0, k.rank}, a.shift + 1, sup};
}

inline EllipticObject fm_object(const EllipticObject& o) {
    std::vector<Atom> out;
    out.reserve(o.atoms.size());
    for (const auto& a : o.atoms) out.push_back(fm_atom(a));
    return EllipticObject{std::move(out)};
}

// Theta divisor of a torsion object: a union of lines in
// P(Hom(O(-3P),O)^dual), one for each support point with multiplicity.
struct ThetaDivisor {
    SupportMultiset lines;
    std::string ambient = "P(Hom(O(-3P),O)^v)";
    Int degree = 0;

    bool operator==(const ThetaDivisor& o) const {
        return lines == o.lines && degree == o.degree;
    }
};

inline ThetaDivisor theta_torsion(const EllipticObject& t) {
    if (!t.is_torsion_at_shift_zero())
        throw domain_error("theta_torsion: input must be torsion in degree zero");
    SupportMultiset lines;
    for (const auto& a : t.atoms) {
        if (Int(a.support.size()) != a.kclass.degree)
            throw domain_error("theta_torsion: torsion atom has undeclared support");
        lines.insert(lines.end(), a.support.begin(), a.support.end());
    }
    lines = normalized(std::move(lines));
    ThetaDivisor d;
    d.degree = Int(lines.size());
    d.lines = std::move(lines);
    return d;
}

inline bool p_equivalent(const EllipticObject& t1, const EllipticObject& t2) {
    return theta_torsion(t1) == theta_torsion(t2);
}

// Maximal number of isomorphism classes in a P-equivalence class of
// length-r torsion sheaves: the number of partitions of r.
inline Int p_class_max_isoclasses(const Int& r) {
    if (r < 1) throw domain_error("p_class_max_isoclasses: r must be >= 1");
    return partition_count(r);
}

// deg(Theta_e) = (2g + ceil(d/r) - d/r)(r^3 + r), always an integer:
// expand as (2g + ceil(d/r)) r (r^2+1) - d (r^2+1).
inline Int theta_degree_general(const CurveCtx& ctx, const Int& r, const Int& d) {
    if (r < 1) throw domain_error("theta_degree_general: r must be >= 1");
    const Int c = ceil_div(d, r);
    const Int r2p1 = r * r + 1;
    return (2 * ctx.genus + c) * r * r2p1 - d * r2p1;
}

}  // namespace pstab

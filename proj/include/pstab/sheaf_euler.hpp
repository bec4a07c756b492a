#pragma once

// Euler-triangle numerics: S^m rank/determinant, the kernel-section and
// injectivity thresholds, the universal bundle F_{r,d}, and the sheaf
// condition generators for dimensions 0, 1, 2 together with the surface
// condition pipeline.

#include "pstab/curve.hpp"
#include "pstab/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pstab {

struct SmSpec {
    Int dim_v = 1;  // dim V
    Int m = 0;

    SmSpec(Int dv, Int m_) : dim_v(std::move(dv)), m(std::move(m_)) {
        if (dim_v < 1) throw domain_error("SmSpec: dim V must be >= 1");
    }
};

struct SmRankDet {
    Int rank;
    Int det_exponent;  // det = L^(det_exponent)
    bool operator==(const SmRankDet&) const = default;
};

// rk S^m(V,O,L) = C(m+dimV-1, m+1), det = L^(-C(m+dimV-1, m))
inline SmRankDet sm_rank_det(const SmSpec& spec) {
    const Int n = spec.m + spec.dim_v - 1;
    return {binomial(n, spec.m + 1), -binomial(n, spec.m)};
}

// minimal m with guaranteed kernel sections: (dim U - 1) n
inline Int lemma51_bound(const Int& dim_u, const Int& n) {
    if (dim_u < 1 || n < 1) throw domain_error("lemma51_bound: inputs must be >= 1");
    return (dim_u - 1) * n;
}

// injectivity threshold (dim V - 1)(hom(b,c) - 1), clamped at 0
inline Int lemma54_threshold(const Int& dim_v, const Int& hom_bc) {
    if (dim_v < 1) throw domain_error("lemma54_threshold: dim V must be >= 1");
    if (hom_bc < 0) throw domain_error("lemma54_threshold: hom(b,c) must be >= 0");
    Int t = (dim_v - 1) * (hom_bc - 1);
    return t < 0 ? Int(0) : t;
}

struct FrdClass {
    CurveClass kclass;      // rank r^2, degree r^2(g-1) - rd
    Int det_exponent;       // power of L_1 giving the determinant
    CurveClass a;           // the presenting pair A -> B -> F
    CurveClass b;
};

// The universal orthogonality bundle F_{r,d} as the cokernel class of
// A -> B; asserts deg B - deg A = r^2(g-1) - rd.
inline FrdClass f_rd_class(const CurveCtx& ctx, const Int& r, const Int& d) {
    if (r < 1) throw domain_error("f_rd_class: r must be >= 1");
    const Int g = ctx.genus;
    const Int c = ceil_div(d, r);
    const CurveClass A{1, r * d - 2 * g * r * r - (r * r + 1) * c - g - 1};
    const CurveClass B{r * r + 1, (r * r + 1) * (-g - 1 - c)};
    const Int degree = r * r * (g - 1) - r * d;
    if (B.degree - A.degree != degree)
        throw std::logic_error("f_rd_class: presentation degree identity violated");
    return {CurveClass{r * r, degree}, degree, A, B};
}

// --- sheaf condition lists ----------------------------------------------

// One numerical condition: hom/cohomology dimensions of a named test object
// against the unknown object a, possibly with a symbolic twist.
struct ConditionItem {
    std::string object_desc;          // e.g. "O_X", "S^m(V,O,O(1)) (x) O(1)"
    std::string degree_spec;          // "i != 0", "i = 0", ...
    std::optional<Int> twist;         // twist k of the unknown, when meaningful
    std::optional<Int> expected;      // numeric expected dimension; nullopt = 0
    std::string block;                // which named block produced it
};

struct ConditionList {
    std::vector<ConditionItem> items;
    std::vector<std::string> symbolic_constants;  // e.g. "m2: |m2 H| curve"
    std::optional<CurveClass> b_class_curve;      // dim 1: b = O(-p(-1)) as (1,-p(-1))
    std::vector<std::string> b_summands;          // dim 2: the five pieces of b
    std::vector<std::string> notes;
};

// Sheaf-detection conditions in dimension n = 0, 1, 2 for a Hilbert
// polynomial p (deg p <= n).  dim_v is only used for n = 2.
inline ConditionList gen_sheaf_conditions(int n, const IntPoly& p, const Int& dim_v = 2) {
    if (n < 0 || n > 2) throw domain_error("gen_sheaf_conditions: n must be 0, 1 or 2");
    if (p.degree() > n)
        throw domain_error("gen_sheaf_conditions: deg p exceeds the dimension");
    ConditionList list;

    if (n == 0) {
        list.items.push_back({"a", "H^i(a) = 0 for i != 0", std::nullopt, std::nullopt,
                              "dimension-zero"});
        return list;
    }

    if (n == 1) {
        const Int pm1 = p(-1);
        if (pm1 < 0)
            list.notes.push_back("p(-1) < 0: not realizable, p(-1) is the dimension "
                                 "of a section space");
        for (const Int& k : {Int(-1), Int(0), pm1})
            list.items.push_back({"a", "H^i(a(k)) = 0 for i != 0", k, std::nullopt,
                                  "vanishing-grid"});
        for (const Int& k : {Int(-1), Int(0)})
            list.items.push_back({"a", "dim H^0(a(k)) = p(k)", k, p(k),
                                  "dimension-grid"});
        list.b_class_curve = CurveClass{1, -pm1};
        list.items.push_back({"O(-p(-1))", "Hom(b, a[i]) = 0 for i != 0", std::nullopt,
                              std::nullopt, "b-orthogonality"});
        return list;
    }

    // n == 2
    if (dim_v < 1) throw domain_error("gen_sheaf_conditions: dim V must be >= 1");
    const Int m = (dim_v - 1) * (p(0) - 1);
    const IntPoly dp = p.discrete_derivative();
    const Int dpm1 = dp(-1);
    const SmRankDet sm = sm_rank_det(SmSpec{dim_v, m});
    const std::string sm_desc = "S^" + m.str() + "(V,O,O(1)) [rank " + sm.rank.str() +
                                ", det O(" + sm.det_exponent.str() + ")]";

    for (const Int& k : {Int(-2), Int(-1), Int(0)})
        list.items.push_back({"a", "H^i(a(k)) = 0 for i != 0", k, std::nullopt,
                              "vanishing-grid"});
    for (const Int& k : {Int(-2), Int(-1), Int(0)})
        list.items.push_back({"a", "dim H^0(a(k)) = p(k)", k, p(k), "dimension-grid"});

    const std::string twists[5] = {
        "", " (x) O(1)", " (x) O(" + Int(-dpm1).str() + ")", "", ""};
    const std::string objs[5] = {
        sm_desc, sm_desc + twists[1], sm_desc + twists[2],
        "O(" + Int(-dpm1).str() + ")", "O(" + Int(1 - dpm1).str() + ")"};
    for (int i = 0; i < 5; ++i) {
        list.items.push_back({objs[i], "Hom(., a[i]) = 0 for i != 0", std::nullopt,
                              std::nullopt, "b-orthogonality(iii_" + std::to_string(i + 1) + ")"});
        list.b_summands.push_back(objs[i]);
    }
    list.notes.push_back("m = " + m.str() + " = (dimV-1)(p(0)-1), p'(-1) = " +
                         dpm1.str());
    return list;
}

// Constants of the surface comparison datum; the existence proofs give no
// formulas, so the user supplies them with provenance.
struct SurfaceConstants {
    std::optional<Int> m0, m1, m2, m3;
    std::optional<Int> rank;  // r, for the active pair O_H~^(r^2+1)(-m3)
};

// Full condition pipeline for the surface theorem: regularity grid,
// torsion-freeness, local-freeness and the symbolic semistability pair.
inline ConditionList gen_surface_pipeline(const IntPoly& p, const SurfaceConstants& c,
                                          const Int& dim_v = 3) {
    std::vector<std::string> missing;
    if (!c.m0) missing.push_back("m0");
    if (!c.m1) missing.push_back("m1");
    if (!c.m2) missing.push_back("m2");
    if (!c.m3) missing.push_back("m3");
    if (!missing.empty()) {
        std::string msg = "gen_surface_pipeline: missing constants:";
        for (const auto& m : missing) msg += " " + m;
        throw domain_error(msg);
    }

    ConditionList list = gen_sheaf_conditions(2, p, dim_v);
    for (auto& item : list.items)
        if (item.block.rfind("b-orthogonality", 0) == 0 || item.block == "vanishing-grid" ||
            item.block == "dimension-grid")
            item.block = "regularity:" + item.block;

    // torsion freeness: 4 vanishing + 2 dimension equalities at m1, m1-1
    for (int j = 0; j <= 1; ++j) {
        const Int k = *c.m1 - j;
        for (int i = 0; i <= 1; ++i)
            list.items.push_back({"a", "h^" + std::to_string(i) + "(a(k)) = 0", k,
                                  std::nullopt, "torsion-freeness"});
        list.items.push_back({"a", "h^2(a(k)) = p(k)", k, p(k), "torsion-freeness"});
    }

    // local freeness: C_{-4} = O(1-m1), C_{-5} = O(-m1)
    list.items.push_back({"O(" + Int(1 - *c.m1).str() + ")", "C_{-4} conditions",
                          std::nullopt, std::nullopt, "local-freeness"});
    list.items.push_back({"O(" + Int(-*c.m1).str() + ")", "C_{-5} conditions",
                          std::nullopt, std::nullopt, "local-freeness"});

    // semistability: active pair, carried symbolically
    const std::string rk = c.rank ? ("r^2+1 = " + Int(*c.rank * *c.rank + 1).str())
                                  : "r^2+1";
    list.items.push_back({"M", "C_1 = M (kernel on the curve H~)", std::nullopt,
                          std::nullopt, "semistability"});
    list.items.push_back({"O_H~^(" + rk + ")(-" + c.m3->str() + ")",
                          "C_0, active cone target", std::nullopt, std::nullopt,
                          "semistability"});
    list.symbolic_constants = {"m0 = " + c.m0->str() + " (regularity twist)",
                               "m1 = " + c.m1->str() + " (section vanishing bound)",
                               "m2 = " + c.m2->str() + " (H~ in |m2 H|, Bogomolov restriction)",
                               "m3 = " + c.m3->str() + " (twist of the active target)"};
    return list;
}

// The contradiction step of the torsion-freeness argument: the length
// l = (n+1) c1(T).H of the restricted torsion exceeds n whenever T != 0.
inline bool torsionfree_length_check(const Int& n, const Int& c1t_dot_h) {
    if (n < 0 || c1t_dot_h < 0)
        throw domain_error("torsionfree_length_check: inputs must be nonnegative");
    return (n + 1) * c1t_dot_h > n;
}

}  // namespace pstab

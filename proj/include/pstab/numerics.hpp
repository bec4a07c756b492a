#pragma once

// Exact integer/rational arithmetic shared by all modules: binomials,
// ceiling division, partition counts, integer-valued polynomials and
// exhaustive integer-box searches. No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pstab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct integrality_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// C(n,k), zero outside the Pascal triangle (k<0, or 0<=n<k, or n<0).
inline Int binomial(const Int& n, const Int& k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int small = k;
    if (n - k < small) small = n - k;
    Int result = 1;
    for (Int i = 1; i <= small; ++i) {
        result *= n - small + i;
        result /= i;
    }
    return result;
}

// ceil(d/r) for r > 0, correct for negative d.
inline Int ceil_div(const Int& d, const Int& r) {
    if (r <= 0) throw domain_error("ceil_div: divisor must be positive");
    Int q = d / r;          // truncates toward zero
    if (q * r < d) ++q;
    return q;
}

// Number of integer partitions of r, p(0) = 1.  Euler recurrence via the
// standard p(n) = sum_k p(n - k(3k-1)/2) alternating form would do; the
// plain two-variable table is simpler and instant at these sizes.
inline Int partition_count(const Int& r) {
    if (r < 0) throw domain_error("partition_count: negative input");
    const std::size_t n = static_cast<std::size_t>(r);
    std::vector<Int> p(n + 1, 0);
    p[0] = 1;
    for (std::size_t part = 1; part <= n; ++part)
        for (std::size_t s = part; s <= n; ++s)
            p[s] += p[s - part];
    return p[n];
}

// Univariate polynomial with rational coefficients, lowest degree first,
// used as an integer-valued polynomial Z -> Z.  Integrality is checked
// at evaluation time, not on construction.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
        trim();
    }

    static IntPoly zero() { return IntPoly{}; }

    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<Rat>& coefficients() const { return coeffs_; }

    Rat eval_rational(const Int& k) const {
        Rat acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * Rat(k) + *it;
        return acc;
    }

    // exact value p(k); throws if the value is not an integer
    Int operator()(const Int& k) const {
        Rat v = eval_rational(k);
        if (rat_den(v) != 1)
            throw integrality_error("IntPoly: non-integer value at k=" + k.str());
        return rat_num(v);
    }

    // discrete derivative p'(k) := p(k) - p(k-1)
    IntPoly discrete_derivative() const {
        if (coeffs_.empty()) return IntPoly{};
        // expand p(k) - p(k-1) coefficient-wise using binomial expansion
        std::vector<Rat> out(coeffs_.size(), Rat(0));
        for (std::size_t n = 0; n < coeffs_.size(); ++n) {
            // c_n k^n - c_n (k-1)^n
            for (std::size_t j = 0; j < n; ++j) {
                Rat sign = ((n - j) % 2 == 0) ? Rat(-1) : Rat(1);
                out[j] += sign * coeffs_[n] * Rat(binomial(Int(n), Int(j)));
            }
        }
        return IntPoly(std::move(out));
    }

    bool operator==(const IntPoly& o) const { return coeffs_ == o.coeffs_; }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rat> coeffs_;
};

inline Int poly_eval(const IntPoly& p, const Int& k) { return p(k); }

// --- multivariate integer polynomials and bounded box search ------------

// Sparse multivariate polynomial with integer coefficients; exponents are
// indexed by variable position.
class MultiPoly {
public:
    MultiPoly() = default;

    static MultiPoly constant(const Int& c) {
        MultiPoly p;
        p.add_term(c, {});
        return p;
    }
    static MultiPoly variable(std::size_t index) {
        MultiPoly p;
        std::vector<unsigned> e(index + 1, 0);
        e[index] = 1;
        p.add_term(1, e);
        return p;
    }

    void add_term(const Int& coeff, std::vector<unsigned> exps) {
        if (coeff == 0) return;
        while (!exps.empty() && exps.back() == 0) exps.pop_back();
        auto it = terms_.find(exps);
        if (it == terms_.end()) {
            terms_.emplace(std::move(exps), coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Int eval(const std::vector<Int>& point) const {
        Int acc = 0;
        for (const auto& [exps, coeff] : terms_) {
            Int term = coeff;
            for (std::size_t v = 0; v < exps.size(); ++v) {
                if (exps[v] == 0) continue;
                if (v >= point.size())
                    throw domain_error("MultiPoly: point dimension too small");
                for (unsigned e = 0; e < exps[v]; ++e) term *= point[v];
            }
            acc += term;
        }
        return acc;
    }

    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(c, e);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(-c, e);
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        MultiPoly r;
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                std::vector<unsigned> e(std::max(ea.size(), eb.size()), 0);
                for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
                for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
                r.add_term(ca * cb, std::move(e));
            }
        return r;
    }
    MultiPoly operator*(const Int& c) const {
        MultiPoly r;
        for (const auto& [e, co] : terms_) r.add_term(co * c, e);
        return r;
    }

    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

private:
    std::map<std::vector<unsigned>, Int> terms_;
};

enum class Rel { GE, GT, LE, LT, EQ };

// polynomial inequality "lhs rel 0"
struct Constraint {
    MultiPoly lhs;
    Rel rel = Rel::GE;

    bool satisfied(const std::vector<Int>& point) const {
        Int v = lhs.eval(point);
        switch (rel) {
            case Rel::GE: return v >= 0;
            case Rel::GT: return v > 0;
            case Rel::LE: return v <= 0;
            case Rel::LT: return v < 0;
            case Rel::EQ: return v == 0;
        }
        return false;
    }
};

// inclusive per-variable integer bounds
struct IntBox {
    struct Range {
        Int lo, hi;
    };
    std::vector<Range> ranges;

    IntBox() = default;
    explicit IntBox(std::vector<Range> r) : ranges(std::move(r)) {
        for (const auto& rg : ranges)
            if (rg.lo > rg.hi) throw domain_error("IntBox: lo > hi");
    }
};

struct BoxSearchResult {
    bool empty = true;                          // no point satisfies all constraints
    std::optional<std::vector<Int>> witness;    // lexicographically smallest, if any
};

// Exhaustive integer search over the box.  Returns the lexicographically
// smallest point satisfying every constraint, or reports emptiness.  An
// empty constraint list is rejected: vacuous nonemptiness is ambiguous.
inline BoxSearchResult box_search_empty(const std::vector<Constraint>& constraints,
                                        const IntBox& box) {
    if (constraints.empty())
        throw domain_error("box_search_empty: empty constraint list");
    std::vector<Int> point;
    for (const auto& r : box.ranges) point.push_back(r.lo);
    if (box.ranges.empty()) return {true, std::nullopt};

    while (true) {
        bool ok = true;
        for (const auto& c : constraints)
            if (!c.satisfied(point)) {
                ok = false;
                break;
            }
        if (ok) return {false, point};
        // lexicographic increment
        std::size_t i = point.size();
        while (i > 0) {
            --i;
            if (point[i] < box.ranges[i].hi) {
                ++point[i];
                for (std::size_t j = i + 1; j < point.size(); ++j)
                    point[j] = box.ranges[j].lo;
                break;
            }
            if (i == 0) return {true, std::nullopt};
        }
    }
}

}  // namespace pstab

/* Flows over the projective line and plane attached to a prime field:
 * partial arithmetic on F_p with a point at infinity, the exhaustive
 * one-dimensional flow search, the two-dimensional quadratic flow with its
 * completed value grid, and bijection audits on the completed spaces.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace proflow {

// Element of F_p extended by a single point at infinity.  Finite residues
// live in [0, p); the prime travels as a function argument.
struct PElem {
    int v = 0;
    bool inf = false;

    static PElem fin(long x, int p) {
        PElem e;
        e.v = static_cast<int>(((x % p) + p) % p);
        return e;
    }
    static PElem infinity() {
        PElem e;
        e.inf = true;
        return e;
    }
    friend bool operator==(const PElem& a, const PElem& b) {
        return a.inf == b.inf && (a.inf || a.v == b.v);
    }
    friend bool operator!=(const PElem& a, const PElem& b) { return !(a == b); }
};

std::string pelem_str(const PElem& e);  // digits, or the infinity glyph

// Partial operations: an empty result encodes "undefined".  The rules are
// the natural projective-line extension: a·inf = inf for a != 0,
// a + inf = inf, a/inf = 0, inf·inf = inf, 1/0 = inf, while 0·inf and
// inf + inf stay undefined.
using PartialResult = std::optional<PElem>;

PartialResult pf_add(const PElem& a, const PElem& b, int p);
PElem pf_neg(const PElem& a, int p);  // total: -inf = inf
PartialResult pf_sub(const PElem& a, const PElem& b, int p);
PartialResult pf_mul(const PElem& a, const PElem& b, int p);
PElem pf_inv(const PElem& a, int p);  // total: 0 <-> inf
PartialResult pf_div(const PElem& a, const PElem& b, int p);

// A pair written a•b; coordinates may carry the infinity marker.
struct CompletedPoint {
    PElem a, b;
    friend bool operator==(const CompletedPoint& x, const CompletedPoint& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const CompletedPoint& x, const CompletedPoint& y) {
        return !(x == y);
    }
};

std::string cpoint_str(const CompletedPoint& pt);  // "a•b"

// Coordinate-wise scaling by a nonzero residue: z·inf = inf, so e.g.
// 2(1•inf) = 2•inf and 3(0•inf) = 0•inf.  Throws for z = 0 mod p.
CompletedPoint scale_point(long z, const CompletedPoint& pt, int p);

// ---- one-dimensional flows ---------------------------------------------

// f is a lookup table over F_p + {inf}: slots 0..p-1, then the value at
// infinity.  The flow equation (1-z) f(x) = f(f(xz)(1-z)/z) is required
// only at pairs (x, z) where every intermediate operation is defined.
bool prte_1d_holds(const std::vector<PElem>& table, int p);

struct Flow1D {
    enum class Kind { zero_map, infinity_map, moebius };
    Kind kind = Kind::zero_map;
    int a = 0;  // moebius parameter in f(x) = x/(ax+1)
    std::vector<PElem> table;
};

// Exhaustive search over all (p+1)^(p+1) self-maps; p in {2, 3, 5, 7}.
// A solution must satisfy the pointwise equation and be either a bijection
// of the completed line or a constant collapse map: hybrid tables (a
// bijection on residues with a rogue value at infinity) pass the pointwise
// check only because the pairs that would pin the infinity slot all have
// an undefined intermediate.  Every solution is classified as 0, infinity,
// or x/(ax+1); an unclassifiable solution throws std::logic_error.
std::vector<Flow1D> enumerate_1d_flows(int p);

// ---- the two-dimensional quadratic flow --------------------------------

// (x^2+y^2+2x)/((x+1)^2+(y+1)^2) • (x^2+y^2+2y)/(same): plain evaluation,
// defined exactly when both inputs are finite and the denominator is a
// nonzero residue.
std::optional<CompletedPoint> phi_p_direct(int p, const CompletedPoint& in);

// Completed value grid over the (p+1) x (p+1) torus, row-major with
// x = 0..p-1, inf down and y = 0..p-1, inf across.  Requires -1 to be a
// quadratic residue mod p (p = 1 mod 4); the undefined cells are filled by
// propagating the iteration identity n phi^(n)(x) = phi(nx) together with
// bijectivity of the completed map.  Throws std::runtime_error when no
// consistent completion exists and std::invalid_argument for a bad prime.
struct CompletionResult {
    int p = 0;
    std::vector<CompletedPoint> grid;
    int direct_cells = 0;
    int completed_cells = 0;
};

CompletionResult phi_p_completion(int p);

// Single-cell view: the direct value when defined, the completed value for
// p = 1 mod 4 otherwise.  For p = 3 mod 4 the only undefined input is
// (-1,-1), whose completion is the extra point of a one-point sphere
// rather than a coordinate pair, so the result stays empty there.
std::optional<CompletedPoint> phi_p_eval(int p, const PElem& x, const PElem& y);

// ---- bijection audits ---------------------------------------------------

struct CardinalityEntry {
    std::string flow;
    std::string space;
    long cardinality = 0;
    bool bijection = false;
};

// For an odd prime p <= 13: the three printed flows on their completed
// spaces of sizes p^2, (p+1)^2 and p^2+p+1, plus the quadratic flow on the
// sphere (p = 3 mod 4, size p^2+1) or on the torus (p = 1 mod 4, size
// (p+1)^2, via the completed grid).
std::vector<CardinalityEntry> cardinality_checks(int p);

// Affine zero count of x^2 y + x y^2 + x^2 + y^2 over F_p: the base locus
// of the related cubic flow.  Recorded for reference, not asserted.
long cubic_flow_locus_count(int p);

}  // namespace proflow

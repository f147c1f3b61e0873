#include "proflow/ffield.hpp"

#include "proflow/parallel.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace proflow {

namespace {

int norm_mod(long x, int p) { return static_cast<int>(((x % p) + p) % p); }

int mod_inv(int a, int p) {
    // p prime, a != 0 mod p: Fermat power
    int r = 1;
    long base = norm_mod(a, p);
    int e = p - 2;
    while (e > 0) {
        if (e & 1) r = static_cast<int>((r * base) % p);
        base = (base * base) % p;
        e >>= 1;
    }
    return r;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

}  // namespace

std::string pelem_str(const PElem& e) {
    return e.inf ? "∞" : std::to_string(e.v);
}

PartialResult pf_add(const PElem& a, const PElem& b, int p) {
    if (a.inf && b.inf) return std::nullopt;
    if (a.inf || b.inf) return PElem::infinity();
    return PElem::fin(a.v + b.v, p);
}

PElem pf_neg(const PElem& a, int p) {
    return a.inf ? a : PElem::fin(-a.v, p);
}

PartialResult pf_sub(const PElem& a, const PElem& b, int p) {
    return pf_add(a, pf_neg(b, p), p);
}

PartialResult pf_mul(const PElem& a, const PElem& b, int p) {
    if (a.inf || b.inf) {
        const bool zero = (!a.inf && a.v == 0) || (!b.inf && b.v == 0);
        if (zero) return std::nullopt;  // 0 * inf
        return PElem::infinity();
    }
    return PElem::fin(static_cast<long>(a.v) * b.v, p);
}

PElem pf_inv(const PElem& a, int p) {
    if (a.inf) return PElem::fin(0, p);
    if (a.v == 0) return PElem::infinity();
    return PElem::fin(mod_inv(a.v, p), p);
}

PartialResult pf_div(const PElem& a, const PElem& b, int p) {
    return pf_mul(a, pf_inv(b, p), p);
}

std::string cpoint_str(const CompletedPoint& pt) {
    return pelem_str(pt.a) + "•" + pelem_str(pt.b);
}

CompletedPoint scale_point(long z, const CompletedPoint& pt, int p) {
    const int zr = norm_mod(z, p);
    if (zr == 0) throw std::invalid_argument("scale_point: zero scalar");
    const auto one = [&](const PElem& e) {
        return e.inf ? e : PElem::fin(static_cast<long>(zr) * e.v, p);
    };
    return {one(pt.a), one(pt.b)};
}

// ---- one-dimensional flows ---------------------------------------------

namespace {

// Integer encoding of PElem for hot loops: 0..p-1 finite, p = inf, -1 =
// undefined.
struct Ops1D {
    int p, n;                      // n = p + 1
    std::vector<int> mul;          // n x n partial product
    std::vector<int> one_minus;    // 1 - z (total)
    std::vector<int> ratio;        // (1 - z)/z (partial)

    explicit Ops1D(int p_) : p(p_), n(p_ + 1), mul(n * n), one_minus(n), ratio(n) {
        for (int a = 0; a <= p; ++a) {
            for (int b = 0; b <= p; ++b) {
                int r;
                if (a == p || b == p) {
                    r = (a == 0 || b == 0) ? -1 : p;
                } else {
                    r = (a * b) % p;
                }
                mul[a * n + b] = r;
            }
        }
        for (int z = 0; z <= p; ++z) {
            one_minus[z] = (z == p) ? p : norm_mod(1 - z, p);
            if (z == p) {
                ratio[z] = -1;  // inf/inf
            } else if (z == 0) {
                ratio[z] = p;  // 1/0
            } else {
                ratio[z] = norm_mod(static_cast<long>(one_minus[z]) * mod_inv(z, p), p);
            }
        }
    }

    // true when the flow equation holds at every pair with all
    // intermediates defined
    bool holds(const std::vector<int>& f) const {
        for (int x = 0; x <= p; ++x) {
            for (int z = 0; z <= p; ++z) {
                const int lhs = mul[one_minus[z] * n + f[x]];
                if (lhs < 0) continue;
                const int xz = mul[x * n + z];
                if (xz < 0 || ratio[z] < 0) continue;
                const int mid = mul[f[xz] * n + ratio[z]];
                if (mid < 0) continue;
                if (f[mid] != lhs) return false;
            }
        }
        return true;
    }
};

std::vector<int> decode_candidate(unsigned long long idx, int n) {
    std::vector<int> f(n);
    for (int i = 0; i < n; ++i) {
        f[i] = static_cast<int>(idx % n);
        idx /= n;
    }
    return f;
}

std::vector<PElem> to_pelem_table(const std::vector<int>& f, int p) {
    std::vector<PElem> t;
    for (int e : f) t.push_back(e == p ? PElem::infinity() : PElem::fin(e, p));
    return t;
}

}  // namespace

bool prte_1d_holds(const std::vector<PElem>& table, int p) {
    if (static_cast<int>(table.size()) != p + 1) {
        throw std::invalid_argument("prte_1d_holds: table must have p+1 slots");
    }
    std::vector<int> f;
    for (const PElem& e : table) f.push_back(e.inf ? p : e.v);
    return Ops1D(p).holds(f);
}

std::vector<Flow1D> enumerate_1d_flows(int p) {
    if (p != 2 && p != 3 && p != 5 && p != 7) {
        throw std::invalid_argument("enumerate_1d_flows: p must be 2, 3, 5 or 7");
    }
    const Ops1D ops(p);
    const int n = p + 1;
    unsigned long long total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<unsigned long long>(n);

    // chunked scan; each chunk collects its survivors, merged in order
    const unsigned budget = std::min<unsigned>(thread_budget(), 64);
    std::vector<std::vector<unsigned long long>> found(budget ? budget : 1);
    parallel_chunks(total, [&](std::size_t lo, std::size_t hi, unsigned chunk) {
        std::vector<unsigned long long>& out = found[chunk % found.size()];
        std::vector<int> f = decode_candidate(lo, n);
        std::vector<char> seen(n);
        for (unsigned long long idx = lo; idx < hi; ++idx) {
            // A flow is a bijection of the completed line or a constant
            // collapse map.  Mixed tables (say, the identity on residues
            // with 0 at infinity) satisfy the pointwise equation because
            // every pair that would pin the infinity slot has an undefined
            // intermediate, so the equation alone over-counts.
            bool constant = true, bijective = true;
            std::fill(seen.begin(), seen.end(), 0);
            for (int i = 0; i < n; ++i) {
                constant = constant && f[i] == f[0];
                if (seen[f[i]]) bijective = false;
                seen[f[i]] = 1;
            }
            if ((constant || bijective) && ops.holds(f)) out.push_back(idx);
            // odometer step
            for (int i = 0; i < n; ++i) {
                if (++f[i] < n) break;
                f[i] = 0;
            }
        }
    });

    // expected classification targets
    const auto moebius_table = [&](int a) {
        std::vector<int> t(n);
        for (int x = 0; x < p; ++x) {
            const int den = norm_mod(static_cast<long>(a) * x + 1, p);
            t[x] = (den == 0) ? p : norm_mod(static_cast<long>(x) * mod_inv(den, p), p);
        }
        t[p] = (a == 0) ? p : mod_inv(a, p);  // value at infinity is 1/a
        return t;
    };

    std::vector<Flow1D> flows;
    for (const auto& chunk : found) {
        for (unsigned long long idx : chunk) {
            const std::vector<int> f = decode_candidate(idx, n);
            Flow1D flow;
            flow.table = to_pelem_table(f, p);
            if (std::all_of(f.begin(), f.end(), [](int e) { return e == 0; })) {
                flow.kind = Flow1D::Kind::zero_map;
            } else if (std::all_of(f.begin(), f.end(),
                                   [&](int e) { return e == p; })) {
                flow.kind = Flow1D::Kind::infinity_map;
            } else {
                flow.kind = Flow1D::Kind::moebius;
                flow.a = -1;
                for (int a = 0; a < p; ++a) {
                    if (f == moebius_table(a)) {
                        flow.a = a;
                        break;
                    }
                }
                if (flow.a < 0) {
                    throw std::logic_error(
                        "enumerate_1d_flows: solution outside the classification");
                }
            }
            flows.push_back(flow);
        }
    }
    return flows;
}

// ---- the two-dimensional quadratic flow --------------------------------

std::optional<CompletedPoint> phi_p_direct(int p, const CompletedPoint& in) {
    if (in.a.inf || in.b.inf) return std::nullopt;
    const long x = in.a.v, y = in.b.v;
    const int den = norm_mod((x + 1) * (x + 1) + (y + 1) * (y + 1), p);
    if (den == 0) return std::nullopt;
    const int di = mod_inv(den, p);
    const int u = norm_mod((x * x + y * y + 2 * x) * di, p);
    const int v = norm_mod((x * x + y * y + 2 * y) * di, p);
    return CompletedPoint{PElem::fin(u, p), PElem::fin(v, p)};
}

namespace {

// Solver state for the grid completion.  Cells and values share the same
// id space: id = xi*(p+1) + yi with slot p meaning infinity.
struct GridState {
    int p, n, N;
    std::vector<int> T;               // cell -> value id, -1 unknown
    std::vector<char> used;           // value id already taken
    std::vector<std::vector<char>> dom;  // candidate flags for unknown cells
    int unknown;

    explicit GridState(int p_)
        : p(p_), n(p_ + 1), N(n * n), T(N, -1), used(N, 0),
          dom(N, std::vector<char>(N, 1)), unknown(N) {}

    int scale_coord(int u, int c) const {
        return c == p ? p : norm_mod(static_cast<long>(u) * c, p);
    }
    int scale_id(int u, int id) const {
        return scale_coord(u, id / n) * n + scale_coord(u, id % n);
    }

    bool assign(int cell, int val) {
        if (T[cell] >= 0) return T[cell] == val;
        if (used[val] || !dom[cell][val]) return false;
        T[cell] = val;
        used[val] = 1;
        dom[cell].assign(N, 0);
        --unknown;
        for (int c = 0; c < N; ++c) {
            if (T[c] < 0) dom[c][val] = 0;
        }
        return true;
    }
};

// One full propagation sweep; returns false on contradiction, sets
// `changed` when any domain shrank or a cell got a value.
bool sweep(GridState& st, bool& changed) {
    const int p = st.p, N = st.N;
    for (int s = 1; s < p; ++s) {
        for (int t = 1; t < p; ++t) {
            const int sum = (s + t) % p;
            if (sum == 0) continue;
            const int ts_inv = norm_mod(static_cast<long>(t) * mod_inv(s, p), p);
            const int k = norm_mod(static_cast<long>(sum) * mod_inv(t, p), p);
            const int k_inv = mod_inv(k, p);
            for (int x0 = 0; x0 < N; ++x0) {
                const int c1 = st.scale_id(s, x0);
                const int c3 = st.scale_id(sum, x0);
                if (st.T[c1] >= 0) {
                    const int arg2 = st.scale_id(ts_inv, st.T[c1]);
                    const int v2 = st.T[arg2], v3 = st.T[c3];
                    if (arg2 == c3) {
                        // value must be fixed by scaling with k
                        if (v3 >= 0) {
                            if (st.scale_id(k, v3) != v3) return false;
                        } else {
                            for (int v = 0; v < N; ++v) {
                                if (st.dom[c3][v] && st.scale_id(k, v) != v) {
                                    st.dom[c3][v] = 0;
                                    changed = true;
                                }
                            }
                        }
                    } else if (v2 >= 0 && v3 >= 0) {
                        if (st.scale_id(k, v2) != v3) return false;
                    } else if (v2 >= 0) {
                        if (!st.assign(c3, st.scale_id(k, v2))) return false;
                        changed = true;
                    } else if (v3 >= 0) {
                        if (!st.assign(arg2, st.scale_id(k_inv, v3)))
                            return false;
                        changed = true;
                    } else {
                        for (int v = 0; v < N; ++v) {
                            if (st.dom[c3][v] &&
                                !st.dom[arg2][st.scale_id(k_inv, v)]) {
                                st.dom[c3][v] = 0;
                                changed = true;
                            }
                            if (st.dom[arg2][v] &&
                                !st.dom[c3][st.scale_id(k, v)]) {
                                st.dom[arg2][v] = 0;
                                changed = true;
                            }
                        }
                    }
                } else {
                    // filter candidates of the first unknown lookup
                    if (st.T[c3] < 0) continue;
                    for (int v = 0; v < N; ++v) {
                        if (!st.dom[c1][v]) continue;
                        const int arg2 = st.scale_id(ts_inv, v);
                        const int v2 = (arg2 == c1) ? v : st.T[arg2];
                        if (v2 < 0) continue;
                        if (st.scale_id(k, v2) != st.T[c3]) {
                            st.dom[c1][v] = 0;
                            changed = true;
                        }
                    }
                }
            }
        }
    }

    // all-different bookkeeping
    for (int c = 0; c < N; ++c) {
        if (st.T[c] >= 0) continue;
        int count = 0, last = -1;
        for (int v = 0; v < N; ++v) {
            if (st.dom[c][v]) {
                ++count;
                last = v;
            }
        }
        if (count == 0) return false;
        if (count == 1) {
            if (!st.assign(c, last)) return false;
            changed = true;
        }
    }
    for (int v = 0; v < N; ++v) {
        if (st.used[v]) continue;
        int count = 0, cell = -1;
        for (int c = 0; c < N; ++c) {
            if (st.T[c] < 0 && st.dom[c][v]) {
                ++count;
                cell = c;
            }
        }
        if (count == 0) return false;  // value unreachable
        if (count == 1) {
            if (!st.assign(cell, v)) return false;
            changed = true;
        }
    }
    return true;
}

bool propagate(GridState& st) {
    bool changed = true;
    while (changed) {
        changed = false;
        if (!sweep(st, changed)) return false;
    }
    return true;
}

bool solve(GridState& st) {
    if (!propagate(st)) return false;
    if (st.unknown == 0) return true;
    // smallest-domain branch
    int best = -1, best_count = st.N + 1;
    for (int c = 0; c < st.N; ++c) {
        if (st.T[c] >= 0) continue;
        int count = 0;
        for (int v = 0; v < st.N; ++v) count += st.dom[c][v];
        if (count < best_count) {
            best_count = count;
            best = c;
        }
    }
    for (int v = 0; v < st.N; ++v) {
        if (!st.dom[best][v]) continue;
        GridState trial = st;
        if (trial.assign(best, v) && solve(trial)) {
            st = trial;
            return true;
        }
    }
    return false;
}

}  // namespace

CompletionResult phi_p_completion(int p) {
    if (!is_prime(p) || p % 4 != 1) {
        throw std::invalid_argument(
            "phi_p_completion: need a prime with -1 a square mod p");
    }
    GridState st(p);
    int direct = 0;
    for (int xi = 0; xi < p; ++xi) {
        for (int yi = 0; yi < p; ++yi) {
            const CompletedPoint in{PElem::fin(xi, p), PElem::fin(yi, p)};
            if (const auto out = phi_p_direct(p, in)) {
                const int val = out->a.v * st.n + out->b.v;
                if (!st.assign(xi * st.n + yi, val)) {
                    throw std::runtime_error(
                        "phi_p_completion: direct values collide");
                }
                ++direct;
            }
        }
    }

    if (!solve(st)) {
        throw std::runtime_error("phi_p_completion: no consistent completion");
    }

    // final audit: every instance of the iteration identity, plus
    // bijectivity of the completed map
    for (int s = 1; s < p; ++s) {
        for (int t = 1; t < p; ++t) {
            const int sum = (s + t) % p;
            if (sum == 0) continue;
            const int ts_inv = norm_mod(static_cast<long>(t) * mod_inv(s, p), p);
            const int k = norm_mod(static_cast<long>(sum) * mod_inv(t, p), p);
            for (int x0 = 0; x0 < st.N; ++x0) {
                const int v1 = st.T[st.scale_id(s, x0)];
                const int v2 = st.T[st.scale_id(ts_inv, v1)];
                const int v3 = st.T[st.scale_id(sum, x0)];
                if (st.scale_id(k, v2) != v3) {
                    throw std::runtime_error(
                        "phi_p_completion: completed grid fails the identity");
                }
            }
        }
    }
    if (std::count(st.used.begin(), st.used.end(), 1) != st.N) {
        throw std::runtime_error("phi_p_completion: completed map not onto");
    }

    CompletionResult res;
    res.p = p;
    res.direct_cells = direct;
    res.completed_cells = st.N - direct;
    for (int id = 0; id < st.N; ++id) {
        const int val = st.T[id];
        const int a = val / st.n, b = val % st.n;
        res.grid.push_back(CompletedPoint{
            a == p ? PElem::infinity() : PElem::fin(a, p),
            b == p ? PElem::infinity() : PElem::fin(b, p)});
    }
    return res;
}

std::optional<CompletedPoint> phi_p_eval(int p, const PElem& x, const PElem& y) {
    if (!is_prime(p) || p == 2) {
        throw std::invalid_argument("phi_p_eval: need an odd prime");
    }
    const CompletedPoint in{x, y};
    if (const auto direct = phi_p_direct(p, in)) return direct;
    if (p % 4 != 1) return std::nullopt;  // sphere point, not a pair

    static std::mutex mu;
    static std::map<int, CompletionResult> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, phi_p_completion(p)).first;
    const int n = p + 1;
    const int xi = x.inf ? p : x.v, yi = y.inf ? p : y.v;
    return it->second.grid[xi * n + yi];
}

// ---- bijection audits ---------------------------------------------------

namespace {

bool all_distinct(std::vector<long> ids, std::size_t expected) {
    std::sort(ids.begin(), ids.end());
    return ids.size() == expected &&
           std::adjacent_find(ids.begin(), ids.end()) == ids.end();
}

}  // namespace

std::vector<CardinalityEntry> cardinality_checks(int p) {
    if (!is_prime(p) || p == 2 || p > 13) {
        throw std::invalid_argument("cardinality_checks: odd prime <= 13");
    }
    std::vector<CardinalityEntry> out;

    {
        // (x-y)^2 + x • (x-y)^2 + y on the affine plane
        std::vector<long> ids;
        for (int x = 0; x < p; ++x) {
            for (int y = 0; y < p; ++y) {
                const int d2 = norm_mod(static_cast<long>(x - y) * (x - y), p);
                ids.push_back(static_cast<long>(norm_mod(d2 + x, p)) * p +
                              norm_mod(d2 + y, p));
            }
        }
        out.push_back({"quadratic-shift", "F_p^2",
                       static_cast<long>(p) * p,
                       all_distinct(ids, static_cast<std::size_t>(p) * p)});
    }
    {
        // x/(x+1) • y/(y+1) coordinate-wise on the doubled projective line
        const int n = p + 1;
        std::vector<int> m(n);
        for (int x = 0; x < p; ++x) {
            m[x] = (x == p - 1) ? p
                                : norm_mod(static_cast<long>(x) * mod_inv(x + 1, p), p);
        }
        m[p] = 1;  // value at infinity
        std::vector<long> ids;
        for (int x = 0; x <= p; ++x) {
            for (int y = 0; y <= p; ++y) {
                ids.push_back(static_cast<long>(m[x]) * n + m[y]);
            }
        }
        out.push_back({"moebius-pair", "(F_p + inf)^2",
                       static_cast<long>(n) * n,
                       all_distinct(ids, static_cast<std::size_t>(n) * n)});
    }
    {
        // x/(x+y+1) • y/(x+y+1): the collineation (x:y:z) -> (x:y:x+y+z)
        const auto canon = [&](int x, int y, int z) {
            int c[3] = {x, y, z};
            int lead = 2;
            while (lead >= 0 && c[lead] == 0) --lead;
            const int inv = mod_inv(c[lead], p);
            for (int& e : c) e = norm_mod(static_cast<long>(e) * inv, p);
            return (static_cast<long>(c[0]) * p + c[1]) * p + c[2];
        };
        std::vector<long> ids;
        std::set<long> reps;
        for (int x = 0; x < p; ++x) {
            for (int y = 0; y < p; ++y) {
                for (int z = 0; z < p; ++z) {
                    if (x == 0 && y == 0 && z == 0) continue;
                    if (!reps.insert(canon(x, y, z)).second) continue;
                    ids.push_back(canon(x, y, norm_mod(x + y + z, p)));
                }
            }
        }
        const long card = static_cast<long>(p) * p + p + 1;
        out.push_back({"plane-collineation", "P^2(F_p)", card,
                       all_distinct(ids, static_cast<std::size_t>(card))});
    }
    if (p % 4 == 3) {
        // quadratic flow on the one-point sphere: the denominator vanishes
        // only at (-1,-1), sent to the extra point; the extra point maps to
        // (1,1)
        std::vector<long> ids;
        const long inf_id = static_cast<long>(p) * p;
        for (int x = 0; x < p; ++x) {
            for (int y = 0; y < p; ++y) {
                const CompletedPoint in{PElem::fin(x, p), PElem::fin(y, p)};
                const auto outp = phi_p_direct(p, in);
                if (!outp) {
                    ids.push_back(inf_id);
                    continue;
                }
                ids.push_back(static_cast<long>(outp->a.v) * p + outp->b.v);
            }
        }
        ids.push_back(static_cast<long>(1) * p + 1);  // image of the extra point
        out.push_back({"phi_p", "F_p^2 + inf",
                       static_cast<long>(p) * p + 1,
                       all_distinct(ids, static_cast<std::size_t>(p) * p + 1)});
    } else {
        // torus case: the completed grid is audited internally; record it
        const CompletionResult res = phi_p_completion(p);
        const int n = p + 1;
        std::vector<long> ids;
        for (const CompletedPoint& pt : res.grid) {
            ids.push_back(static_cast<long>(pt.a.inf ? p : pt.a.v) * n +
                          (pt.b.inf ? p : pt.b.v));
        }
        out.push_back({"phi_p", "(F_p + inf)^2",
                       static_cast<long>(n) * n,
                       all_distinct(ids, static_cast<std::size_t>(n) * n)});
    }
    return out;
}

long cubic_flow_locus_count(int p) {
    if (!is_prime(p)) throw std::invalid_argument("cubic_flow_locus_count: prime");
    long count = 0;
    for (int x = 0; x < p; ++x) {
        for (int y = 0; y < p; ++y) {
            const long v = static_cast<long>(x) * x * y +
                           static_cast<long>(x) * y * y +
                           static_cast<long>(x) * x +
                           static_cast<long>(y) * y;
            if (norm_mod(v, p) == 0) ++count;
        }
    }
    return count;
}

}  // namespace proflow

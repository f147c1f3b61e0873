/* Graded power-series engine for projective flows.
 *
 * A flow with 2-homogenic polynomial vector field (w, r) expands as
 *   u(xz, yz)/z = x + sum_{i>=2} z^{i-1} L_i(x, y),
 * where the homogeneous layers L_i (degree i) obey
 *   L_{i+1} = (1/i) [ (L_i)_x * w + (L_i)_y * r ],   L_1 = x,
 * and symmetrically with L_1 = y for the second coordinate.  Everything
 * here is exact rational arithmetic; no floating point.
 */
#pragma once

#include "proflow/multipoly.hpp"
#include "proflow/rationalfn.hpp"

#include <string>
#include <vector>

namespace proflow {

struct VectorField2 {
    RationalFn w;  // first component
    RationalFn r;  // second component
};

class HomogSeries {
public:
    explicit HomogSeries(std::vector<MultiPoly> layers) : layers_(std::move(layers)) {}
    int depth() const { return static_cast<int>(layers_.size()); }
    // 1-based: layer(1) = x or y.
    const MultiPoly& layer(int i) const { return layers_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<MultiPoly>& layers() const { return layers_; }

private:
    std::vector<MultiPoly> layers_;
};

// Variable universe used by the series engine.
std::vector<std::string> series_vars();  // {"x", "y"}

// The cubic-orbit quadratic field w = x^2-2xy, r = y^2-2xy.
MultiPoly specc_w();
MultiPoly specc_r();

// Layers 1..n for a polynomial quadratic field; first_coord picks L_1 = x or y.
HomogSeries flow_series(const MultiPoly& w, const MultiPoly& r, bool first_coord, int n);
HomogSeries flow_series(const VectorField2& vf, bool first_coord, int n);

// w_n(t) = L_n(t, 1) for the specc field, as a univariate polynomial in t.
MultiPoly wn_polynomial(int n);

int jmath(int n);                 // 2*floor((n+2)/6)
bool lowest_power_check(int n);   // lowest t-power in w_n equals jmath(n)+1
bool wn_symmetry_check(int n);    // both 6-fold symmetry identities, exactly

// f_n(y) = sum_k [x^n y^k](L_{n+k}) y^k, with two-depth stabilization check.
MultiPoly fn_polynomial(int n, int depth);

// First n coefficients of the skew-diagonal series, L_i evaluated at (1,-1).
std::vector<Rational> diagonal_coeffs(int n);

// f(z) f(-z) (f(z) + f(-z)) = 2 + O(z^{n-2}) for the skew-diagonal f.
bool series_cube_identity(int n);
// Same check on caller-supplied coefficients of f (f = sum c_i z^{i-1}).
bool cube_identity_on(const std::vector<Rational>& coeffs, int n);

// Truncated series u = sum L_i satisfies u_x(w-x) + u_y(r-y) + u = 0
// through total degree n-1, exactly.
bool pde_consistency(const MultiPoly& w, const MultiPoly& r, int n);

// W(u(xz,yz)/z, v(xz,yz)/z) - W(x,y) vanishes through z^{n-1}, exactly.
bool orbit_invariance_series(const MultiPoly& w, const MultiPoly& r,
                             const MultiPoly& W, int n);

// Layerwise check of L_i(x,y) + L_i(-x, y-x) = 0 for the specc series.
bool period_symmetry_check(int n);

// Rational binomial coefficient C(a, k) for rational a, integer k >= 0.
Rational binomial(const Rational& a, int k);

}  // namespace proflow

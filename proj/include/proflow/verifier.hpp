/* Numeric verification of the defining equations of a projective flow:
 *
 *   functional equation   (1-z) phi(x,y) = phi(phi(xz,yz)(1-z)/z)
 *   boundary condition    phi(xz,yz)/z -> (x,y) as z -> 0
 *   vector field          d/dz [phi(xz,yz)/z] at z = 0
 *   PDE                   u_x(w - x) + u_y(r - y) + u = 0
 *   orbit invariance      W(phi(xz,yz)/z) = W(x,y)
 *   iteration             n phi^(n-fold)(x,y) = phi(nx, ny)
 *
 * plus a catalogue binding every closed-form flow to its declared vector
 * field, orbit invariant, and singular-set standoff predicate, and a
 * seeded driver producing pass/fail reports over random admissible points.
 */
#pragma once

#include "proflow/flows.hpp"
#include "proflow/series.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace proflow {

struct FlowEvaluator {
    std::function<FlowValue(CNum, CNum)> eval;
    std::string name;
};

FlowEvaluator make_flow_evaluator(FlowKind kind);

// Catalogue entry: evaluator plus everything the generic checks need.
struct CatalogueEntry {
    FlowKind kind;
    VectorField2 field;                    // declared symbolic vector field
    std::optional<RationalFn> orbit;       // W constant along orbits, if algebraic
    bool in_iteration_checks;
    // Sampling standoff: true if (x,y) is too close to the singular set.
    std::function<bool(std::complex<double>, std::complex<double>)> near_singular;
};

const std::vector<CatalogueEntry>& flow_catalogue();
const CatalogueEntry& catalogue_entry(FlowKind kind);

// All residuals are max-norms over coordinates; undefined intermediates
// throw std::domain_error naming the failing evaluation.
double prte_residual(const FlowEvaluator& flow, CNum x, CNum y, CNum z);
double boundary_residual(const FlowEvaluator& flow, CNum x, CNum y);
std::pair<CNum, CNum> vector_field_numeric(const FlowEvaluator& flow, CNum x, CNum y);
double pde_residual(const std::function<CNum(CNum, CNum)>& u, CNum x, CNum y,
                    const VectorField2& vf, double h = 1e-5);
double orbit_invariance(const FlowEvaluator& flow, const RationalFn& W, CNum x,
                        CNum y, CNum z);
double iteration_residual(const FlowEvaluator& flow, int n, CNum x, CNum y);

struct CheckReport {
    std::string flow;
    std::string check;
    int points = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Run every applicable check for one flow / for the whole catalogue over
// `points` random admissible samples drawn from the seeded generator.
std::vector<CheckReport> verify_flow(FlowKind kind, std::uint64_t seed, int points);
std::vector<CheckReport> verify_all(std::uint64_t seed, int points);

}  // namespace proflow

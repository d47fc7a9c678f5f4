#pragma once

#include "tba/diffop.hpp"

namespace tba {

// Metric read off a second-order operator. The covariant matrix is the
// exact inverse of the contravariant one; it is left empty when the
// determinant vanishes identically.
struct MetricTensor {
    Chart chart;
    std::vector<std::vector<RatFunc>> contravariant;
    std::vector<std::vector<RatFunc>> covariant;
    RatFunc det;
    bool singular = false;

    std::size_t dim() const { return chart.size(); }
};

// Diagonal entries are the coefficients of d^2_mu; off-diagonal entries are
// half the mixed coefficients.
MetricTensor metric_from(const DiffOp& op);

// Compares the computed determinant against a printed factorization. A
// mismatch is reported with status erratum (the computed determinant is the
// ground truth), never as a build failure.
CheckReport det_factor_check(const MetricTensor& g, const RatFunc& printed,
                             const std::string& id);

// Same contract for the trace of the contravariant metric.
CheckReport trace_factor_check(const MetricTensor& g, const RatFunc& printed,
                               const std::string& id);

// Christoffel symbols of the second kind, indexed [lambda][mu][nu].
std::vector<std::vector<std::vector<RatFunc>>> christoffel(const MetricTensor& g);

// Ricci tensor R_{mu nu} and scalar g^{mu nu} R_{mu nu}.
std::vector<std::vector<RatFunc>> ricci_tensor(const MetricTensor& g);
RatFunc ricci_scalar(const MetricTensor& g);

// Full Riemann tensor; passes iff it vanishes identically.
CheckReport flatness_check(const MetricTensor& g, const std::string& id);

// Cotton tensor components C_{mu nu lambda} evaluated exactly at a point;
// defined for 3-variable metrics only.
struct CottonResult {
    std::vector<Rational> components;  // flattened [mu][nu][lambda]
    Rational max_abs;
};
CottonResult cotton_at(const MetricTensor& g, const std::vector<Rational>& point);

// Divergence-form Laplace-Beltrami operator of the metric,
//   g^{mu nu} d_mu d_nu + sum_nu [sum_mu d_mu g^{mu nu}
//                                 - (1/2) sum_mu g^{mu nu} (d_mu D)/D] d_nu,
// which only ever uses the logarithmic derivative of the determinant.
DiffOp laplace_beltrami(const MetricTensor& g);

// Determinant of a square RatFunc matrix by cofactor expansion.
RatFunc matrix_det(const std::vector<std::vector<RatFunc>>& m, const Chart& chart);

}  // namespace tba

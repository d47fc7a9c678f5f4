#pragma once

#include <array>

#include "tba/diffop.hpp"
#include "tba/geometry.hpp"

namespace tba {

// Parameter bundle shared by every catalog constructor. Fields a given
// model does not use are ignored; supplied values are still validated.
struct ModelParams {
    Rational d = 3;
    Rational gamma = 0;
    Rational gammaTilde = 0;
    Rational omega = 1;
    Rational A = 0;
    long N = 0;
    Rational k = 1;
    long p = 0;
    std::array<Rational, 3> masses{Rational(1), Rational(1), Rational(1)};
    Rational alpha = 0;
    Rational beta = 0;

    void validate() const;  // throws std::invalid_argument
};

// Named coordinate charts.
const Chart& chart_rho();     // squared relative distances
const Chart& chart_r();       // relative distances
const Chart& chart_tau();     // elementary symmetric polynomials of rho
const Chart& chart_pst();     // P = tau1, S = squared area, T = tau3
const Chart& chart_pt();      // (P, T), the planar degeneration
const Chart& chart_ps();      // (P, S)
const Chart& chart_p();       // (P)
const Chart& chart_tau12();   // (tau1, tau2)
const Chart& chart_tau1();    // (tau1)
const Chart& chart_rd1();     // (r12, r23), one-dimensional bodies
const Chart& chart_xi();      // S2-invariant pair (xi1, xi2)
const Chart& chart_si();      // (si2, si3)
const Chart& chart_la();      // (la1, la2)
const Chart& chart_q();       // orthonormal planar pair (q1, q2)
const Chart& chart_tu();      // dihedral invariants (t, u)
const Chart& chart_w();       // symmetry-adapted (w1, w2, w3)
const Chart& chart_w12();     // (w1, w2)
const Chart& chart_rhoS();    // (rho12, rho13, S) with rho23 as passive symbol
const Chart& chart_rtheta();  // r-chart extended by the area symbol and angle
const Chart& chart_W();       // mass-weighted invariants (W1, W3, W4)

// Catalog metadata, exported to catalog.json.
struct CatalogEntry {
    std::string id;
    std::string kind;   // operator | potential | gauge | energy | chart | metric | classical
    std::string chart;
    std::string params;
    std::string description;
};
const std::vector<CatalogEntry>& catalog();
std::string catalog_json();
bool catalog_has(const std::string& id);

// The operator exactly as published for `id` on its declared chart.
DiffOp operator_of(const std::string& id, const ModelParams& params);

// The same operator obtained from the governing identity (gauge rotation or
// chart pushforward). Identical to operator_of except for ids with a known
// erratum in the published form.
DiffOp derived_operator_of(const std::string& id, const ModelParams& params);

RatFunc potential_of(const std::string& id, const ModelParams& params);
GaugeFactor gauge_of(const std::string& id, const ModelParams& params);
Rational ground_energy_of(const std::string& id, const ModelParams& params);
MetricTensor metric_of(const std::string& id, const ModelParams& params);
PhaseFunction classical_of(const std::string& id, const ModelParams& params);

// Polynomial chart maps: images of the target variables as polynomials over
// the source chart. Numeric-only charts (w_of_rho, W3_chart) throw here.
std::vector<MultiPoly> chart_map_of(const std::string& chart_id, const ModelParams& params);
NumericChart numeric_chart_of(const std::string& chart_id, const ModelParams& params);

}  // namespace tba

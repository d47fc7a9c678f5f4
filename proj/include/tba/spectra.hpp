#pragma once

#include <complex>
#include <string>
#include <vector>

#include "diffop.hpp"
#include "models.hpp"
#include "report.hpp"

namespace tba {

// Graded space of polynomials: exponent vectors e with sum(f_i e_i) <= N,
// ordered by weight then lexicographically.
struct PolySpace {
    Chart chart;
    std::vector<long> charvec;
    long N = 0;
    std::vector<Exponents> basis;

    std::size_t dim() const { return basis.size(); }
    long weight(const Exponents& e) const;
    MultiPoly monomial(std::size_t j) const;
};

PolySpace basis(const Chart& chart, const std::vector<long>& charvec, long N);

// Pass iff op maps every basis monomial to a polynomial inside the space;
// failures carry the offending monomial and its out-of-space remainder.
CheckReport invariance_check(const DiffOp& op, const PolySpace& space);

struct OperatorMatrix {
    PolySpace space;
    std::vector<std::vector<Rational>> entries;  // entries[i][j]: basis_i coeff of op(basis_j)
    bool gradedTriangular = false;
};

// Exact matrix of op on the space; throws if the invariance check fails.
OperatorMatrix matrix_of(const DiffOp& op, const PolySpace& space);

// Reported physical eigenvalue = sign * (matrix eigenvalue) + offset. The
// catalog stores the gauge-rotated algebraic operators as printed, so each
// model family fixes its own sign and ground-energy offset.
struct SpectralShift {
    int sign = 1;
    Rational offset = Rational(0);
};

SpectralShift model_shift(const std::string& model_id, const ModelParams& params);

// Diagonal read-off for graded-triangular matrices, with the shift applied;
// throws on non-triangular input.
std::vector<Rational> eigen_exact(const OperatorMatrix& mat, const SpectralShift& shift = {});

struct EigenPair {
    std::complex<double> value;  // shift already applied
    double residual;             // |Av - lambda v| / |v| of the unshifted pair
};

// Dense nonsymmetric eigensolver (balanced Hessenberg reduction + shifted
// QR, capped at 30 n^2 sweeps) with one inverse-iteration refinement step.
std::vector<EigenPair> eigen_numeric(const OperatorMatrix& mat, const SpectralShift& shift = {});

// Printed closed-form spectra, enumerated over the model's quantum numbers
// up to level N; throws for models without one.
std::vector<Rational> closed_form_spectrum(const std::string& model_id, const ModelParams& params,
                                           long N);

// Pass iff op maps the sub-space spanned by monomials in the leading
// chart variables (weighted by sub_charvec) into itself.
CheckReport reducibility_check(const DiffOp& op, const std::vector<long>& sub_charvec, long N);

struct SpectrumRow {
    long level = 0;          // index in the sorted spectrum
    std::string eigenvalue;  // exact rational or decimal text
    long multiplicity = 1;
    double residual = 0.0;
};

std::vector<SpectrumRow> spectrum_rows(const std::vector<Rational>& values);
std::vector<SpectrumRow> spectrum_rows(const std::vector<EigenPair>& pairs, double group_tol);

std::string spectrum_csv(const std::vector<SpectrumRow>& rows);
nlohmann::json spectrum_json(const std::string& model_id, const std::string& source,
                             const SpectralShift& shift, const std::vector<SpectrumRow>& rows);

}  // namespace tba

#pragma once

#include <atomic>
#include <functional>
#include <map>

#include "tba/ratfunc.hpp"
#include "tba/report.hpp"

namespace tba {

// Linear differential operator: sum of coeff(x) * d^alpha with the
// derivative multi-index alpha keyed per chart variable. Canonical form
// keeps coefficients left of the derivatives and stores no zero terms.
class DiffOp {
  public:
    using TermMap = std::map<Exponents, RatFunc, GrlexLess>;

    DiffOp() = default;
    explicit DiffOp(Chart chart) : chart_(std::move(chart)) {}

    static DiffOp zero(const Chart& chart) { return DiffOp(chart); }
    static DiffOp identity(const Chart& chart);
    static DiffOp scalar(RatFunc f);  // multiplication operator
    static DiffOp partial_op(const Chart& chart, const std::string& var);

    const Chart& chart() const { return chart_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    uint32_t order() const;  // max total derivative order

    void add_term(const Exponents& alpha, const RatFunc& coeff);
    const RatFunc* coeff(const Exponents& alpha) const;  // null when absent

    DiffOp operator-() const;
    DiffOp operator+(const DiffOp& rhs) const;
    DiffOp operator-(const DiffOp& rhs) const;
    DiffOp operator*(const Rational& c) const;
    DiffOp left_mul(const RatFunc& f) const;  // f * op
    bool operator==(const DiffOp& rhs) const;
    bool operator!=(const DiffOp& rhs) const { return !(*this == rhs); }

    std::string str() const;

  private:
    Chart chart_;
    TermMap terms_;
};

DiffOp operator*(const Rational& c, const DiffOp& op);

RatFunc derivative(const RatFunc& f, const Exponents& alpha);

RatFunc apply(const DiffOp& op, const RatFunc& f);
DiffOp compose(const DiffOp& a, const DiffOp& b);
DiffOp commutator(const DiffOp& a, const DiffOp& b);
DiffOp op_pow(const DiffOp& a, uint32_t n);

// extract_scalar(op) = apply(op, 1): the zero multi-index coefficient.
RatFunc extract_scalar(const DiffOp& op);

// Gamma = prod_i f_i^{a_i} * exp(g). Only the logarithmic gradient enters
// conjugation, so rational exponents are fine.
struct GaugeFactor {
    struct Base {
        MultiPoly poly;
        Rational exponent;
    };
    Chart chart;
    std::vector<Base> bases;
    MultiPoly exp_arg;

    static GaugeFactor trivial(const Chart& chart);
    // L_mu = sum_i a_i (d_mu f_i)/f_i + d_mu g
    RatFunc log_gradient(std::size_t var_idx) const;
    GaugeFactor inverse() const;
};

// Gamma^{-1} op Gamma via the substitution d_mu -> d_mu + L_mu (the
// substituted first-order operators commute because L is a gradient).
DiffOp gauge_conjugate(const DiffOp& op, const GaugeFactor& gamma);

// Classical observable on phase space: positions then conjugate momenta.
struct PhaseFunction {
    Chart positions;
    Chart momenta;
    MultiPoly value;  // over positions + momenta, in that order

    Chart doubled_chart() const;
};

PhaseFunction poisson_bracket(const PhaseFunction& h, const PhaseFunction& k);

// Exact pushforward check: for every u-monomial F up to total degree
// `degree`, apply(opX, F(map)) must equal apply(opU, F) composed with map.
CheckReport chart_check_exact(const DiffOp& op_x, const std::vector<MultiPoly>& map,
                              const Chart& u_chart, const DiffOp& op_u, uint32_t degree,
                              const std::atomic<bool>* cancel = nullptr);

// Numeric chart: u_j as callables on the x-domain plus a region predicate.
struct NumericChart {
    std::string name;
    Chart u_chart;
    // Extended precision keeps finite-difference cancellation noise below
    // the tolerances used by the numeric chart checks.
    std::vector<std::function<long double(const std::vector<long double>&)>> map;
    std::function<bool(const std::vector<double>&)> in_region;
};

CheckReport chart_check_numeric(const DiffOp& op_x, const NumericChart& chart,
                                const DiffOp& op_u,
                                const std::vector<std::vector<double>>& points,
                                double tol,
                                const std::atomic<bool>* cancel = nullptr);

// Applies op to a black-box function at a point with 4th-order central
// finite differences (step 1e-4 per variable).
double apply_numeric(const DiffOp& op,
                     const std::function<long double(const std::vector<long double>&)>& f,
                     const std::vector<double>& point);

std::vector<Exponents> monomials_up_to(std::size_t nvars, uint32_t degree);

}  // namespace tba

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tba/rational.hpp"
#include "json.hpp"

namespace tba {

using Chart = std::vector<std::string>;
using Exponents = std::vector<uint32_t>;

// Graded lexicographic order over the chart's declared variable order.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

uint32_t total_degree(const Exponents& e);

// Sparse multivariate polynomial over Rational coefficients.
// Invariants: no stored zero coefficients; every exponent vector has
// length equal to the chart size.
class MultiPoly {
  public:
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(Chart chart) : chart_(std::move(chart)) {}

    static MultiPoly zero(const Chart& chart) { return MultiPoly(chart); }
    static MultiPoly constant(const Chart& chart, const Rational& c);
    static MultiPoly variable(const Chart& chart, const std::string& name);
    static MultiPoly monomial(const Chart& chart, Exponents e, const Rational& c);

    const Chart& chart() const { return chart_; }
    const TermMap& terms() const { return terms_; }
    std::size_t nvars() const { return chart_.size(); }
    std::size_t var_index(const std::string& name) const;

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()
    uint32_t degree() const;          // total degree; 0 for the zero polynomial

    void add_term(const Exponents& e, const Rational& c);

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& rhs) const;
    MultiPoly operator-(const MultiPoly& rhs) const;
    MultiPoly operator*(const MultiPoly& rhs) const;
    MultiPoly operator*(const Rational& c) const;
    MultiPoly pow(uint32_t n) const;
    bool operator==(const MultiPoly& rhs) const;
    bool operator!=(const MultiPoly& rhs) const { return !(*this == rhs); }

    MultiPoly partial(const std::string& var) const;
    MultiPoly partial(std::size_t var_idx) const;

    Rational eval(const std::vector<Rational>& point) const;
    double eval_double(const std::vector<double>& point) const;

    // Substitutes images[i] (all sharing one chart) for variable i.
    MultiPoly substitute(const std::vector<MultiPoly>& images) const;

    // Leading term under grlex; polynomial must be nonzero.
    const std::pair<const Exponents, Rational>& leading_term() const;
    Rational leading_coeff() const;

    // Multiplies by the least positive rational making all coefficients
    // coprime integers; returns the primitive polynomial (sign of the
    // grlex-leading coefficient preserved).
    MultiPoly primitive_part(Rational* content = nullptr) const;

    // Exact division; throws if rhs does not divide this exactly.
    MultiPoly divide_exact(const MultiPoly& rhs) const;

    std::string str() const;
    nlohmann::json to_json() const;
    static MultiPoly from_json(const nlohmann::json& j);

  private:
    void check_chart(const MultiPoly& other) const;

    Chart chart_;
    TermMap terms_;
};

MultiPoly operator*(const Rational& c, const MultiPoly& p);

// Multivariate gcd by content-and-primitive-part recursion with a
// subresultant PRS for the univariate steps. Result is primitive with
// positive leading coefficient; gcd(0, p) = primitive part of p.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// Parses a chart from variable names.
Chart chart_of(std::initializer_list<const char*> names);

}  // namespace tba

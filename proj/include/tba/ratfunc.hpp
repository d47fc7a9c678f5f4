#pragma once

#include "tba/multipoly.hpp"

namespace tba {

// Rational function num/den in canonical form: gcd(num, den) = 1, den has
// integer coprime coefficients and positive grlex-leading coefficient.
class RatFunc {
  public:
    RatFunc() = default;
    explicit RatFunc(MultiPoly num);  // denominator 1
    RatFunc(MultiPoly num, MultiPoly den);  // normalizes; den must be nonzero

    static RatFunc zero(const Chart& chart);
    static RatFunc constant(const Chart& chart, const Rational& c);
    static RatFunc variable(const Chart& chart, const std::string& name);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    const Chart& chart() const { return num_.chart(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const;

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& rhs) const;
    RatFunc operator-(const RatFunc& rhs) const;
    RatFunc operator*(const RatFunc& rhs) const;
    RatFunc operator/(const RatFunc& rhs) const;
    RatFunc operator*(const Rational& c) const;
    RatFunc pow(int n) const;
    bool operator==(const RatFunc& rhs) const;
    bool operator!=(const RatFunc& rhs) const { return !(*this == rhs); }

    RatFunc partial(const std::string& var) const;
    RatFunc partial(std::size_t var_idx) const;

    // Throws std::domain_error when the denominator vanishes at the point.
    Rational eval(const std::vector<Rational>& point) const;
    double eval_double(const std::vector<double>& point) const;

    // Substitutes polynomial images for the chart variables.
    RatFunc substitute(const std::vector<MultiPoly>& images) const;

    std::string str() const;
    nlohmann::json to_json() const;
    static RatFunc from_json(const nlohmann::json& j);

  private:
    void normalize();

    MultiPoly num_;
    MultiPoly den_;
};

RatFunc operator*(const Rational& c, const RatFunc& f);

}  // namespace tba

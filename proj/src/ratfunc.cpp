#include "tba/ratfunc.hpp"

#include <stdexcept>

namespace tba {

RatFunc::RatFunc(MultiPoly num)
    : num_(std::move(num)), den_(MultiPoly::constant(num_.chart(), Rational(1))) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.chart() != den_.chart())
        throw std::invalid_argument("rational function num/den chart mismatch");
    if (den_.is_zero())
        throw std::invalid_argument("rational function with zero denominator");
    normalize();
}

RatFunc RatFunc::zero(const Chart& chart) { return RatFunc(MultiPoly::zero(chart)); }

RatFunc RatFunc::constant(const Chart& chart, const Rational& c) {
    return RatFunc(MultiPoly::constant(chart, c));
}

RatFunc RatFunc::variable(const Chart& chart, const std::string& name) {
    return RatFunc(MultiPoly::variable(chart, name));
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = MultiPoly::constant(num_.chart(), Rational(1));
        return;
    }
    MultiPoly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = num_.divide_exact(g);
        den_ = den_.divide_exact(g);
    }
    Rational cont;
    MultiPoly dprim = den_.primitive_part(&cont);
    den_ = dprim;
    num_ = num_ * (Rational(1) / cont);
}

Rational RatFunc::constant_value() const {
    if (!is_constant()) throw std::logic_error("constant_value on nonconstant function");
    return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& rhs) const {
    // cancel the shared denominator factor before normalizing, which keeps
    // the gcd in normalize() on small operands
    MultiPoly g = poly_gcd(den_, rhs.den_);
    MultiPoly da = den_.divide_exact(g);
    MultiPoly db = rhs.den_.divide_exact(g);
    return RatFunc(num_ * db + rhs.num_ * da, da * rhs.den_);
}

RatFunc RatFunc::operator-(const RatFunc& rhs) const {
    MultiPoly g = poly_gcd(den_, rhs.den_);
    MultiPoly da = den_.divide_exact(g);
    MultiPoly db = rhs.den_.divide_exact(g);
    return RatFunc(num_ * db - rhs.num_ * da, da * rhs.den_);
}

RatFunc RatFunc::operator*(const RatFunc& rhs) const {
    // cross-cancel so the final gcd is cheap
    MultiPoly g1 = poly_gcd(num_, rhs.den_);
    MultiPoly g2 = poly_gcd(rhs.num_, den_);
    return RatFunc(num_.divide_exact(g1) * rhs.num_.divide_exact(g2),
                   den_.divide_exact(g2) * rhs.den_.divide_exact(g1));
}

RatFunc RatFunc::operator/(const RatFunc& rhs) const {
    if (rhs.is_zero()) throw std::invalid_argument("division by zero rational function");
    MultiPoly g1 = poly_gcd(num_, rhs.num_);
    MultiPoly g2 = poly_gcd(den_, rhs.den_);
    return RatFunc(num_.divide_exact(g1) * rhs.den_.divide_exact(g2),
                   den_.divide_exact(g2) * rhs.num_.divide_exact(g1));
}

RatFunc RatFunc::operator*(const Rational& c) const {
    RatFunc r;
    r.num_ = num_ * c;
    r.den_ = r.num_.is_zero() ? MultiPoly::constant(num_.chart(), Rational(1)) : den_;
    return r;
}

RatFunc operator*(const Rational& c, const RatFunc& f) { return f * c; }

RatFunc RatFunc::pow(int n) const {
    if (n == 0) return constant(chart(), Rational(1));
    if (n < 0) {
        if (is_zero()) throw std::invalid_argument("negative power of zero function");
        RatFunc inv;
        inv.num_ = den_;
        inv.den_ = num_;
        inv.normalize();
        return inv.pow(-n);
    }
    RatFunc r;
    r.num_ = num_.pow(static_cast<uint32_t>(n));
    r.den_ = den_.pow(static_cast<uint32_t>(n));
    r.normalize();
    return r;
}

bool RatFunc::operator==(const RatFunc& rhs) const {
    return num_ == rhs.num_ && den_ == rhs.den_;
}

RatFunc RatFunc::partial(const std::string& var) const {
    return partial(num_.var_index(var));
}

RatFunc RatFunc::partial(std::size_t k) const {
    // (n/d)' = (n'd - nd') / d^2
    return RatFunc(num_.partial(k) * den_ - num_ * den_.partial(k), den_ * den_);
}

Rational RatFunc::eval(const std::vector<Rational>& point) const {
    Rational d = den_.eval(point);
    if (d == 0) throw std::domain_error("rational function denominator vanishes at point");
    return num_.eval(point) / d;
}

double RatFunc::eval_double(const std::vector<double>& point) const {
    double d = den_.eval_double(point);
    if (d == 0.0) throw std::domain_error("rational function denominator vanishes at point");
    return num_.eval_double(point) / d;
}

RatFunc RatFunc::substitute(const std::vector<MultiPoly>& images) const {
    MultiPoly n = num_.substitute(images);
    MultiPoly d = den_.substitute(images);
    if (d.is_zero())
        throw std::domain_error("substitution sends denominator to zero");
    return RatFunc(std::move(n), std::move(d));
}

std::string RatFunc::str() const {
    if (is_polynomial() && den_.constant_value() == 1) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

nlohmann::json RatFunc::to_json() const {
    nlohmann::json j;
    j["num"] = num_.to_json();
    j["den"] = den_.to_json();
    return j;
}

RatFunc RatFunc::from_json(const nlohmann::json& j) {
    return RatFunc(MultiPoly::from_json(j.at("num")), MultiPoly::from_json(j.at("den")));
}

}  // namespace tba

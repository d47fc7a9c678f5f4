#include "tba/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tba {

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    uint32_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

uint32_t total_degree(const Exponents& e) {
    uint32_t d = 0;
    for (uint32_t x : e) d += x;
    return d;
}

Chart chart_of(std::initializer_list<const char*> names) {
    Chart c;
    for (const char* n : names) c.emplace_back(n);
    return c;
}

MultiPoly MultiPoly::constant(const Chart& chart, const Rational& c) {
    MultiPoly p(chart);
    if (c != 0) p.terms_[Exponents(chart.size(), 0)] = c;
    return p;
}

MultiPoly MultiPoly::variable(const Chart& chart, const std::string& name) {
    MultiPoly p(chart);
    Exponents e(chart.size(), 0);
    e[p.var_index(name)] = 1;
    p.terms_[e] = Rational(1);
    return p;
}

MultiPoly MultiPoly::monomial(const Chart& chart, Exponents e, const Rational& c) {
    if (e.size() != chart.size())
        throw std::invalid_argument("monomial exponent length does not match chart");
    MultiPoly p(chart);
    if (c != 0) p.terms_[std::move(e)] = c;
    return p;
}

std::size_t MultiPoly::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < chart_.size(); ++i)
        if (chart_[i] == name) return i;
    throw std::invalid_argument("variable '" + name + "' not in chart");
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("constant_value on nonconstant polynomial");
    return terms_.begin()->second;
}

uint32_t MultiPoly::degree() const {
    if (terms_.empty()) return 0;
    return total_degree(terms_.rbegin()->first);
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (e.size() != chart_.size())
        throw std::invalid_argument("exponent length does not match chart");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::check_chart(const MultiPoly& other) const {
    if (chart_ != other.chart_)
        throw std::invalid_argument("chart mismatch between polynomials");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(chart_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& rhs) const {
    check_chart(rhs);
    MultiPoly r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& rhs) const {
    check_chart(rhs);
    MultiPoly r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& rhs) const {
    check_chart(rhs);
    MultiPoly r(chart_);
    Exponents e(chart_.size());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
    MultiPoly r(chart_);
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
}

MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }

MultiPoly MultiPoly::pow(uint32_t n) const {
    MultiPoly r = constant(chart_, Rational(1));
    MultiPoly base = *this;
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

bool MultiPoly::operator==(const MultiPoly& rhs) const {
    return chart_ == rhs.chart_ && terms_ == rhs.terms_;
}

MultiPoly MultiPoly::partial(const std::string& var) const {
    return partial(var_index(var));
}

MultiPoly MultiPoly::partial(std::size_t k) const {
    if (k >= chart_.size()) throw std::invalid_argument("partial: bad variable index");
    MultiPoly r(chart_);
    for (const auto& [e, c] : terms_) {
        if (e[k] == 0) continue;
        Exponents de = e;
        de[k] -= 1;
        r.add_term(de, c * Rational(static_cast<long>(e[k])));
    }
    return r;
}

Rational MultiPoly::eval(const std::vector<Rational>& point) const {
    if (point.size() != chart_.size())
        throw std::invalid_argument("eval point dimension does not match chart");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (uint32_t k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

double MultiPoly::eval_double(const std::vector<double>& point) const {
    if (point.size() != chart_.size())
        throw std::invalid_argument("eval point dimension does not match chart");
    double acc = 0;
    for (const auto& [e, c] : terms_) {
        double t = to_double(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (uint32_t k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
    if (images.size() != chart_.size())
        throw std::invalid_argument("substitute: image count does not match chart");
    for (const auto& im : images)
        if (im.chart() != images[0].chart())
            throw std::invalid_argument("substitute: images on different charts");
    const Chart& target = images.empty() ? chart_ : images[0].chart();
    MultiPoly acc(target);
    for (const auto& [e, c] : terms_) {
        MultiPoly t = constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) t = t * images[i].pow(e[i]);
        acc = acc + t;
    }
    return acc;
}

const std::pair<const Exponents, Rational>& MultiPoly::leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading_term of zero polynomial");
    return *terms_.rbegin();
}

Rational MultiPoly::leading_coeff() const { return leading_term().second; }

MultiPoly MultiPoly::primitive_part(Rational* content) const {
    if (terms_.empty()) {
        if (content) *content = Rational(0);
        return *this;
    }
    // content = sign(lc) * gcd(numerators) / lcm(denominators)
    mpz_class g(0), l(1);
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational cont(g, l);
    cont.canonicalize();
    if (leading_coeff() < 0) cont = -cont;
    if (content) *content = cont;
    return *this * (Rational(1) / cont);
}

namespace {

// Polynomial in the last chart variable with MultiPoly coefficients in the
// remaining ones; used by the gcd recursion.
using UniPoly = std::vector<MultiPoly>;  // index = degree in the main variable

int udeg(const UniPoly& u) {
    for (int i = static_cast<int>(u.size()) - 1; i >= 0; --i)
        if (!u[i].is_zero()) return i;
    return -1;
}

void utrim(UniPoly& u) { u.resize(static_cast<std::size_t>(udeg(u) + 1)); }

UniPoly to_uni(const MultiPoly& p, std::size_t k) {
    // k = index of main variable; coefficients keep the full chart with
    // exponent 0 in slot k.
    UniPoly u;
    for (const auto& [e, c] : p.terms()) {
        uint32_t d = e[k];
        if (u.size() <= d) u.resize(d + 1, MultiPoly::zero(p.chart()));
        Exponents r = e;
        r[k] = 0;
        u[d].add_term(r, c);
    }
    utrim(u);
    return u;
}

MultiPoly from_uni(const UniPoly& u, std::size_t k, const Chart& chart) {
    MultiPoly p(chart);
    for (std::size_t d = 0; d < u.size(); ++d) {
        for (const auto& [e, c] : u[d].terms()) {
            Exponents r = e;
            r[k] = static_cast<uint32_t>(d);
            p.add_term(r, c);
        }
    }
    return p;
}

UniPoly umul_scalar(const UniPoly& u, const MultiPoly& s) {
    UniPoly r;
    r.reserve(u.size());
    for (const auto& c : u) r.push_back(c * s);
    return r;
}

// Canonical pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
UniPoly uprem(UniPoly a, const UniPoly& b) {
    int db = udeg(b);
    const MultiPoly& lb = b[db];
    int da = udeg(a);
    int scale = da - db + 1;  // multiplications by lc(b) still owed
    while (da >= db) {
        const MultiPoly lt = a[da];
        a = umul_scalar(a, lb);
        --scale;
        // subtract lt * x^(da-db) * b
        for (int i = 0; i <= db; ++i)
            a[da - db + i] = a[da - db + i] - lt * b[i];
        utrim(a);
        int nda = udeg(a);
        if (nda >= da) throw std::logic_error("pseudo-remainder did not reduce degree");
        da = nda;
    }
    for (; scale > 0; --scale) a = umul_scalar(a, lb);
    return a;
}

MultiPoly uni_content(const UniPoly& u, MultiPoly (*gcd_fn)(const MultiPoly&, const MultiPoly&),
                      const Chart& chart) {
    MultiPoly g = MultiPoly::zero(chart);
    for (const auto& c : u) {
        if (c.is_zero()) continue;
        g = gcd_fn(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

// Image of p in the main variable k with the other variables set to integer
// values; coefficient vector indexed by the exponent of x_k.
std::vector<Rational> uni_image(const MultiPoly& p, std::size_t k,
                                const std::vector<long>& vals) {
    std::vector<Rational> coeffs;
    for (const auto& [e, c] : p.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i == k) continue;
            for (uint32_t x = 0; x < e[i]; ++x) t *= Rational(vals[i]);
        }
        if (coeffs.size() <= e[k]) coeffs.resize(e[k] + 1, Rational(0));
        coeffs[e[k]] += t;
    }
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return coeffs;
}

int uni_rat_deg(const std::vector<Rational>& u) {
    return static_cast<int>(u.size()) - 1;
}

std::vector<Rational> uni_rat_rem(std::vector<Rational> a,
                                  const std::vector<Rational>& b) {
    int db = uni_rat_deg(b);
    while (uni_rat_deg(a) >= db) {
        Rational q = a.back() / b.back();
        int shift = uni_rat_deg(a) - db;
        for (int i = 0; i <= db; ++i) a[shift + i] -= q * b[i];
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

// True when the gcd of two evaluation images is provably constant, which
// (given that neither leading coefficient vanished under evaluation) proves
// the primitive parts of the originals are coprime.
bool images_coprime(std::vector<Rational> a, std::vector<Rational> b) {
    while (true) {
        if (uni_rat_deg(b) <= 0) return uni_rat_deg(b) == 0;
        std::vector<Rational> r = uni_rat_rem(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
        if (b.empty()) return false;
    }
}

// Degree of p in variable k.
uint32_t var_degree(const MultiPoly& p, std::size_t k) {
    uint32_t d = 0;
    for (const auto& [e, c] : p.terms()) d = std::max(d, e[k]);
    return d;
}

}  // namespace

MultiPoly MultiPoly::divide_exact(const MultiPoly& rhs) const {
    check_chart(rhs);
    if (rhs.is_zero()) throw std::invalid_argument("division by zero polynomial");
    MultiPoly rem = *this;
    MultiPoly quot(chart_);
    const auto& [le, lc] = rhs.leading_term();
    while (!rem.is_zero()) {
        const auto& [re, rc] = rem.leading_term();
        Exponents qe(chart_.size());
        for (std::size_t i = 0; i < qe.size(); ++i) {
            if (re[i] < le[i])
                throw std::invalid_argument("polynomial division is not exact");
            qe[i] = re[i] - le[i];
        }
        MultiPoly t = monomial(chart_, qe, rc / lc);
        quot = quot + t;
        rem = rem - t * rhs;
    }
    return quot;
}

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.chart() != b.chart())
        throw std::invalid_argument("poly_gcd: chart mismatch");
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    if (a.is_constant() || b.is_constant())
        return MultiPoly::constant(a.chart(), Rational(1));

    // Pick the last variable actually present in either operand.
    std::size_t k = a.chart().size();
    for (std::size_t i = a.chart().size(); i-- > 0;) {
        bool used = false;
        for (const auto& [e, c] : a.terms()) used = used || e[i] > 0;
        for (const auto& [e, c] : b.terms()) used = used || e[i] > 0;
        if (used) { k = i; break; }
    }
    if (k == a.chart().size())
        return MultiPoly::constant(a.chart(), Rational(1));

    const Chart& chart = a.chart();
    MultiPoly pa = a.primitive_part();
    MultiPoly pb = b.primitive_part();

    // Fast path: if random evaluation images in the main variable are
    // coprime (with non-vanishing leading coefficients), the primitive
    // parts are coprime and only the contents can share a factor.
    bool proven_coprime = false;
    {
        uint32_t da = var_degree(pa, k), db = var_degree(pb, k);
        unsigned long seed = 0x9e3779b9ul;
        for (int attempt = 0; attempt < 4 && !proven_coprime; ++attempt) {
            std::vector<long> vals(chart.size());
            for (auto& x : vals) {
                seed = seed * 6364136223846793005ul + 1442695040888963407ul;
                x = static_cast<long>((seed >> 33) % 37) - 18;
                if (x == 0) x = 19;
            }
            std::vector<Rational> ia = uni_image(pa, k, vals);
            std::vector<Rational> ib = uni_image(pb, k, vals);
            if (uni_rat_deg(ia) != static_cast<int>(da)) continue;
            if (uni_rat_deg(ib) != static_cast<int>(db)) continue;
            if (da == 0 || db == 0) { proven_coprime = true; break; }
            if (da < db) std::swap(ia, ib);
            proven_coprime = images_coprime(std::move(ia), std::move(ib));
        }
    }

    UniPoly ua = to_uni(pa, k);
    UniPoly ub = to_uni(pb, k);
    MultiPoly ca = uni_content(ua, &poly_gcd, chart);
    MultiPoly cb = uni_content(ub, &poly_gcd, chart);
    MultiPoly cg = poly_gcd(ca, cb);
    if (proven_coprime) return cg;

    for (auto& c : ua) c = c.divide_exact(ca);
    for (auto& c : ub) c = c.divide_exact(cb);
    if (udeg(ua) < udeg(ub)) std::swap(ua, ub);

    // Subresultant PRS: pseudo-remainders divided by the predicted factor
    // g*h^d, which keeps coefficient growth polynomial without per-round
    // content extraction.
    MultiPoly sg = MultiPoly::constant(chart, Rational(1));
    MultiPoly sh = MultiPoly::constant(chart, Rational(1));
    while (true) {
        int d = udeg(ua) - udeg(ub);
        UniPoly r = uprem(ua, ub);
        if (udeg(r) < 0) break;
        if (udeg(r) == 0) {
            // constant (in x_k) remainder: primitive parts are coprime
            return cg;
        }
        MultiPoly divisor = sg;
        for (int i = 0; i < d; ++i) divisor = divisor * sh;
        for (auto& c : r) c = c.divide_exact(divisor);
        sg = ub[static_cast<std::size_t>(udeg(ub))];
        if (d > 0) {
            MultiPoly num = sg.pow(static_cast<uint32_t>(d));
            for (int i = 0; i < d - 1; ++i) num = num.divide_exact(sh);
            sh = num;
        }
        ua = std::move(ub);
        ub = std::move(r);
    }
    MultiPoly cb2 = uni_content(ub, &poly_gcd, chart);
    for (auto& c : ub) c = c.divide_exact(cb2);
    MultiPoly g = (from_uni(ub, k, chart) * cg).primitive_part();
    if (g.leading_coeff() < 0) g = -g;
    return g;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest-degree terms first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational ac = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool deg0 = total_degree(e) == 0;
        bool coeff_printed = (ac != 1 || deg0);
        if (coeff_printed) os << rational_str(ac);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (coeff_printed) os << "*";
            coeff_printed = true;
            os << chart_[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

nlohmann::json MultiPoly::to_json() const {
    nlohmann::json j;
    j["chart"] = chart_;
    j["terms"] = nlohmann::json::array();
    for (const auto& [e, c] : terms_) {
        nlohmann::json t;
        t["exp"] = e;
        t["coeff"] = rational_str(c);
        j["terms"].push_back(std::move(t));
    }
    return j;
}

MultiPoly MultiPoly::from_json(const nlohmann::json& j) {
    Chart chart = j.at("chart").get<Chart>();
    MultiPoly p(chart);
    for (const auto& t : j.at("terms")) {
        Exponents e = t.at("exp").get<Exponents>();
        p.add_term(e, parse_rational(t.at("coeff").get<std::string>()));
    }
    return p;
}

}  // namespace tba

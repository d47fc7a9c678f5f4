#include "tba/diffop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tba {

namespace {

void check_same_chart(const Chart& a, const Chart& b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": chart mismatch");
}

Rational multi_binomial(const Exponents& alpha, const Exponents& gamma) {
    Rational r(1);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        // binom(alpha_i, gamma_i)
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), alpha[i], gamma[i]);
        r *= Rational(b);
    }
    return r;
}

bool leq(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

void check_cancel(const std::atomic<bool>* cancel) {
    if (cancel && cancel->load()) throw std::runtime_error("check cancelled");
}

}  // namespace

DiffOp DiffOp::identity(const Chart& chart) {
    DiffOp op(chart);
    op.add_term(Exponents(chart.size(), 0), RatFunc::constant(chart, Rational(1)));
    return op;
}

DiffOp DiffOp::scalar(RatFunc f) {
    DiffOp op(f.chart());
    op.add_term(Exponents(f.chart().size(), 0), f);
    return op;
}

DiffOp DiffOp::partial_op(const Chart& chart, const std::string& var) {
    DiffOp op(chart);
    Exponents a(chart.size(), 0);
    MultiPoly probe(chart);
    a[probe.var_index(var)] = 1;
    op.add_term(a, RatFunc::constant(chart, Rational(1)));
    return op;
}

uint32_t DiffOp::order() const {
    uint32_t d = 0;
    for (const auto& [a, c] : terms_) d = std::max(d, total_degree(a));
    return d;
}

void DiffOp::add_term(const Exponents& alpha, const RatFunc& coeff) {
    if (alpha.size() != chart_.size())
        throw std::invalid_argument("derivative multi-index length does not match chart");
    if (coeff.is_zero()) return;
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
        terms_.emplace(alpha, coeff);
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

const RatFunc* DiffOp::coeff(const Exponents& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? nullptr : &it->second;
}

DiffOp DiffOp::operator-() const {
    DiffOp r(chart_);
    for (const auto& [a, c] : terms_) r.terms_.emplace(a, -c);
    return r;
}

DiffOp DiffOp::operator+(const DiffOp& rhs) const {
    check_same_chart(chart_, rhs.chart_, "DiffOp add");
    DiffOp r = *this;
    for (const auto& [a, c] : rhs.terms_) r.add_term(a, c);
    return r;
}

DiffOp DiffOp::operator-(const DiffOp& rhs) const {
    check_same_chart(chart_, rhs.chart_, "DiffOp sub");
    DiffOp r = *this;
    for (const auto& [a, c] : rhs.terms_) r.add_term(a, -c);
    return r;
}

DiffOp DiffOp::operator*(const Rational& c) const {
    DiffOp r(chart_);
    if (c == 0) return r;
    for (const auto& [a, f] : terms_) r.terms_.emplace(a, f * c);
    return r;
}

DiffOp operator*(const Rational& c, const DiffOp& op) { return op * c; }

DiffOp DiffOp::left_mul(const RatFunc& f) const {
    check_same_chart(chart_, f.chart(), "DiffOp left_mul");
    DiffOp r(chart_);
    for (const auto& [a, c] : terms_) r.add_term(a, f * c);
    return r;
}

bool DiffOp::operator==(const DiffOp& rhs) const {
    return chart_ == rhs.chart_ && terms_ == rhs.terms_;
}

std::string DiffOp::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [a, c] = *it;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            os << "*d_" << chart_[i];
            if (a[i] > 1) os << "^" << a[i];
        }
    }
    return os.str();
}

RatFunc derivative(const RatFunc& f, const Exponents& alpha) {
    RatFunc r = f;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (uint32_t k = 0; k < alpha[i]; ++k) r = r.partial(i);
    return r;
}

RatFunc apply(const DiffOp& op, const RatFunc& f) {
    check_same_chart(op.chart(), f.chart(), "apply");
    RatFunc acc = RatFunc::zero(op.chart());
    for (const auto& [a, c] : op.terms()) acc = acc + c * derivative(f, a);
    return acc;
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
    check_same_chart(a.chart(), b.chart(), "compose");
    DiffOp r(a.chart());
    // d^alpha (g d^beta) = sum_{gamma<=alpha} binom(alpha,gamma)
    //                      (d^gamma g) d^{alpha-gamma+beta}
    for (const auto& [alpha, ca] : a.terms()) {
        for (const auto& [beta, cb] : b.terms()) {
            for (const Exponents& gamma : monomials_up_to(alpha.size(), total_degree(alpha))) {
                if (!leq(gamma, alpha)) continue;
                RatFunc dg = derivative(cb, gamma);
                if (dg.is_zero()) continue;
                Exponents idx(alpha.size());
                for (std::size_t i = 0; i < idx.size(); ++i)
                    idx[i] = alpha[i] - gamma[i] + beta[i];
                r.add_term(idx, ca * (multi_binomial(alpha, gamma) * dg));
            }
        }
    }
    return r;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) {
    return compose(a, b) - compose(b, a);
}

DiffOp op_pow(const DiffOp& a, uint32_t n) {
    DiffOp r = DiffOp::identity(a.chart());
    for (uint32_t i = 0; i < n; ++i) r = compose(r, a);
    return r;
}

RatFunc extract_scalar(const DiffOp& op) {
    const RatFunc* c = op.coeff(Exponents(op.chart().size(), 0));
    return c ? *c : RatFunc::zero(op.chart());
}

GaugeFactor GaugeFactor::trivial(const Chart& chart) {
    GaugeFactor g;
    g.chart = chart;
    g.exp_arg = MultiPoly::zero(chart);
    return g;
}

RatFunc GaugeFactor::log_gradient(std::size_t k) const {
    RatFunc acc = RatFunc::zero(chart);
    for (const auto& b : bases) {
        if (b.poly.is_zero())
            throw std::invalid_argument("gauge factor with zero base polynomial");
        acc = acc + RatFunc(b.poly.partial(k), b.poly) * b.exponent;
    }
    acc = acc + RatFunc(exp_arg.partial(k));
    return acc;
}

GaugeFactor GaugeFactor::inverse() const {
    GaugeFactor g = *this;
    for (auto& b : g.bases) b.exponent = -b.exponent;
    g.exp_arg = -g.exp_arg;
    return g;
}

DiffOp gauge_conjugate(const DiffOp& op, const GaugeFactor& gamma) {
    check_same_chart(op.chart(), gamma.chart, "gauge_conjugate");
    const std::size_t n = op.chart().size();
    std::vector<DiffOp> covariant;
    covariant.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        DiffOp d(op.chart());
        Exponents a(n, 0);
        a[i] = 1;
        d.add_term(a, RatFunc::constant(op.chart(), Rational(1)));
        RatFunc l = gamma.log_gradient(i);
        if (!l.is_zero()) d.add_term(Exponents(n, 0), l);
        covariant.push_back(std::move(d));
    }
    DiffOp r(op.chart());
    for (const auto& [alpha, c] : op.terms()) {
        DiffOp term = DiffOp::identity(op.chart());
        for (std::size_t i = 0; i < n; ++i)
            for (uint32_t k = 0; k < alpha[i]; ++k) term = compose(term, covariant[i]);
        r = r + term.left_mul(c);
    }
    return r;
}

Chart PhaseFunction::doubled_chart() const {
    Chart c = positions;
    c.insert(c.end(), momenta.begin(), momenta.end());
    return c;
}

PhaseFunction poisson_bracket(const PhaseFunction& h, const PhaseFunction& k) {
    if (h.positions != k.positions || h.momenta != k.momenta)
        throw std::invalid_argument("poisson_bracket: chart mismatch");
    const std::size_t n = h.positions.size();
    PhaseFunction r;
    r.positions = h.positions;
    r.momenta = h.momenta;
    r.value = MultiPoly::zero(h.value.chart());
    for (std::size_t mu = 0; mu < n; ++mu) {
        std::size_t q = mu, p = n + mu;
        r.value = r.value + h.value.partial(q) * k.value.partial(p) -
                  h.value.partial(p) * k.value.partial(q);
    }
    return r;
}

std::vector<Exponents> monomials_up_to(std::size_t nvars, uint32_t degree) {
    std::vector<Exponents> out;
    Exponents cur(nvars, 0);
    // depth-first enumeration by remaining degree
    std::function<void(std::size_t, uint32_t)> rec = [&](std::size_t i, uint32_t rem) {
        if (i == nvars) {
            out.push_back(cur);
            return;
        }
        for (uint32_t d = 0; d <= rem; ++d) {
            cur[i] = d;
            rec(i + 1, rem - d);
        }
        cur[i] = 0;
    };
    rec(0, degree);
    return out;
}

CheckReport chart_check_exact(const DiffOp& op_x, const std::vector<MultiPoly>& map,
                              const Chart& u_chart, const DiffOp& op_u, uint32_t degree,
                              const std::atomic<bool>* cancel) {
    if (map.size() != u_chart.size())
        throw std::invalid_argument("chart_check_exact: map arity does not match target chart");
    for (const auto& m : map)
        check_same_chart(m.chart(), op_x.chart(), "chart_check_exact map");
    check_same_chart(op_u.chart(), u_chart, "chart_check_exact target operator");

    CheckReport rep;
    rep.check_id = "chart_check_exact";
    rep.params["degree"] = degree;

    for (const Exponents& e : monomials_up_to(u_chart.size(), degree)) {
        check_cancel(cancel);
        MultiPoly f = MultiPoly::monomial(u_chart, e, Rational(1));
        RatFunc lhs = apply(op_x, RatFunc(f.substitute(map)));
        RatFunc rhs = apply(op_u, RatFunc(f)).substitute(map);
        RatFunc residual = lhs - rhs;
        CheckItem item;
        item.label = f.str();
        item.pass = residual.is_zero();
        if (!item.pass) item.residual = residual.str();
        rep.add(std::move(item));
    }
    return rep;
}

namespace {

constexpr long double kFdStep = 1e-4L;

// Nested 4th-order central differences; evaluation cost 5^|alpha|.
long double fd_derivative(const std::function<long double(const std::vector<long double>&)>& f,
                          std::vector<long double>& x, const Exponents& alpha,
                          std::size_t from) {
    std::size_t i = from;
    while (i < alpha.size() && alpha[i] == 0) ++i;
    if (i == alpha.size()) return f(x);

    Exponents rest = alpha;
    rest[i] -= 1;
    const long double h = kFdStep;
    long double acc = 0;
    const long double offsets[4] = {-2 * h, -h, h, 2 * h};
    const long double weights[4] = {1.0L / (12 * h), -8.0L / (12 * h), 8.0L / (12 * h),
                                    -1.0L / (12 * h)};
    long double saved = x[i];
    for (int s = 0; s < 4; ++s) {
        x[i] = saved + offsets[s];
        acc += weights[s] * fd_derivative(f, x, rest, i);
        x[i] = saved;
    }
    return acc;
}

}  // namespace

double apply_numeric(const DiffOp& op,
                     const std::function<long double(const std::vector<long double>&)>& f,
                     const std::vector<double>& point) {
    long double acc = 0;
    std::vector<long double> x(point.begin(), point.end());
    for (const auto& [alpha, c] : op.terms())
        acc += static_cast<long double>(c.eval_double(point)) * fd_derivative(f, x, alpha, 0);
    return static_cast<double>(acc);
}

CheckReport chart_check_numeric(const DiffOp& op_x, const NumericChart& chart,
                                const DiffOp& op_u,
                                const std::vector<std::vector<double>>& points,
                                double tol,
                                const std::atomic<bool>* cancel) {
    if (chart.map.size() != chart.u_chart.size())
        throw std::invalid_argument("chart_check_numeric: map arity mismatch");
    check_same_chart(op_u.chart(), chart.u_chart, "chart_check_numeric target operator");

    CheckReport rep;
    rep.check_id = "chart_check_numeric";
    rep.params["chart"] = chart.name;
    rep.params["tol"] = tol;

    std::vector<Exponents> test_exps = monomials_up_to(chart.u_chart.size(), 2);
    for (const auto& pt : points) {
        check_cancel(cancel);
        if (chart.in_region && !chart.in_region(pt))
            throw std::invalid_argument("chart_check_numeric: point outside chart region");
        std::vector<long double> ptl(pt.begin(), pt.end());
        std::vector<double> u(chart.u_chart.size());
        for (std::size_t j = 0; j < u.size(); ++j)
            u[j] = static_cast<double>(chart.map[j](ptl));

        double maxdev = 0;
        for (const Exponents& e : test_exps) {
            if (total_degree(e) == 0) continue;
            MultiPoly f = MultiPoly::monomial(chart.u_chart, e, Rational(1));
            auto composed = [&](const std::vector<long double>& x) {
                long double val = 1;
                for (std::size_t j = 0; j < chart.u_chart.size(); ++j) {
                    if (e[j] == 0) continue;
                    long double uj = chart.map[j](x);
                    for (uint32_t t = 0; t < e[j]; ++t) val *= uj;
                }
                return val;
            };
            double lhs = apply_numeric(op_x, composed, pt);
            double rhs = apply(op_u, RatFunc(f)).eval_double(u);
            double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            maxdev = std::max(maxdev, std::abs(lhs - rhs) / scale);
        }
        CheckItem item;
        std::ostringstream os;
        os << "point(";
        for (std::size_t i = 0; i < pt.size(); ++i) os << (i ? "," : "") << pt[i];
        os << ")";
        item.label = os.str();
        item.pass = maxdev < tol;
        os.str("");
        os << maxdev;
        item.residual = os.str();
        rep.add(std::move(item));
    }
    return rep;
}

}  // namespace tba

#include "tba/geometry.hpp"

#include <stdexcept>

namespace tba {

namespace {

std::vector<std::vector<RatFunc>> minor_matrix(const std::vector<std::vector<RatFunc>>& m,
                                               std::size_t row, std::size_t col) {
    std::size_t n = m.size();
    std::vector<std::vector<RatFunc>> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == row) continue;
        std::vector<RatFunc> r;
        for (std::size_t j = 0; j < n; ++j)
            if (j != col) r.push_back(m[i][j]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

RatFunc matrix_det(const std::vector<std::vector<RatFunc>>& m, const Chart& chart) {
    std::size_t n = m.size();
    if (n == 0) return RatFunc::constant(chart, Rational(1));
    if (n == 1) return m[0][0];
    RatFunc acc = RatFunc::zero(chart);
    Rational sign(1);
    for (std::size_t j = 0; j < n; ++j) {
        if (!m[0][j].is_zero())
            acc = acc + m[0][j] * matrix_det(minor_matrix(m, 0, j), chart) * sign;
        sign = -sign;
    }
    return acc;
}

MetricTensor metric_from(const DiffOp& op) {
    if (op.order() > 2)
        throw std::invalid_argument("metric_from: operator order exceeds 2");
    const Chart& chart = op.chart();
    std::size_t n = chart.size();
    MetricTensor g;
    g.chart = chart;
    g.contravariant.assign(n, std::vector<RatFunc>(n, RatFunc::zero(chart)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Exponents a(n, 0);
            a[i] += 1;
            a[j] += 1;
            const RatFunc* c = op.coeff(a);
            if (!c) continue;
            RatFunc val = (i == j) ? *c : *c * rat(1, 2);
            g.contravariant[i][j] = val;
            g.contravariant[j][i] = val;
        }
    }
    g.det = matrix_det(g.contravariant, chart);
    g.singular = g.det.is_zero();
    if (!g.singular) {
        g.covariant.assign(n, std::vector<RatFunc>(n, RatFunc::zero(chart)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                RatFunc cof = matrix_det(minor_matrix(g.contravariant, j, i), chart);
                if ((i + j) % 2) cof = -cof;
                g.covariant[i][j] = cof / g.det;
            }
        }
    }
    return g;
}

CheckReport det_factor_check(const MetricTensor& g, const RatFunc& printed,
                             const std::string& id) {
    CheckReport rep;
    rep.check_id = "det_factor_check";
    rep.params["metric_id"] = id;
    RatFunc residual = g.det - printed;
    CheckItem item;
    item.label = "det";
    item.pass = residual.is_zero();
    if (!item.pass) {
        item.residual = residual.str();
        rep.status = CheckStatus::erratum;
        rep.note = "computed determinant disagrees with the printed factorization";
    }
    rep.items.push_back(std::move(item));
    return rep;
}

CheckReport trace_factor_check(const MetricTensor& g, const RatFunc& printed,
                               const std::string& id) {
    CheckReport rep;
    rep.check_id = "trace_factor_check";
    rep.params["metric_id"] = id;
    RatFunc tr = RatFunc::zero(g.chart);
    for (std::size_t i = 0; i < g.dim(); ++i) tr = tr + g.contravariant[i][i];
    RatFunc residual = tr - printed;
    CheckItem item;
    item.label = "trace";
    item.pass = residual.is_zero();
    if (!item.pass) {
        item.residual = residual.str();
        rep.status = CheckStatus::erratum;
        rep.note = "computed trace = " + tr.str() + " disagrees with the printed value";
    }
    rep.items.push_back(std::move(item));
    return rep;
}

std::vector<std::vector<std::vector<RatFunc>>> christoffel(const MetricTensor& g) {
    if (g.singular) throw std::invalid_argument("christoffel: singular metric");
    std::size_t n = g.dim();
    auto z = RatFunc::zero(g.chart);
    std::vector<std::vector<std::vector<RatFunc>>> gamma(
        n, std::vector<std::vector<RatFunc>>(n, std::vector<RatFunc>(n, z)));
    // precompute partials of the covariant metric
    std::vector<std::vector<std::vector<RatFunc>>> dg(
        n, std::vector<std::vector<RatFunc>>(n, std::vector<RatFunc>(n, z)));
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                dg[m][i][j] = g.covariant[i][j].partial(m);
                dg[m][j][i] = dg[m][i][j];
            }
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t mu = 0; mu < n; ++mu)
            for (std::size_t nu = mu; nu < n; ++nu) {
                RatFunc acc = z;
                for (std::size_t s = 0; s < n; ++s) {
                    RatFunc term = dg[mu][s][nu] + dg[nu][s][mu] - dg[s][mu][nu];
                    if (!term.is_zero()) acc = acc + g.contravariant[l][s] * term;
                }
                acc = acc * rat(1, 2);
                gamma[l][mu][nu] = acc;
                gamma[l][nu][mu] = acc;
            }
    return gamma;
}

namespace {

// R^r_{s mu nu}
std::vector<std::vector<std::vector<std::vector<RatFunc>>>> riemann(const MetricTensor& g) {
    std::size_t n = g.dim();
    auto gamma = christoffel(g);
    auto z = RatFunc::zero(g.chart);
    std::vector<std::vector<std::vector<std::vector<RatFunc>>>> rm(
        n, std::vector<std::vector<std::vector<RatFunc>>>(
               n, std::vector<std::vector<RatFunc>>(n, std::vector<RatFunc>(n, z))));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t mu = 0; mu < n; ++mu)
                for (std::size_t nu = mu + 1; nu < n; ++nu) {
                    RatFunc acc = gamma[r][nu][s].partial(mu) - gamma[r][mu][s].partial(nu);
                    for (std::size_t l = 0; l < n; ++l)
                        acc = acc + gamma[r][mu][l] * gamma[l][nu][s] -
                              gamma[r][nu][l] * gamma[l][mu][s];
                    rm[r][s][mu][nu] = acc;
                    rm[r][s][nu][mu] = -acc;
                }
    return rm;
}

}  // namespace

std::vector<std::vector<RatFunc>> ricci_tensor(const MetricTensor& g) {
    std::size_t n = g.dim();
    auto rm = riemann(g);
    std::vector<std::vector<RatFunc>> ric(n, std::vector<RatFunc>(n, RatFunc::zero(g.chart)));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t nu = s; nu < n; ++nu) {
            RatFunc acc = RatFunc::zero(g.chart);
            for (std::size_t m = 0; m < n; ++m) acc = acc + rm[m][s][m][nu];
            ric[s][nu] = acc;
            ric[nu][s] = acc;
        }
    return ric;
}

RatFunc ricci_scalar(const MetricTensor& g) {
    if (g.singular) throw std::invalid_argument("ricci_scalar: singular metric");
    auto ric = ricci_tensor(g);
    std::size_t n = g.dim();
    RatFunc acc = RatFunc::zero(g.chart);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!ric[i][j].is_zero()) acc = acc + g.contravariant[i][j] * ric[i][j];
    return acc;
}

CheckReport flatness_check(const MetricTensor& g, const std::string& id) {
    if (g.singular) throw std::invalid_argument("flatness_check: singular metric");
    CheckReport rep;
    rep.check_id = "flatness_check";
    rep.params["metric_id"] = id;
    auto rm = riemann(g);
    std::size_t n = g.dim();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t mu = 0; mu < n; ++mu)
                for (std::size_t nu = mu + 1; nu < n; ++nu) {
                    if (rm[r][s][mu][nu].is_zero()) continue;
                    CheckItem item;
                    item.label = "R^" + std::to_string(r) + "_" + std::to_string(s) + "," +
                                 std::to_string(mu) + std::to_string(nu);
                    item.pass = false;
                    item.residual = rm[r][s][mu][nu].str();
                    rep.add(std::move(item));
                }
    if (rep.items.empty()) {
        CheckItem item;
        item.label = "riemann";
        item.pass = true;
        rep.items.push_back(std::move(item));
    }
    return rep;
}

CottonResult cotton_at(const MetricTensor& g, const std::vector<Rational>& point) {
    std::size_t n = g.dim();
    if (n != 3)
        throw std::invalid_argument("cotton_at: defined for 3-variable metrics only");
    if (g.singular) throw std::invalid_argument("cotton_at: singular metric");
    if (g.det.eval(point) == 0)
        throw std::invalid_argument("cotton_at: determinant vanishes at the point");

    auto gamma = christoffel(g);
    auto ric = ricci_tensor(g);
    RatFunc rs = ricci_scalar(g);

    // covariant derivative of the Ricci tensor, evaluated at the point:
    // (nabla_l R)_{mu nu} = d_l R_{mu nu} - Gamma^s_{l mu} R_{s nu}
    //                                     - Gamma^s_{l nu} R_{mu s}
    auto nabla_ric = [&](std::size_t l, std::size_t mu, std::size_t nu) {
        Rational acc = ric[mu][nu].partial(l).eval(point);
        for (std::size_t s = 0; s < n; ++s) {
            acc -= gamma[s][l][mu].eval(point) * ric[s][nu].eval(point);
            acc -= gamma[s][l][nu].eval(point) * ric[mu][s].eval(point);
        }
        return acc;
    };
    // nabla of the scalar is a plain partial
    std::vector<Rational> drs(n);
    for (std::size_t l = 0; l < n; ++l) drs[l] = rs.partial(l).eval(point);

    CottonResult out;
    out.components.assign(n * n * n, Rational(0));
    out.max_abs = Rational(0);
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu)
            for (std::size_t l = 0; l < n; ++l) {
                Rational c = nabla_ric(l, mu, nu) - nabla_ric(nu, mu, l) +
                             rat(1, 4) * (drs[nu] * g.covariant[mu][l].eval(point) -
                                          drs[l] * g.covariant[mu][nu].eval(point));
                out.components[(mu * n + nu) * n + l] = c;
                Rational a = c < 0 ? Rational(-c) : c;
                if (a > out.max_abs) out.max_abs = a;
            }
    return out;
}

DiffOp laplace_beltrami(const MetricTensor& g) {
    if (g.singular)
        throw std::invalid_argument("laplace_beltrami: singular metric");
    const Chart& chart = g.chart;
    std::size_t n = chart.size();
    DiffOp op(chart);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Exponents a(n, 0);
            a[i] += 1;
            a[j] += 1;
            RatFunc c = (i == j) ? g.contravariant[i][j] : rat(2) * g.contravariant[i][j];
            op.add_term(a, c);
        }
    for (std::size_t nu = 0; nu < n; ++nu) {
        RatFunc c = RatFunc::zero(chart);
        for (std::size_t mu = 0; mu < n; ++mu) {
            c = c + g.contravariant[mu][nu].partial(mu);
            c = c - rat(1, 2) * g.contravariant[mu][nu] * (g.det.partial(mu) / g.det);
        }
        Exponents a(n, 0);
        a[nu] = 1;
        op.add_term(a, c);
    }
    return op;
}

}  // namespace tba

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tba/diffop.hpp"

using namespace tba;

namespace {

const Chart RHO = chart_of({"r12", "r13", "r23"});

MultiPoly v(const Chart& c, const std::string& n) { return MultiPoly::variable(c, n); }

MultiPoly tau1() { return v(RHO, "r12") + v(RHO, "r13") + v(RHO, "r23"); }
MultiPoly tau2() {
    return v(RHO, "r12") * v(RHO, "r13") + v(RHO, "r12") * v(RHO, "r23") +
           v(RHO, "r13") * v(RHO, "r23");
}

// Radial part of the 3-body kinetic operator in squared-distance variables,
// for (reduced) dimension parameter d.
DiffOp radial_operator(const Rational& d) {
    DiffOp op(RHO);
    MultiPoly r12 = v(RHO, "r12"), r13 = v(RHO, "r13"), r23 = v(RHO, "r23");
    auto E = [&](int a, int b, int c) { return Exponents{uint32_t(a), uint32_t(b), uint32_t(c)}; };
    op.add_term(E(2, 0, 0), RatFunc(rat(4) * r12));
    op.add_term(E(0, 2, 0), RatFunc(rat(4) * r13));
    op.add_term(E(0, 0, 2), RatFunc(rat(4) * r23));
    op.add_term(E(1, 1, 0), RatFunc(rat(2) * (r12 + r13 - r23)));
    op.add_term(E(1, 0, 1), RatFunc(rat(2) * (r12 + r23 - r13)));
    op.add_term(E(0, 1, 1), RatFunc(rat(2) * (r13 + r23 - r12)));
    RatFunc twod = RatFunc::constant(RHO, rat(2) * d);
    op.add_term(E(1, 0, 0), twod);
    op.add_term(E(0, 1, 0), twod);
    op.add_term(E(0, 0, 1), twod);
    return op;
}

// First-order symmetry of the radial operator, antisymmetric under
// permutations of the squared distances.
DiffOp symmetry_l1() {
    DiffOp op(RHO);
    MultiPoly r12 = v(RHO, "r12"), r13 = v(RHO, "r13"), r23 = v(RHO, "r23");
    op.add_term({1, 0, 0}, RatFunc(r13 - r23));
    op.add_term({0, 1, 0}, RatFunc(r23 - r12));
    op.add_term({0, 0, 1}, RatFunc(r12 - r13));
    return op;
}

DiffOp random_first_order(std::mt19937& rng, const Chart& chart) {
    std::uniform_int_distribution<long> coef(-4, 4);
    std::uniform_int_distribution<int> pick(0, 2);
    DiffOp op(chart);
    for (std::size_t i = 0; i < chart.size(); ++i) {
        MultiPoly c(chart);
        Exponents e(chart.size(), 0);
        e[static_cast<std::size_t>(pick(rng)) % chart.size()] = 1;
        c.add_term(e, rat(coef(rng)));
        c.add_term(Exponents(chart.size(), 0), rat(coef(rng)));
        Exponents a(chart.size(), 0);
        a[i] = 1;
        op.add_term(a, RatFunc(c));
    }
    return op;
}

RatFunc random_ratfunc(std::mt19937& rng, const Chart& chart) {
    std::uniform_int_distribution<long> coef(-5, 5);
    MultiPoly n(chart), d(chart);
    Exponents e(chart.size(), 0);
    n.add_term(e, rat(coef(rng)));
    e[0] = 2;
    n.add_term(e, rat(coef(rng) * 2 + 1));
    e[0] = 0;
    if (chart.size() > 1) e[1] = 1;
    n.add_term(e, rat(coef(rng)));
    d.add_term(Exponents(chart.size(), 0), rat(1));
    Exponents e2(chart.size(), 0);
    e2[0] = 1;
    d.add_term(e2, rat(1));
    return RatFunc(n, d);
}

}  // namespace

TEST_CASE("application of the radial operator") {
    DiffOp op = radial_operator(rat(3));
    CHECK(apply(op, RatFunc::constant(RHO, rat(1))).is_zero());
    RatFunc r = apply(op, RatFunc::variable(RHO, "r12"));
    CHECK(r == RatFunc::constant(RHO, rat(6)));  // 2d at d=3
    DiffOp op7 = radial_operator(rat(7, 2));
    CHECK(apply(op7, RatFunc::variable(RHO, "r12")) == RatFunc::constant(RHO, rat(7)));
}

TEST_CASE("symmetry operator annihilates symmetric polynomials") {
    DiffOp l1 = symmetry_l1();
    CHECK(apply(l1, RatFunc(tau1())).is_zero());
    CHECK(apply(l1, RatFunc(tau2())).is_zero());
    // tau3 maps to the antisymmetric product of coordinate differences
    MultiPoly t3 = v(RHO, "r12") * v(RHO, "r13") * v(RHO, "r23");
    MultiPoly vdm = (v(RHO, "r12") - v(RHO, "r13")) * (v(RHO, "r13") - v(RHO, "r23")) *
                    (v(RHO, "r12") - v(RHO, "r23"));
    CHECK(apply(l1, RatFunc(t3)) == RatFunc(vdm));
    CHECK_FALSE(apply(l1, RatFunc::variable(RHO, "r12")).is_zero());
}

TEST_CASE("composition follows the Leibniz rule") {
    Chart X = chart_of({"x"});
    DiffOp dx = DiffOp::partial_op(X, "x");
    DiffOp xid = DiffOp::scalar(RatFunc::variable(X, "x"));
    DiffOp c = compose(dx, xid);
    DiffOp expect(X);
    expect.add_term({1}, RatFunc::variable(X, "x"));
    expect.add_term({0}, RatFunc::constant(X, rat(1)));
    CHECK(c == expect);

    DiffOp id = DiffOp::identity(RHO);
    DiffOp op = radial_operator(rat(2));
    CHECK(compose(id, op) == op);
    CHECK(compose(op, id) == op);
}

TEST_CASE("compose is compatible with apply") {
    std::mt19937 rng(5);
    for (int i = 0; i < 15; ++i) {
        DiffOp a = random_first_order(rng, RHO);
        DiffOp b = random_first_order(rng, RHO);
        RatFunc f = random_ratfunc(rng, RHO);
        CHECK(apply(compose(a, b), f) == apply(a, apply(b, f)));
    }
}

TEST_CASE("radial operator commutes with its first-order symmetry") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<long> num(1, 12), den(1, 5);
    for (int i = 0; i < 3; ++i) {
        Rational d = rat(num(rng), den(rng));
        CHECK(commutator(radial_operator(d), symmetry_l1()).is_zero());
    }
    DiffOp op = radial_operator(rat(3));
    CHECK(commutator(op, op).is_zero());
    DiffOp l1 = symmetry_l1();
    CHECK(commutator(op, l1) == -commutator(l1, op));
}

TEST_CASE("Jacobi identity for commutators of first-order operators") {
    std::mt19937 rng(13);
    for (int i = 0; i < 8; ++i) {
        DiffOp a = random_first_order(rng, RHO);
        DiffOp b = random_first_order(rng, RHO);
        DiffOp c = random_first_order(rng, RHO);
        DiffOp j = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                   commutator(c, commutator(a, b));
        CHECK(j.is_zero());
    }
}

TEST_CASE("trivial gauge leaves operators unchanged") {
    DiffOp op = radial_operator(rat(3));
    CHECK(gauge_conjugate(op, GaugeFactor::trivial(RHO)) == op);
}

TEST_CASE("gauge conjugation with integer exponent matches direct product") {
    // Gamma = f^2 is itself rational, so conj(op) h = f^{-2} op(f^2 h) can be
    // checked through the rational-function algebra.
    Chart X = chart_of({"x", "y"});
    MultiPoly f = v(X, "x") + v(X, "y") * v(X, "y") + MultiPoly::constant(X, rat(1));
    GaugeFactor g;
    g.chart = X;
    g.bases.push_back({f, rat(2)});
    g.exp_arg = MultiPoly::zero(X);

    DiffOp op(X);
    op.add_term({2, 0}, RatFunc::variable(X, "x"));
    op.add_term({1, 1}, RatFunc::constant(X, rat(3)));
    op.add_term({0, 1}, RatFunc::variable(X, "y"));

    DiffOp conj = gauge_conjugate(op, g);
    RatFunc gamma(f * f);
    std::mt19937 rng(17);
    for (int i = 0; i < 6; ++i) {
        RatFunc h = random_ratfunc(rng, X);
        CHECK(apply(conj, h) * gamma == apply(op, gamma * h));
    }
}

TEST_CASE("gauge conjugation with exponential factor matches Leibniz expansion") {
    // Gamma = exp(g): conj(d_x) must be d_x + g_x, and second order follows
    Chart X = chart_of({"x", "y"});
    GaugeFactor g;
    g.chart = X;
    g.exp_arg = v(X, "x") * v(X, "y");

    DiffOp dxx(X);
    dxx.add_term({2, 0}, RatFunc::constant(X, rat(1)));
    DiffOp conj = gauge_conjugate(dxx, g);
    // exp(-xy) d^2/dx^2 exp(xy) = d^2/dx^2 + 2y d/dx + y^2
    DiffOp expect(X);
    expect.add_term({2, 0}, RatFunc::constant(X, rat(1)));
    expect.add_term({1, 0}, rat(2) * RatFunc::variable(X, "y"));
    expect.add_term({0, 0}, RatFunc(v(X, "y") * v(X, "y")));
    CHECK(conj == expect);
}

TEST_CASE("gauge conjugation is a composition homomorphism") {
    std::mt19937 rng(21);
    GaugeFactor g;
    g.chart = RHO;
    g.bases.push_back({tau1(), rat(-1, 4)});
    g.bases.push_back({rat(4) * tau2() - tau1() * tau1(), rat(1, 3)});
    g.exp_arg = MultiPoly::zero(RHO);
    for (int i = 0; i < 5; ++i) {
        DiffOp a = random_first_order(rng, RHO);
        DiffOp b = random_first_order(rng, RHO);
        CHECK(gauge_conjugate(compose(a, b), g) ==
              compose(gauge_conjugate(a, g), gauge_conjugate(b, g)));
    }
    DiffOp op = radial_operator(rat(3));
    CHECK(gauge_conjugate(gauge_conjugate(op, g), g.inverse()) == op);
}

TEST_CASE("gauge rotation of the radial operator produces the geometric potential") {
    // Gamma = D^{-1/4} (4 tau2 - tau1^2)^{(3-d)/4} with D = 6 tau1 (4 tau2 - tau1^2).
    // The scalar part of the conjugate is minus the effective potential
    // 9/(8 tau1) + (d-2)(d-4)/2 * tau1/(4 tau2 - tau1^2).
    std::mt19937 rng(29);
    std::uniform_int_distribution<long> num(1, 9), den(1, 4);
    for (int i = 0; i < 3; ++i) {
        Rational d = rat(num(rng), den(rng));
        MultiPoly area16 = rat(4) * tau2() - tau1() * tau1();
        MultiPoly det = rat(6) * tau1() * area16;
        GaugeFactor g;
        g.chart = RHO;
        g.bases.push_back({det, rat(-1, 4)});
        g.bases.push_back({area16, (rat(3) - d) / rat(4)});
        g.exp_arg = MultiPoly::zero(RHO);

        DiffOp conj = gauge_conjugate(radial_operator(d), g);
        RatFunc veff = RatFunc(MultiPoly::constant(RHO, rat(9, 8)), tau1()) +
                       (d - rat(2)) * (d - rat(4)) / rat(2) * RatFunc(tau1(), area16);
        CHECK(extract_scalar(conj) == -veff);

        // first-order part must be d-independent: -3 (rho.grad)/tau1 + 4 grad
        for (std::size_t k = 0; k < 3; ++k) {
            Exponents a(3, 0);
            a[k] = 1;
            const RatFunc* c = conj.coeff(a);
            REQUIRE(c != nullptr);
            RatFunc expect = RatFunc(rat(-3) * v(RHO, RHO[k]), tau1()) +
                             RatFunc::constant(RHO, rat(4));
            CHECK(*c == expect);
        }
    }
}

TEST_CASE("scalar extraction") {
    CHECK(extract_scalar(radial_operator(rat(3))).is_zero());
    Chart X = chart_of({"x"});
    DiffOp op(X);
    op.add_term({1}, RatFunc::variable(X, "x"));
    op.add_term({0}, RatFunc::constant(X, rat(5)));
    CHECK(extract_scalar(op) == RatFunc::constant(X, rat(5)));
}

TEST_CASE("exact chart check: identity map always passes") {
    DiffOp op = radial_operator(rat(3));
    std::vector<MultiPoly> idmap = {v(RHO, "r12"), v(RHO, "r13"), v(RHO, "r23")};
    CheckReport rep = chart_check_exact(op, idmap, RHO, op, 4);
    CHECK(rep.status == CheckStatus::pass);
    CHECK(rep.items.size() == 35);  // monomials of degree <= 4 in 3 vars
}

TEST_CASE("exact chart check: squared coordinate") {
    // u = x^2 turns d^2/dx^2 into 4u d^2/du^2 + 2 d/du
    Chart X = chart_of({"x"});
    Chart U = chart_of({"u"});
    DiffOp dxx(X);
    dxx.add_term({2}, RatFunc::constant(X, rat(1)));
    DiffOp op_u(U);
    op_u.add_term({2}, rat(4) * RatFunc::variable(U, "u"));
    op_u.add_term({1}, RatFunc::constant(U, rat(2)));
    MultiPoly x = v(X, "x");
    CheckReport rep = chart_check_exact(dxx, {x * x}, U, op_u, 6);
    CHECK(rep.status == CheckStatus::pass);

    // a wrong target operator must be flagged with a residual
    DiffOp bad = op_u;
    bad.add_term({1}, RatFunc::constant(U, rat(1)));
    CheckReport repbad = chart_check_exact(dxx, {x * x}, U, bad, 3);
    CHECK(repbad.status == CheckStatus::fail);
    bool have_residual = false;
    for (const auto& it : repbad.items) have_residual = have_residual || !it.residual.empty();
    CHECK(have_residual);
}

TEST_CASE("numeric chart check agrees with the exact one") {
    Chart X = chart_of({"x"});
    Chart U = chart_of({"u"});
    DiffOp dxx(X);
    dxx.add_term({2}, RatFunc::constant(X, rat(1)));
    DiffOp op_u(U);
    op_u.add_term({2}, rat(4) * RatFunc::variable(U, "u"));
    op_u.add_term({1}, RatFunc::constant(U, rat(2)));

    NumericChart nc;
    nc.name = "square";
    nc.u_chart = U;
    nc.map = {[](const std::vector<long double>& x) { return x[0] * x[0]; }};
    nc.in_region = [](const std::vector<double>& x) { return x[0] > 0; };

    CheckReport rep = chart_check_numeric(dxx, nc, op_u, {{0.7}, {1.3}, {2.1}}, 1e-6);
    CHECK(rep.status == CheckStatus::pass);

    CHECK_THROWS_AS(chart_check_numeric(dxx, nc, op_u, {{-1.0}}, 1e-6),
                    std::invalid_argument);

    // identity chart: zero deviation up to roundoff
    NumericChart idc;
    idc.name = "identity";
    idc.u_chart = X;
    idc.map = {[](const std::vector<long double>& x) { return x[0]; }};
    CheckReport repid = chart_check_numeric(dxx, idc, dxx, {{0.5}, {1.0}}, 1e-6);
    CHECK(repid.status == CheckStatus::pass);
}

TEST_CASE("poisson bracket canonical relations") {
    Chart pos = chart_of({"q1", "q2"});
    Chart mom = chart_of({"p1", "p2"});
    Chart dbl = pos;
    dbl.insert(dbl.end(), mom.begin(), mom.end());

    auto mk = [&](const MultiPoly& val) {
        PhaseFunction f;
        f.positions = pos;
        f.momenta = mom;
        f.value = val;
        return f;
    };
    MultiPoly q1 = v(dbl, "q1"), p1 = v(dbl, "p1");
    PhaseFunction a = mk(q1 * p1), b = mk(p1);
    CHECK(poisson_bracket(a, b).value == p1);
    CHECK(poisson_bracket(a, a).value.is_zero());

    std::mt19937 rng(37);
    std::uniform_int_distribution<long> coef(-3, 3);
    auto rnd = [&]() {
        MultiPoly p(dbl);
        for (int t = 0; t < 4; ++t) {
            Exponents e(4, 0);
            e[static_cast<std::size_t>(std::abs(coef(rng))) % 4] = 1;
            e[static_cast<std::size_t>(std::abs(coef(rng) + 1)) % 4] += 1;
            p.add_term(e, rat(coef(rng)));
        }
        return mk(p);
    };
    for (int i = 0; i < 10; ++i) {
        PhaseFunction f = rnd(), g = rnd(), h = rnd();
        CHECK(poisson_bracket(f, g).value == (-poisson_bracket(g, f).value));
        // Leibniz: {f, gh} = {f,g} h + g {f,h}
        PhaseFunction gh = mk(g.value * h.value);
        CHECK(poisson_bracket(f, gh).value ==
              poisson_bracket(f, g).value * h.value + g.value * poisson_bracket(f, h).value);
    }
}

TEST_CASE("classical kinetic observable poisson commutes with its symmetry") {
    Chart pos = RHO;
    Chart mom = chart_of({"p12", "p13", "p23"});
    Chart dbl = pos;
    dbl.insert(dbl.end(), mom.begin(), mom.end());
    MultiPoly r12 = v(dbl, "r12"), r13 = v(dbl, "r13"), r23 = v(dbl, "r23");
    MultiPoly p12 = v(dbl, "p12"), p13 = v(dbl, "p13"), p23 = v(dbl, "p23");

    PhaseFunction T;
    T.positions = pos;
    T.momenta = mom;
    T.value = rat(4) * (r12 * p12 * p12 + r13 * p13 * p13 + r23 * p23 * p23) +
              rat(2) * ((r12 + r13 - r23) * p12 * p13 + (r12 + r23 - r13) * p12 * p23 +
                        (r13 + r23 - r12) * p13 * p23);

    PhaseFunction L;
    L.positions = pos;
    L.momenta = mom;
    L.value = (r13 - r23) * p12 + (r23 - r12) * p13 + (r12 - r13) * p23;

    CHECK(poisson_bracket(T, L).value.is_zero());
}

TEST_CASE("cancellation token aborts a chart check") {
    DiffOp op = radial_operator(rat(3));
    std::vector<MultiPoly> idmap = {v(RHO, "r12"), v(RHO, "r13"), v(RHO, "r23")};
    std::atomic<bool> cancel{true};
    CHECK_THROWS_AS(chart_check_exact(op, idmap, RHO, op, 4, &cancel), std::runtime_error);
}

TEST_CASE("check report serialization") {
    DiffOp op = radial_operator(rat(3));
    std::vector<MultiPoly> idmap = {v(RHO, "r12"), v(RHO, "r13"), v(RHO, "r23")};
    CheckReport rep = chart_check_exact(op, idmap, RHO, op, 2);
    auto j = rep.to_json();
    CHECK(j["check_id"] == "chart_check_exact");
    CHECK(j["status"] == "pass");
    CHECK(j["items"].is_array());
    CHECK(j["items"].size() == rep.items.size());
}

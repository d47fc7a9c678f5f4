#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tba/multipoly.hpp"
#include "tba/ratfunc.hpp"

using namespace tba;

namespace {

const Chart RHO = chart_of({"r12", "r13", "r23"});

MultiPoly v(const Chart& c, const std::string& n) { return MultiPoly::variable(c, n); }

MultiPoly tau1() { return v(RHO, "r12") + v(RHO, "r13") + v(RHO, "r23"); }
MultiPoly tau2() {
    return v(RHO, "r12") * v(RHO, "r13") + v(RHO, "r12") * v(RHO, "r23") +
           v(RHO, "r13") * v(RHO, "r23");
}
MultiPoly tau3() { return v(RHO, "r12") * v(RHO, "r13") * v(RHO, "r23"); }

MultiPoly random_poly(std::mt19937& rng, const Chart& chart, int max_deg, int nterms) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    MultiPoly p(chart);
    for (int t = 0; t < nterms; ++t) {
        Exponents e(chart.size());
        for (auto& x : e) x = static_cast<uint32_t>(deg(rng));
        p.add_term(e, rat(num(rng), den(rng)));
    }
    return p;
}

Rational random_rat(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 7);
    return rat(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational parse and print round trip") {
    CHECK(rational_str(rat(3, 6)) == "1/2");
    CHECK(rational_str(rat(-4, 2)) == "-2");
    CHECK(rational_str(parse_rational("7/3")) == "7/3");
    CHECK(parse_rational("5") == rat(5));
    CHECK(parse_rational("-9/12") == rat(-3, 4));
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
}

TEST_CASE("poly addition builds the elementary symmetric sum") {
    MultiPoly lhs = (v(RHO, "r12") + v(RHO, "r13")) + v(RHO, "r23");
    CHECK(lhs == tau1());
}

TEST_CASE("multiplication by zero annihilates") {
    CHECK((v(RHO, "r12") * MultiPoly::zero(RHO)).is_zero());
}

TEST_CASE("tau1^2 - 4 tau2 evaluates to -3 at the equilateral point") {
    MultiPoly p = tau1() * tau1() - rat(4) * tau2();
    std::vector<Rational> pt{rat(1), rat(1), rat(1)};
    CHECK(p.eval(pt) == rat(-3));
}

TEST_CASE("partial derivatives of symmetric polynomials") {
    CHECK(tau2().partial("r12") == v(RHO, "r13") + v(RHO, "r23"));
    CHECK(tau3().partial("r12") == v(RHO, "r13") * v(RHO, "r23"));
    CHECK(MultiPoly::constant(RHO, rat(7)).partial("r12").is_zero());
    CHECK_THROWS_AS(tau2().partial("bogus"), std::invalid_argument);
}

TEST_CASE("evaluation of symmetric combinations") {
    std::vector<Rational> pt{rat(1), rat(1), rat(1)};
    CHECK(tau1().eval(pt) == rat(3));
    CHECK((rat(4) * tau2() - tau1() * tau1()).eval(pt) == rat(3));
    // det-factor polynomial 6 tau1 (4 tau2 - tau1^2)
    MultiPoly det = rat(6) * tau1() * (rat(4) * tau2() - tau1() * tau1());
    CHECK(det.eval(pt) == rat(54));
    CHECK_THROWS_AS(tau1().eval({rat(1), rat(1)}), std::invalid_argument);
}

TEST_CASE("rational function normalization") {
    MultiPoly x = v(RHO, "r12");
    RatFunc a(x * x, x);
    CHECK(a.num() == x);
    CHECK(a.den() == MultiPoly::constant(RHO, rat(1)));

    RatFunc b(rat(2) * tau1(), MultiPoly::constant(RHO, rat(4)));
    CHECK(b == RatFunc(tau1(), MultiPoly::constant(RHO, rat(2))));

    MultiPoly q = tau1() * tau1() - rat(4) * tau2();
    RatFunc one(q, q);
    CHECK(one.is_constant());
    CHECK(one.constant_value() == rat(1));

    CHECK_THROWS_AS(RatFunc(x, MultiPoly::zero(RHO)), std::invalid_argument);
}

TEST_CASE("normalize is stable under common factors") {
    std::mt19937 rng(11);
    for (int i = 0; i < 40; ++i) {
        MultiPoly a = random_poly(rng, RHO, 2, 3);
        MultiPoly b = random_poly(rng, RHO, 2, 3);
        MultiPoly c = random_poly(rng, RHO, 2, 2);
        if (b.is_zero() || c.is_zero()) continue;
        CHECK(RatFunc(a * c, b * c) == RatFunc(a, b));
    }
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(7);
    std::vector<Chart> charts = {RHO, chart_of({"t1", "t2", "t3"}),
                                 chart_of({"x", "y"})};
    for (const Chart& chart : charts) {
        for (int i = 0; i < 200; ++i) {
            MultiPoly a = random_poly(rng, chart, 3, 4);
            MultiPoly b = random_poly(rng, chart, 3, 4);
            MultiPoly c = random_poly(rng, chart, 3, 4);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
        }
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(23);
    for (int i = 0; i < 60; ++i) {
        MultiPoly a = random_poly(rng, RHO, 3, 4);
        MultiPoly b = random_poly(rng, RHO, 3, 4);
        std::vector<Rational> pt{random_rat(rng), random_rat(rng), random_rat(rng)};
        CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
        CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
    }
}

TEST_CASE("exact division and gcd") {
    std::mt19937 rng(31);
    for (int i = 0; i < 25; ++i) {
        MultiPoly a = random_poly(rng, RHO, 2, 3);
        MultiPoly b = random_poly(rng, RHO, 2, 3);
        if (a.is_zero() || b.is_zero()) continue;
        MultiPoly prod = a * b;
        CHECK(prod.divide_exact(a) == b);
        MultiPoly g = poly_gcd(prod, a);
        // a divides the product, so gcd(prod, a) is a times a constant
        CHECK(a.divide_exact(g).is_constant());
    }
    MultiPoly x = v(RHO, "r12"), y = v(RHO, "r13");
    CHECK(poly_gcd(x * x - y * y, x * x + rat(2) * x * y + y * y) == x + y);
    CHECK_THROWS_AS((x * x + y).divide_exact(x + y), std::invalid_argument);
}

TEST_CASE("rational function field axioms on random inputs") {
    std::mt19937 rng(41);
    for (int i = 0; i < 25; ++i) {
        MultiPoly pa = random_poly(rng, RHO, 2, 3);
        MultiPoly pb = random_poly(rng, RHO, 2, 3);
        MultiPoly pc = random_poly(rng, RHO, 2, 2);
        if (pb.is_zero() || pc.is_zero()) continue;
        RatFunc a(pa, pb), b(pc, pb), c(pb, pc);
        CHECK(a + b == b + a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("ratfunc derivative quotient rule") {
    MultiPoly x = v(RHO, "r12"), y = v(RHO, "r13");
    RatFunc f(x * x, y);
    RatFunc fx = f.partial("r12");
    CHECK(fx == RatFunc(rat(2) * x, y));
    RatFunc fy = f.partial("r13");
    CHECK(fy == RatFunc(-(x * x), y * y));
}

TEST_CASE("json round trip for polynomials and rational functions") {
    MultiPoly p = rat(6) * tau1() * (rat(4) * tau2() - tau1() * tau1());
    MultiPoly q = MultiPoly::from_json(p.to_json());
    CHECK(p == q);
    auto j = p.to_json();
    CHECK(j["chart"].size() == 3);
    for (const auto& t : j["terms"]) CHECK(t["coeff"].is_string());

    RatFunc f(tau3(), rat(4) * tau2() - tau1() * tau1());
    CHECK(RatFunc::from_json(f.to_json()) == f);
}

TEST_CASE("substitution composes evaluation") {
    Chart TAU = chart_of({"t1", "t2", "t3"});
    MultiPoly expr = v(TAU, "t1") * v(TAU, "t2") - v(TAU, "t3");
    MultiPoly composed = expr.substitute({tau1(), tau2(), tau3()});
    std::mt19937 rng(53);
    for (int i = 0; i < 20; ++i) {
        std::vector<Rational> pt{random_rat(rng), random_rat(rng), random_rat(rng)};
        std::vector<Rational> taupt{tau1().eval(pt), tau2().eval(pt), tau3().eval(pt)};
        CHECK(composed.eval(pt) == expr.eval(taupt));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <complex>
#include <random>

#include "tba/models.hpp"
#include "tba/spectra.hpp"

using namespace tba;

namespace {

Rational rand_pos_rational(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(1, 9);
    std::uniform_int_distribution<long> den(1, 7);
    return rat(num(rng), den(rng));
}

// multiset inclusion of exact eigenvalue lists
bool sub_multiset(std::vector<Rational> small, std::vector<Rational> big) {
    for (const Rational& x : small) {
        auto it = std::find(big.begin(), big.end(), x);
        if (it == big.end()) return false;
        big.erase(it);
    }
    return true;
}

bool sub_multiset_numeric(const std::vector<EigenPair>& small, std::vector<EigenPair> big,
                          double tol) {
    for (const EigenPair& x : small) {
        auto it = std::find_if(big.begin(), big.end(), [&](const EigenPair& y) {
            return std::abs(y.value - x.value) <= tol;
        });
        if (it == big.end()) return false;
        big.erase(it);
    }
    return true;
}

}  // namespace

TEST_CASE("basis enumeration and ordering") {
    PolySpace p123 = basis(chart_tau(), {1, 2, 3}, 3);
    CHECK(p123.dim() == 7);
    PolySpace p111 = basis(chart_rho(), {1, 1, 1}, 2);
    CHECK(p111.dim() == 10);
    PolySpace p1 = basis(chart_tau1(), {1}, 4);
    CHECK(p1.dim() == 5);
    // weight-graded, lex within a grade
    for (std::size_t i = 1; i < p123.dim(); ++i) {
        long wp = p123.weight(p123.basis[i - 1]), wc = p123.weight(p123.basis[i]);
        CHECK(wp <= wc);
        if (wp == wc) CHECK(p123.basis[i - 1] < p123.basis[i]);
    }
    CHECK(p123.basis.front() == Exponents{0, 0, 0});
    CHECK_THROWS_AS(basis(chart_tau(), {1, 0, 3}, 2), std::invalid_argument);
    CHECK_THROWS_AS(basis(chart_tau(), {1, 2, 3}, -1), std::invalid_argument);
    CHECK_THROWS_AS(basis(chart_tau(), {1, 2}, 2), std::invalid_argument);
}

TEST_CASE("invariance holds at the operator's own level and fails above it") {
    ModelParams P;
    P.gamma = rat(1, 2);
    P.omega = 1;
    P.A = rat(1, 10);
    P.N = 2;
    DiffOp h = operator_of("hQES_rho", P);
    CHECK(invariance_check(h, basis(chart_rho(), {1, 1, 1}, 2)).status == CheckStatus::pass);
    CheckReport above = invariance_check(h, basis(chart_rho(), {1, 1, 1}, 3));
    CHECK(above.status == CheckStatus::fail);
    bool witnessed = false;
    for (const auto& it : above.items)
        if (!it.pass && it.residual.find("out-of-space") != std::string::npos) witnessed = true;
    CHECK(witnessed);
    CHECK_THROWS_AS(matrix_of(h, basis(chart_rho(), {1, 1, 1}, 3)), std::runtime_error);

    // rational coefficients produce a reported failure, not an exception
    DiffOp db = operator_of("DeltaPrime_b", P);
    CheckReport constants = reducibility_check(db, {}, 0);
    CHECK(constants.status == CheckStatus::pass);
    CheckReport p1 = invariance_check(db, basis(chart_r(), {1, 1, 1}, 1));
    CHECK(p1.status == CheckStatus::fail);
    CHECK(reducibility_check(operator_of("DeltaPrime_a", P), {}, 0).status == CheckStatus::pass);
}

TEST_CASE("pinned exact spectra") {
    ModelParams P;
    P.omega = 1;
    P.gamma = 0;

    DiffOp tau1 = operator_of("hES_tau1", P);
    OperatorMatrix m1 = matrix_of(tau1, basis(chart_tau1(), {1}, 3));
    CHECK(m1.gradedTriangular);
    std::vector<Rational> want1 = {Rational(0), Rational(12), Rational(24), Rational(36)};
    CHECK(eigen_exact(m1, model_shift("hES_tau1", P)) == want1);

    ModelParams Q;
    Q.d = 3;
    Q.gammaTilde = 0;
    Q.omega = 1;
    OperatorMatrix mp = matrix_of(operator_of("hExact_pst", Q), basis(chart_pst(), {1, 2, 3}, 2));
    CHECK(mp.gradedTriangular);
    std::vector<Rational> wantp = {Rational(18), Rational(30), Rational(42), Rational(42)};
    CHECK(eigen_exact(mp, model_shift("hExact_pst", Q)) == wantp);

    OperatorMatrix mr = matrix_of(operator_of("hES_rho", P), basis(chart_rho(), {1, 1, 1}, 1));
    std::vector<Rational> wantr = {Rational(12), Rational(24), Rational(24), Rational(24)};
    CHECK(eigen_exact(mr, model_shift("hES_rho", P)) == wantr);

    // 1x1 matrix (c) -> {c} under the default shift
    OperatorMatrix one;
    one.space = basis(chart_tau1(), {1}, 0);
    one.entries = {{rat(7, 3)}};
    one.gradedTriangular = true;
    CHECK(eigen_exact(one) == std::vector<Rational>{rat(7, 3)});

    OperatorMatrix zero = matrix_of(DiffOp::zero(chart_tau1()), basis(chart_tau1(), {1}, 2));
    for (const auto& row : zero.entries)
        for (const auto& e : row) CHECK(e == 0);
}

TEST_CASE("exactly solvable family: exact diagonal equals the closed form") {
    std::mt19937 rng(42);
    struct Case {
        const char* id;
        const Chart& chart;
        std::vector<long> weights;
    };
    std::vector<Case> cases = {{"hES_rho", chart_rho(), {1, 1, 1}},
                               {"hES_tau", chart_tau(), {1, 2, 3}},
                               {"hExact_pst", chart_pst(), {1, 2, 3}},
                               {"hExact_pst_d1", chart_pt(), {1, 3}},
                               {"hES_tau1", chart_tau1(), {1}}};
    for (int draw = 0; draw < 3; ++draw) {
        ModelParams P;
        P.gamma = rand_pos_rational(rng);
        P.gammaTilde = rand_pos_rational(rng);
        P.omega = rand_pos_rational(rng);
        P.d = rand_pos_rational(rng) + 1;
        for (const Case& c : cases) {
            for (long N = 0; N <= 5; ++N) {
                OperatorMatrix m = matrix_of(operator_of(c.id, P), basis(c.chart, c.weights, N));
                INFO(c.id, " N=", N);
                CHECK(m.gradedTriangular);
                CHECK(eigen_exact(m, model_shift(c.id, P)) == closed_form_spectrum(c.id, P, N));
            }
        }
    }
}

TEST_CASE("closed form pins") {
    ModelParams P;
    P.omega = 1;
    P.gamma = 0;
    std::vector<Rational> d1 = closed_form_spectrum("hExact_pst_d1", P, 3);
    std::vector<Rational> want = {Rational(6), Rational(18), Rational(30), Rational(42),
                                  Rational(42)};
    CHECK(d1 == want);
    std::vector<Rational> lag = closed_form_spectrum("hES_tau1", P, 2);
    CHECK(lag == std::vector<Rational>{Rational(0), Rational(12), Rational(24)});
    CHECK(closed_form_spectrum("hES_rho", P, 1) ==
          std::vector<Rational>{Rational(12), Rational(24), Rational(24), Rational(24)});
    CHECK_THROWS_AS(closed_form_spectrum("DeltaR_rho", P, 2), std::invalid_argument);
}

TEST_CASE("numeric eigensolver basics") {
    OperatorMatrix diag;
    diag.space = basis(chart_tau(), {1, 2, 3}, 1);  // dim 2
    diag.entries = {{rat(3, 2), Rational(0)}, {Rational(0), rat(-5, 4)}};
    diag.gradedTriangular = true;
    std::vector<EigenPair> ev = eigen_numeric(diag);
    REQUIRE(ev.size() == 2);
    CHECK(std::abs(ev[0].value - std::complex<double>(-1.25, 0)) < 1e-14);
    CHECK(std::abs(ev[1].value - std::complex<double>(1.5, 0)) < 1e-14);
    for (const auto& p : ev) CHECK(p.residual < 1e-14);

    OperatorMatrix flip;
    flip.space = diag.space;
    flip.entries = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
    flip.gradedTriangular = false;
    CHECK_THROWS_AS(eigen_exact(flip), std::invalid_argument);
    std::vector<EigenPair> fv = eigen_numeric(flip);
    CHECK(std::abs(fv[0].value - std::complex<double>(-1, 0)) < 1e-12);
    CHECK(std::abs(fv[1].value - std::complex<double>(1, 0)) < 1e-12);
}

TEST_CASE("quasi-exactly solvable spectra are real and nest under restriction") {
    std::mt19937 rng(7);
    for (int draw = 0; draw < 2; ++draw) {
        ModelParams P;
        P.gamma = rand_pos_rational(rng);
        P.omega = rand_pos_rational(rng);
        P.A = rand_pos_rational(rng);
        P.N = 3;
        OperatorMatrix mtau = matrix_of(operator_of("hQES_tau", P), basis(chart_tau(), {1, 2, 3}, 3));
        CHECK(!mtau.gradedTriangular);  // raising block acts below the top level
        std::vector<EigenPair> etau = eigen_numeric(mtau);
        for (const auto& p : etau) {
            CHECK(std::abs(p.value.imag()) < 1e-10);
            CHECK(p.residual < 1e-10);
        }
        OperatorMatrix m12 = matrix_of(operator_of("hQES_tau12", P), basis(chart_tau12(), {1, 2}, 3));
        OperatorMatrix m1 = matrix_of(operator_of("hQES_tau1", P), basis(chart_tau1(), {1}, 3));
        std::vector<EigenPair> e12 = eigen_numeric(m12);
        std::vector<EigenPair> e1 = eigen_numeric(m1);
        CHECK(sub_multiset_numeric(e1, e12, 1e-9));
        CHECK(sub_multiset_numeric(e12, etau, 1e-9));
    }

    // the A=0 restriction chain nests exactly
    ModelParams E;
    E.gamma = rat(1, 3);
    E.omega = rat(2, 5);
    std::vector<Rational> s3 =
        eigen_exact(matrix_of(operator_of("hES_tau", E), basis(chart_tau(), {1, 2, 3}, 4)));
    std::vector<Rational> s2 =
        eigen_exact(matrix_of(operator_of("hES_tau12", E), basis(chart_tau12(), {1, 2}, 4)));
    std::vector<Rational> s1 =
        eigen_exact(matrix_of(operator_of("hES_tau1", E), basis(chart_tau1(), {1}, 4)));
    CHECK(sub_multiset(s1, s2));
    CHECK(sub_multiset(s2, s3));
}

TEST_CASE("one-variable radial reductions match the induced submatrices") {
    ModelParams P;
    P.d = rat(7, 2);
    P.gammaTilde = rat(1, 4);
    P.omega = rat(3, 2);
    P.A = rat(1, 5);
    P.N = 3;
    struct Pair {
        const char* full, *reduced;
        const Chart& chart;
        std::vector<long> weights;
    };
    std::vector<Pair> pairs = {{"hQES_pst", "hQES_pst_rr", chart_pst(), {1, 2, 3}},
                               {"hQES_pst_d1", "hQES_pst_d1_r", chart_pt(), {1, 3}}};
    for (const Pair& pr : pairs) {
        DiffOp full = operator_of(pr.full, P);
        CHECK(reducibility_check(full, {1}, P.N).status == CheckStatus::pass);
        PolySpace big = basis(pr.chart, pr.weights, P.N);
        OperatorMatrix mfull = matrix_of(full, big);
        OperatorMatrix mred = matrix_of(operator_of(pr.reduced, P), basis(chart_p(), {1}, P.N));
        // indices of the P-power monomials inside the big basis
        std::vector<std::size_t> sel;
        for (std::size_t i = 0; i < big.dim(); ++i) {
            bool ponly = true;
            for (std::size_t k = 1; k < big.basis[i].size(); ++k)
                if (big.basis[i][k] > 0) ponly = false;
            if (ponly) sel.push_back(i);
        }
        REQUIRE(sel.size() == mred.space.dim());
        for (std::size_t a = 0; a < sel.size(); ++a)
            for (std::size_t b = 0; b < sel.size(); ++b)
                CHECK(mfull.entries[sel[a]][sel[b]] == mred.entries[a][b]);
    }
}

TEST_CASE("reducibility of the tau-chart operators") {
    ModelParams P;
    P.gamma = rat(1, 2);
    P.omega = 1;
    P.A = rat(1, 10);
    P.N = 3;
    DiffOp h = operator_of("hQES_tau", P);
    CHECK(reducibility_check(h, {1, 2}, 3).status == CheckStatus::pass);
    CHECK(reducibility_check(h, {1}, 3).status == CheckStatus::pass);
    CHECK(reducibility_check(operator_of("hExact_pst_d1", P), {1}, 3).status == CheckStatus::pass);
    // the raising block of an operator built at N = 3 escapes a level-2 space
    CheckReport esc = reducibility_check(h, {1}, 2);
    CHECK(esc.status == CheckStatus::fail);
}

TEST_CASE("spectrum table export") {
    std::vector<Rational> vals = {Rational(12), Rational(24), Rational(24), Rational(24)};
    std::vector<SpectrumRow> rows = spectrum_rows(vals);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].eigenvalue == "12");
    CHECK(rows[0].multiplicity == 1);
    CHECK(rows[1].eigenvalue == "24");
    CHECK(rows[1].multiplicity == 3);
    std::string csv = spectrum_csv(rows);
    CHECK(csv.find("level,eigenvalue,multiplicity,residual") == 0);
    CHECK(csv.find("1,24,3,") != std::string::npos);

    std::vector<EigenPair> pairs = {{{24.0000000001, 0}, 1e-12},
                                    {{24, 0}, 2e-12},
                                    {{12, 0}, 1e-13}};
    std::vector<SpectrumRow> nrows = spectrum_rows(pairs, 1e-8);
    REQUIRE(nrows.size() == 2);
    CHECK(nrows[1].multiplicity == 2);
    CHECK(nrows[1].residual == doctest::Approx(2e-12));

    ModelParams P;
    nlohmann::json j = spectrum_json("hES_rho", "exact", model_shift("hES_rho", P), rows);
    CHECK(j["model"] == "hES_rho");
    CHECK(j["rows"].size() == 2);
    CHECK(j["offset"] == "12");
}

#include "tba/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tba {

namespace {

Exponents dvars(const Chart& ch, std::initializer_list<const char*> vars) {
    Exponents e(ch.size(), 0);
    for (const char* v : vars) {
        auto it = std::find(ch.begin(), ch.end(), std::string(v));
        if (it == ch.end())
            throw std::logic_error(std::string("variable not in chart: ") + v);
        e[static_cast<std::size_t>(it - ch.begin())] += 1;
    }
    return e;
}

void term(DiffOp& op, const RatFunc& c, std::initializer_list<const char*> vars) {
    op.add_term(dvars(op.chart(), vars), c);
}

void term(DiffOp& op, const Rational& c, std::initializer_list<const char*> vars) {
    term(op, RatFunc::constant(op.chart(), c), vars);
}

RatFunc v(const Chart& ch, const char* n) { return RatFunc::variable(ch, n); }
RatFunc c(const Chart& ch, const Rational& q) { return RatFunc::constant(ch, q); }
MultiPoly pv(const Chart& ch, const char* n) { return MultiPoly::variable(ch, n); }
MultiPoly pc(const Chart& ch, const Rational& q) { return MultiPoly::constant(ch, q); }

// elementary symmetric polynomials of the rho-like charts
MultiPoly e1_of(const Chart& ch, const char* a, const char* b, const char* cc) {
    return pv(ch, a) + pv(ch, b) + pv(ch, cc);
}
MultiPoly e2_of(const Chart& ch, const char* a, const char* b, const char* cc) {
    return pv(ch, a) * pv(ch, b) + pv(ch, a) * pv(ch, cc) + pv(ch, b) * pv(ch, cc);
}
MultiPoly e3_of(const Chart& ch, const char* a, const char* b, const char* cc) {
    return pv(ch, a) * pv(ch, b) * pv(ch, cc);
}

long integer_k(const ModelParams& mp) {
    if (mp.k.get_den() != 1 || mp.k < 1)
        throw std::invalid_argument("this construction needs a positive integer k");
    return mp.k.get_num().get_si();
}

// ---------------------------------------------------------------- operators

DiffOp op_DeltaR_r(const Rational& d) {
    const Chart& ch = chart_r();
    DiffOp op(ch);
    const char* names[3] = {"r12", "r13", "r23"};
    for (const char* n : names) {
        term(op, Rational(1), {n, n});
        term(op, c(ch, d - 1) / v(ch, n), {n});
    }
    RatFunc a = v(ch, "r12"), b = v(ch, "r13"), cc = v(ch, "r23");
    term(op, (a * a - b * b + cc * cc) / (a * cc) * Rational(1, 2), {"r12", "r23"});
    term(op, (a * a + b * b - cc * cc) / (a * b) * Rational(1, 2), {"r12", "r13"});
    term(op, (b * b + cc * cc - a * a) / (b * cc) * Rational(1, 2), {"r13", "r23"});
    return op;
}

DiffOp op_DtildeAngular_d2() {
    const Chart& ch = chart_rtheta();
    DiffOp op(ch);
    RatFunc a = v(ch, "r12"), b = v(ch, "r13"), cc = v(ch, "r23"), s = v(ch, "Strg");
    RatFunc den = (a * a) * (b * b) * (cc * cc);
    term(op, Rational(-12) * s * a.pow(3) / den, {"r12", "theta"});
    term(op, Rational(-12) * s * b.pow(3) / den, {"r13", "theta"});
    term(op, Rational(-12) * s * cc.pow(3) / den, {"r23", "theta"});
    term(op, Rational(12) * (a.pow(4) + b.pow(4) + cc.pow(4)) / den, {"theta", "theta"});
    return op;
}

DiffOp op_DeltaR_rho(const Rational& d) {
    const Chart& ch = chart_rho();
    DiffOp op(ch);
    RatFunc a = v(ch, "rho12"), b = v(ch, "rho13"), cc = v(ch, "rho23");
    term(op, Rational(4) * a, {"rho12", "rho12"});
    term(op, Rational(4) * b, {"rho13", "rho13"});
    term(op, Rational(4) * cc, {"rho23", "rho23"});
    term(op, Rational(2) * (a + b - cc), {"rho12", "rho13"});
    term(op, Rational(2) * (a + cc - b), {"rho12", "rho23"});
    term(op, Rational(2) * (b + cc - a), {"rho13", "rho23"});
    for (const char* n : {"rho12", "rho13", "rho23"}) term(op, 2 * d, {n});
    return op;
}

DiffOp op_DeltaLB_rho() {
    const Chart& ch = chart_rho();
    DiffOp op = op_DeltaR_rho(0);  // second-order part only, then fix first order
    RatFunc t1 = v(ch, "rho12") + v(ch, "rho13") + v(ch, "rho23");
    for (const char* n : {"rho12", "rho13", "rho23"})
        term(op, c(ch, 4) - Rational(3) * v(ch, n) / t1, {n});
    return op;
}

DiffOp op_L1_rho() {
    const Chart& ch = chart_rho();
    DiffOp op(ch);
    RatFunc a = v(ch, "rho12"), b = v(ch, "rho13"), cc = v(ch, "rho23");
    term(op, b - cc, {"rho12"});
    term(op, cc - a, {"rho13"});
    term(op, a - b, {"rho23"});
    return op;
}

DiffOp op_DeltaR_tau(const Rational& d) {
    const Chart& ch = chart_tau();
    DiffOp op(ch);
    RatFunc t1 = v(ch, "tau1"), t2 = v(ch, "tau2"), t3 = v(ch, "tau3");
    term(op, Rational(6) * t1, {"tau1", "tau1"});
    term(op, Rational(2) * t1 * (Rational(7) * t2 - t1 * t1), {"tau2", "tau2"});
    term(op, Rational(2) * t3 * (Rational(6) * t2 - t1 * t1), {"tau3", "tau3"});
    term(op, Rational(24) * t2, {"tau1", "tau2"});
    term(op, Rational(36) * t3, {"tau1", "tau3"});
    term(op, Rational(2) * (Rational(9) * t3 * t1 + t2 * (Rational(4) * t2 - t1 * t1)),
         {"tau2", "tau3"});
    term(op, c(ch, 6 * d), {"tau1"});
    term(op, 2 * (2 * d + 1) * t1, {"tau2"});
    term(op, Rational(2) * ((d + 4) * t2 - t1 * t1), {"tau3"});
    return op;
}

DiffOp op_L1sq_tau() {
    const Chart& ch = chart_tau();
    DiffOp op(ch);
    RatFunc t1 = v(ch, "tau1"), t2 = v(ch, "tau2"), t3 = v(ch, "tau3");
    term(op,
         Rational(27) * t3 * t3 - Rational(18) * t3 * t2 * t1 + Rational(4) * t3 * t1.pow(3) +
             Rational(4) * t2.pow(3) - t2 * t2 * t1 * t1,
         {"tau3", "tau3"});
    term(op, Rational(27) * t3 - Rational(9) * t1 * t2 + Rational(2) * t1.pow(3), {"tau3"});
    return op;
}

DiffOp op_DeltaR_pst(const Rational& d) {
    const Chart& ch = chart_pst();
    DiffOp op(ch);
    RatFunc P = v(ch, "P"), S = v(ch, "S"), T = v(ch, "T");
    term(op, Rational(6) * P, {"P", "P"});
    term(op, Rational(1, 2) * P * S, {"S", "S"});
    term(op, T * (Rational(48) * S + P * P), {"T", "T"});
    term(op, Rational(36) * T, {"P", "T"});
    term(op, Rational(24) * S, {"P", "S"});
    term(op, Rational(2) * S * (Rational(16) * S + P * P), {"S", "T"});
    term(op, c(ch, 6 * d), {"P"});
    term(op, Rational(1, 4) * (d - 1) * P, {"S"});
    term(op, 8 * (d + 4) * S + (d / 2) * P * P, {"T"});
    return op;
}

DiffOp op_DeltaR_pst_d1() {
    const Chart& ch = chart_pt();
    DiffOp op(ch);
    RatFunc P = v(ch, "P"), T = v(ch, "T");
    term(op, Rational(6) * P, {"P", "P"});
    term(op, T * P * P, {"T", "T"});
    term(op, Rational(36) * T, {"P", "T"});
    term(op, Rational(6), {"P"});
    term(op, Rational(1, 2) * P * P, {"T"});
    return op;
}

DiffOp op_DeltaR_rhoS(const Rational& d) {
    const Chart& ch = chart_rhoS();
    DiffOp op(ch);
    RatFunc a = v(ch, "rho12"), b = v(ch, "rho13"), s = v(ch, "S"), cc = v(ch, "rho23");
    RatFunc t1 = a + b + cc;
    term(op, Rational(4) * a, {"rho12", "rho12"});
    term(op, Rational(4) * b, {"rho13", "rho13"});
    term(op, Rational(1, 2) * s * t1, {"S", "S"});
    term(op, Rational(2) * (a + b - cc), {"rho12", "rho13"});
    term(op, Rational(8) * s, {"rho12", "S"});
    term(op, Rational(8) * s, {"rho13", "S"});
    term(op, 2 * d, {"rho12"});
    term(op, 2 * d, {"rho13"});
    term(op, Rational(1, 4) * (d - 1) * t1, {"S"});
    return op;
}

DiffOp op_DeltaR_rhoS_d1() {
    // d = 1, S = 0 degeneration; rho23 stays passive in the coefficient.
    const Chart& ch = chart_rho();
    DiffOp op(ch);
    RatFunc a = v(ch, "rho12"), b = v(ch, "rho13"), cc = v(ch, "rho23");
    term(op, Rational(4) * a, {"rho12", "rho12"});
    term(op, Rational(4) * b, {"rho13", "rho13"});
    term(op, Rational(2) * (a + b - cc), {"rho12", "rho13"});
    term(op, Rational(2), {"rho12"});
    term(op, Rational(2), {"rho13"});
    return op;
}

// Gauge-rotated oscillator-type operator in the rho chart. The published
// sign of the A-block is an erratum; `derived` selects the corrected sign.
DiffOp op_hQES_rho(const Rational& gamma, const Rational& omega, const Rational& A, long N,
                   bool derived) {
    const Chart& ch = chart_rho();
    DiffOp op(ch);
    RatFunc a = v(ch, "rho12"), b = v(ch, "rho13"), cc = v(ch, "rho23");
    RatFunc t1 = a + b + cc;
    term(op, Rational(-4) * a, {"rho12", "rho12"});
    term(op, Rational(-4) * b, {"rho13", "rho13"});
    term(op, Rational(-4) * cc, {"rho23", "rho23"});
    term(op, Rational(-2) * (a + b - cc), {"rho12", "rho13"});
    term(op, Rational(-2) * (a + cc - b), {"rho12", "rho23"});
    term(op, Rational(-2) * (b + cc - a), {"rho13", "rho23"});
    Rational sgn = derived ? Rational(1) : Rational(-1);
    RatFunc euler[3] = {a, b, cc};
    const char* names[3] = {"rho12", "rho13", "rho23"};
    for (int i = 0; i < 3; ++i) {
        RatFunc co = c(ch, -4 * (1 + gamma)) + 12 * omega * euler[i] + sgn * 12 * A * t1 * euler[i];
        term(op, co, {names[i]});
    }
    op = op + DiffOp::scalar(sgn * (-12) * A * Rational(N) * t1);
    return op;
}

void add_tau_euler(DiffOp& op, const RatFunc& factor, long N) {
    const Chart& ch = op.chart();
    term(op, factor * v(ch, "tau1"), {"tau1"});
    term(op, factor * Rational(2) * v(ch, "tau2"), {"tau2"});
    if (std::find(ch.begin(), ch.end(), "tau3") != ch.end())
        term(op, factor * Rational(3) * v(ch, "tau3"), {"tau3"});
    op = op + DiffOp::scalar(factor * Rational(-N));
}

DiffOp op_hQES_tau(const Rational& gamma, const Rational& omega, const Rational& A, long N,
                   bool derived) {
    const Chart& ch = chart_tau();
    DiffOp op(ch);
    RatFunc t1 = v(ch, "tau1"), t2 = v(ch, "tau2"), t3 = v(ch, "tau3");
    term(op, Rational(-6) * t1, {"tau1", "tau1"});
    term(op, Rational(-2) * t1 * (Rational(7) * t2 - t1 * t1), {"tau2", "tau2"});
    term(op, Rational(-2) * t3 * (Rational(6) * t2 - t1 * t1), {"tau3", "tau3"});
    term(op, Rational(-24) * t2, {"tau1", "tau2"});
    term(op, Rational(-36) * t3, {"tau1", "tau3"});
    term(op, Rational(-2) * (Rational(4) * t2 * t2 + Rational(9) * t1 * t3 - t1 * t1 * t2),
         {"tau2", "tau3"});
    if (derived) {
        term(op, Rational(-2) * t1, {"tau2"});
        term(op, Rational(-2) * (Rational(4) * t2 - t1 * t1), {"tau3"});
    } else {
        term(op, Rational(-18), {"tau1"});
        term(op, Rational(-14) * t1, {"tau2"});
        term(op, Rational(-2) * (Rational(7) * t2 - t1 * t1), {"tau3"});
    }
    Rational g4 = -4 * (1 + gamma);
    term(op, 3 * g4, {"tau1"});
    term(op, 2 * g4 * t1, {"tau2"});
    term(op, g4 * t2, {"tau3"});
    add_tau_euler(op, c(ch, 12 * omega), 0);
    add_tau_euler(op, 12 * A * t1, N);
    return op;
}

DiffOp op_hQES_tau12(const Rational& gamma, const Rational& omega, const Rational& A, long N,
                     bool derived) {
    const Chart& ch = chart_tau12();
    DiffOp op(ch);
    RatFunc t1 = v(ch, "tau1"), t2 = v(ch, "tau2");
    term(op, Rational(-6) * t1, {"tau1", "tau1"});
    term(op, Rational(-2) * t1 * (Rational(7) * t2 - t1 * t1), {"tau2", "tau2"});
    term(op, Rational(-24) * t2, {"tau1", "tau2"});
    Rational c1 = derived ? -6 * (2 + 2 * gamma) : -6 * (5 + 2 * gamma);
    Rational c2 = derived ? -2 * (5 + 4 * gamma) : -2 * (11 + 4 * gamma);
    term(op, c1, {"tau1"});
    term(op, c2 * t1, {"tau2"});
    add_tau_euler(op, c(ch, 12 * omega), 0);
    add_tau_euler(op, 12 * A * t1, N);
    return op;
}

DiffOp op_hQES_tau1(const Rational& gamma, const Rational& omega, const Rational& A, long N,
                    bool derived) {
    const Chart& ch = chart_tau1();
    DiffOp op(ch);
    RatFunc t1 = v(ch, "tau1");
    Rational off = derived ? Rational(2) : Rational(5);
    term(op, Rational(-6) * t1, {"tau1", "tau1"});
    term(op, Rational(6) * (2 * A * t1 * t1 + 2 * omega * t1 - c(ch, off + 2 * gamma)), {"tau1"});
    op = op + DiffOp::scalar(Rational(-12) * A * Rational(N) * t1);
    return op;
}

DiffOp op_hExact_pst(const Rational& d, const Rational& gT, const Rational& omega) {
    const Chart& ch = chart_pst();
    DiffOp op(ch);
    RatFunc P = v(ch, "P"), S = v(ch, "S"), T = v(ch, "T");
    term(op, Rational(6) * P, {"P", "P"});
    term(op, Rational(1, 2) * P * S, {"S", "S"});
    term(op, T * (Rational(48) * S + P * P), {"T", "T"});
    term(op, Rational(36) * T, {"P", "T"});
    term(op, Rational(24) * S, {"P", "S"});
    term(op, Rational(2) * S * (Rational(16) * S + P * P), {"S", "T"});
    term(op, -12 * omega * P + c(ch, 6 * (d + 4 * gT)), {"P"});
    term(op, -24 * omega * S + Rational(1, 4) * (d - 1 + 4 * gT) * P, {"S"});
    term(op,
         -36 * omega * T + Rational(1, 2) * (16 * (d + 4 + 4 * gT) * S + (d + 4 * gT) * P * P),
         {"T"});
    return op;
}

DiffOp op_hExact_pst_r(const Rational& d, const Rational& gT, const Rational& omega) {
    const Chart& ch = chart_ps();
    DiffOp op(ch);
    RatFunc P = v(ch, "P"), S = v(ch, "S");
    term(op, Rational(6) * P, {"P", "P"});
    term(op, Rational(1, 2) * P * S, {"S", "S"});
    term(op, Rational(24) * S, {"P", "S"});
    term(op, -12 * omega * P + c(ch, 6 * (d + 4 * gT)), {"P"});
    term(op, -24 * omega * S + Rational(1, 4) * (d - 1 + 4 * gT) * P, {"S"});
    return op;
}

DiffOp op_hExact_pst_rr(const Rational& d, const Rational& gT, const Rational& omega) {
    const Chart& ch = chart_p();
    DiffOp op(ch);
    RatFunc P = v(ch, "P");
    term(op, Rational(6) * P, {"P", "P"});
    term(op, -12 * omega * P + c(ch, 6 * (d + 4 * gT)), {"P"});
    return op;
}

DiffOp op_hExact_pst_d1(const Rational& omega) {
    const Chart& ch = chart_pt();
    DiffOp op(ch);
    RatFunc P = v(ch, "P"), T = v(ch, "T");
    term(op, Rational(6) * P, {"P", "P"});
    term(op, T * P * P, {"T", "T"});
    term(op, Rational(36) * T, {"P", "T"});
    term(op, -12 * omega * P + c(ch, 6), {"P"});
    term(op, -36 * omega * T + Rational(1, 2) * P * P, {"T"});
    return op;
}

DiffOp op_hExact_d1_r(const Rational& omega) {
    const Chart& ch = chart_p();
    DiffOp op(ch);
    RatFunc P = v(ch, "P");
    term(op, Rational(6) * P, {"P", "P"});
    term(op, -12 * omega * P + c(ch, 6), {"P"});
    return op;
}

// -12 A P (Euler - N) with the Euler operator weighted per chart variable.
DiffOp qes_block(const Chart& ch, const Rational& A, long N,
                 std::initializer_list<std::pair<const char*, int>> weights) {
    DiffOp blk(ch);
    RatFunc P = v(ch, "P");
    for (auto [name, w] : weights) term(blk, Rational(-12) * A * Rational(w) * P * v(ch, name), {name});
    blk = blk + DiffOp::scalar(Rational(12) * A * Rational(N) * P);
    return blk;
}

DiffOp op_DeltaPrime_a(const Rational& d, const Rational& gamma, const Rational& omega) {
    const Chart& ch = chart_r();
    DiffOp op(ch);
    RatFunc a = v(ch, "r12"), b = v(ch, "r13"), cc = v(ch, "r23");
    for (const char* n : {"r12", "r13", "r23"}) term(op, Rational(2), {n, n});
    term(op, (a * a - b * b + cc * cc) / (a * cc), {"r12", "r23"});
    term(op, (a * a + b * b - cc * cc) / (a * b), {"r12", "r13"});
    term(op, (b * b + cc * cc - a * a) / (b * cc), {"r13", "r23"});
    auto first = [&](const RatFunc& x, const RatFunc& y, const RatFunc& z) {
        RatFunc y2 = y * y, z2 = z * z, x2 = x * x;
        RatFunc num = 2 * (d - 1) * y2 * z2 +
                      gamma * (Rational(6) * y2 * z2 + x2 * (y2 + z2) - y2 * y2 - z2 * z2) -
                      6 * omega * x2 * y2 * z2;
        return num / (x * y2 * z2);
    };
    term(op, first(a, b, cc), {"r12"});
    term(op, first(b, a, cc), {"r13"});
    term(op, first(cc, b, a), {"r23"});
    return op;
}

DiffOp op_DeltaPrime_b(const Rational& d, const Rational& gamma, const Rational& omega) {
    const Chart& ch = chart_r();
    DiffOp op(ch);
    RatFunc a = v(ch, "r12"), b = v(ch, "r13"), cc = v(ch, "r23");
    for (const char* n : {"r12", "r13", "r23"}) term(op, Rational(2), {n, n});
    term(op, (a * a - b * b + cc * cc) / (a * cc), {"r12", "r23"});
    term(op, (a * a + b * b - cc * cc) / (a * b), {"r12", "r13"});
    term(op, (b * b + cc * cc - a * a) / (b * cc), {"r13", "r23"});
    RatFunc prod = a * b * cc;
    auto first = [&](const RatFunc& x, const RatFunc& y, const RatFunc& z) {
        RatFunc yz = y + z;
        RatFunc num = Rational(8) * prod * yz + x.pow(4) + yz.pow(4) -
                      Rational(5) * y * z * (x * x + yz * yz) - Rational(2) * x * x * yz * yz;
        RatFunc co = gamma * num / (prod * (x - y) * (x - z)) - c(ch, 2 * (d - 1)) / x +
                     6 * omega * x;
        return -co;
    };
    term(op, first(a, b, cc), {"r12"});
    term(op, first(b, a, cc), {"r13"});
    term(op, first(cc, a, b), {"r23"});
    return op;
}

DiffOp op_DeltaLB_d1() {
    const Chart& ch = chart_rd1();
    DiffOp op(ch);
    term(op, Rational(2), {"r12", "r12"});
    term(op, Rational(2), {"r23", "r23"});
    term(op, Rational(-2), {"r12", "r23"});
    return op;
}

DiffOp op_DeltaLB_xi() {
    const Chart& ch = chart_xi();
    DiffOp op(ch);
    RatFunc x1 = v(ch, "xi1"), x2 = v(ch, "xi2");
    term(op, Rational(2), {"xi1", "xi1"});
    term(op, Rational(2) * (x1 * x1 - Rational(3) * x2), {"xi2", "xi2"});
    term(op, Rational(2) * x1, {"xi1", "xi2"});
    term(op, Rational(-2), {"xi2"});
    return op;
}

DiffOp op_DeltaLB_si() {
    const Chart& ch = chart_si();
    DiffOp op(ch);
    RatFunc s2 = v(ch, "si2"), s3 = v(ch, "si3");
    term(op, Rational(-6) * s2, {"si2", "si2"});
    term(op, Rational(2) * s2 * s2, {"si3", "si3"});
    term(op, Rational(-18) * s3, {"si2", "si3"});
    term(op, Rational(-6), {"si2"});
    return op;
}

DiffOp op_DeltaLB_la() {
    const Chart& ch = chart_la();
    DiffOp op(ch);
    RatFunc l1 = v(ch, "la1"), l2 = v(ch, "la2");
    term(op, Rational(-6) * l1, {"la1", "la1"});
    term(op, Rational(8) * l1 * l1 * l2, {"la2", "la2"});
    term(op, Rational(-36) * l2, {"la1", "la2"});
    term(op, Rational(-6), {"la1"});
    term(op, Rational(4) * l1 * l1, {"la2"});
    return op;
}

DiffOp op_DeltaLB_tu(long k) {
    const Chart& ch = chart_tu();
    DiffOp op(ch);
    RatFunc t = v(ch, "t"), u = v(ch, "u");
    RatFunc tk1 = t.pow(static_cast<int>(k - 1));
    Rational k2 = Rational(k) * Rational(k);
    term(op, Rational(-4) * t, {"t", "t"});
    term(op, Rational(-8) * Rational(k) * u, {"t", "u"});
    term(op, Rational(-4) * k2 * tk1 * u, {"u", "u"});
    term(op, Rational(-4), {"t"});
    term(op, Rational(-2) * k2 * tk1, {"u"});
    return op;
}

DiffOp op_H_TTW(const ModelParams& mp) {
    long k = integer_k(mp);
    const Chart& ch = chart_tu();
    DiffOp op = -op_DeltaLB_tu(k);
    RatFunc t = v(ch, "t"), u = v(ch, "u");
    RatFunc tk1 = t.pow(static_cast<int>(k - 1));
    RatFunc tk = t.pow(static_cast<int>(k));
    Rational k2 = Rational(k) * Rational(k);
    RatFunc V = mp.omega * mp.omega * t + k2 * mp.alpha * tk1 / (tk - u) + k2 * mp.beta * tk1 / u;
    return op + DiffOp::scalar(V);
}

DiffOp op_DeltaR_w(const Rational& d) {
    const Chart& ch = chart_w();
    DiffOp op(ch);
    RatFunc w1 = v(ch, "w1"), w2 = v(ch, "w2");
    term(op, w1, {"w1", "w1"});
    term(op, w1, {"w2", "w2"});
    term(op, w1 / (Rational(3) * w2 * w2), {"w3", "w3"});
    term(op, Rational(2) * w2, {"w1", "w2"});
    term(op, c(ch, d), {"w1"});
    term(op, w1 / w2, {"w2"});
    return op;
}

DiffOp op_SeparatedRadial_w(const Rational& d, long p) {
    const Chart& ch = chart_w12();
    DiffOp op(ch);
    RatFunc w1 = v(ch, "w1"), w2 = v(ch, "w2");
    term(op, w1, {"w1", "w1"});
    term(op, w1, {"w2", "w2"});
    term(op, Rational(2) * w2, {"w1", "w2"});
    term(op, c(ch, d), {"w1"});
    term(op, w1 / w2, {"w2"});
    Rational p2 = Rational(p) * Rational(p);
    return op + DiffOp::scalar(-p2 * w1 / (Rational(3) * w2 * w2));
}

DiffOp op_DeltaR_m(const Rational& d, const std::array<Rational, 3>& m) {
    const Chart& ch = chart_rho();
    DiffOp op(ch);
    RatFunc a = v(ch, "rho12"), b = v(ch, "rho13"), cc = v(ch, "rho23");
    auto inv_mu = [&](int i, int j) -> Rational { return (m[i] + m[j]) / (m[i] * m[j]); };
    term(op, 2 * inv_mu(0, 1) * a, {"rho12", "rho12"});
    term(op, 2 * inv_mu(0, 2) * b, {"rho13", "rho13"});
    term(op, 2 * inv_mu(1, 2) * cc, {"rho23", "rho23"});
    term(op, Rational(2) / m[0] * (b + a - cc), {"rho12", "rho13"});
    term(op, Rational(2) / m[2] * (b + cc - a), {"rho13", "rho23"});
    term(op, Rational(2) / m[1] * (cc + a - b), {"rho12", "rho23"});
    term(op, d * inv_mu(0, 1), {"rho12"});
    term(op, d * inv_mu(0, 2), {"rho13"});
    term(op, d * inv_mu(1, 2), {"rho23"});
    return op;
}

DiffOp op_L1_m(const std::array<Rational, 3>& m) {
    const Chart& ch = chart_rho();
    DiffOp op(ch);
    RatFunc a = v(ch, "rho12"), b = v(ch, "rho13"), cc = v(ch, "rho23");
    term(op, (a * (m[0] - m[1]) + (b - cc) * (m[0] + m[1])) * (Rational(1) / (m[0] * m[1])),
         {"rho12"});
    term(op, (b * (m[2] - m[0]) + (cc - a) * (m[0] + m[2])) * (Rational(1) / (m[0] * m[2])),
         {"rho13"});
    term(op, (cc * (m[1] - m[2]) + (a - b) * (m[1] + m[2])) * (Rational(1) / (m[1] * m[2])),
         {"rho23"});
    return op;
}

DiffOp op_DeltaR_W(const Rational& d, const std::array<Rational, 3>& m) {
    const Chart& ch = chart_W();
    DiffOp op(ch);
    Rational sm = m[0] + m[1] + m[2];
    Rational prod = m[0] * m[1] * m[2];
    Rational q = (m[0] + m[1]) * (m[0] + m[2]);
    RatFunc W1 = v(ch, "W1"), W4 = v(ch, "W4");
    term(op, 2 * sm / prod * W1, {"W1", "W1"});
    term(op, 8 * m[0] * sm / q * W1 * W4, {"W4", "W4"});
    term(op, (m[0] * m[0] * m[1] * m[2] / (2 * q)) * W1 / W4, {"W3", "W3"});
    term(op, 8 * sm / prod * W4, {"W1", "W4"});
    term(op, 8 * m[0] * sm / q * W1, {"W4"});
    term(op, c(ch, 2 * d * sm / prod), {"W1"});
    return op;
}

// --------------------------------------------------------------- potentials

RatFunc tau1_rho() { return RatFunc(e1_of(chart_rho(), "rho12", "rho13", "rho23")); }
RatFunc disc_rho() {
    const Chart& ch = chart_rho();
    MultiPoly t1 = e1_of(ch, "rho12", "rho13", "rho23");
    MultiPoly t2 = e2_of(ch, "rho12", "rho13", "rho23");
    return RatFunc(Rational(4) * t2 - t1 * t1);  // 16 * squared area
}

RatFunc pot_Veff(const Rational& d) {
    RatFunc t1 = tau1_rho();
    RatFunc u = disc_rho();
    return c(chart_rho(), Rational(9, 8)) / t1 + ((d - 2) * (d - 4) / 2) * t1 / u;
}

RatFunc pot_RicciScalar_rho() {
    const Chart& ch = chart_rho();
    RatFunc t1 = tau1_rho();
    MultiPoly t2p = e2_of(ch, "rho12", "rho13", "rho23");
    RatFunc t2(t2p);
    return (Rational(-84) * t2 + Rational(41) * t1 * t1) /
           (Rational(12) * t1 * (Rational(4) * t2 - t1 * t1));
}

RatFunc pot_V0_like(const Rational& gamma, const Rational& omega, const Rational& A, long N) {
    RatFunc t1 = tau1_rho();
    RatFunc u = disc_rho();
    const Chart& ch = chart_rho();
    return c(ch, Rational(9, 8)) / t1 + (gamma * (gamma - 1)) * Rational(2) * t1 / u +
           6 * omega * omega * t1 + Rational(6) * A * t1 * (2 * omega * t1 - c(ch, 2 * gamma + 2 * N + 3)) +
           6 * A * A * t1.pow(3);
}

RatFunc pot_Vrel_qes(const ModelParams& mp) {
    RatFunc t1 = tau1_rho();
    RatFunc u = disc_rho();
    const Chart& ch = chart_rho();
    Rational head = (4 * mp.gamma * (mp.gamma - 1) - (mp.d - 2) * (mp.d - 4)) / 2;
    return head * t1 / u + 6 * mp.omega * mp.omega * t1 +
           Rational(6) * mp.A * t1 * (2 * mp.omega * t1 - c(ch, 2 * mp.gamma + 2 * mp.N + 3)) +
           6 * mp.A * mp.A * t1.pow(3);
}

RatFunc pot_VES(const Rational& gamma, const Rational& omega) {
    RatFunc t1 = tau1_rho();
    RatFunc u = disc_rho();
    return c(chart_rho(), Rational(9, 8)) / t1 + (gamma * (gamma - 1)) * Rational(2) * t1 / u +
           6 * omega * omega * t1;
}

RatFunc pot_VExact_pst(const Rational& d, const Rational& gT, const Rational& omega) {
    const Chart& ch = chart_pst();
    RatFunc P = v(ch, "P"), S = v(ch, "S");
    return 6 * omega * omega * P + (gT * (2 * gT - 3 + d) / 4) * P / S;
}

RatFunc pot_VQES_pst(const ModelParams& mp) {
    const Chart& ch = chart_pst();
    RatFunc P = v(ch, "P"), S = v(ch, "S");
    Rational head = 6 * (mp.omega * mp.omega - mp.A * (4 * mp.gammaTilde + 2 * mp.N + mp.d + 1));
    return head * P + 12 * mp.omega * mp.A * P * P + 6 * mp.A * mp.A * P.pow(3) +
           (mp.gammaTilde * (2 * mp.gammaTilde - 3 + mp.d) / 4) * P / S;
}

RatFunc pot_VExact_d1(const Rational& omega) {
    return 6 * omega * omega * v(chart_p(), "P");
}

RatFunc pot_VQES_d1(const ModelParams& mp) {
    RatFunc P = v(chart_p(), "P");
    return 6 * (mp.omega * mp.omega - 2 * mp.A * (mp.N + 1)) * P + 12 * mp.omega * mp.A * P * P +
           6 * mp.A * mp.A * P.pow(3);
}

RatFunc pot_Va(const Rational& d, const Rational& gamma, const Rational& omega) {
    const Chart& ch = chart_r();
    RatFunc a = v(ch, "r12"), b = v(ch, "r13"), cc = v(ch, "r23");
    RatFunc a2 = a * a, b2 = b * b, c2 = cc * cc;
    RatFunc inv = c(ch, 1) / a2 + c(ch, 1) / b2 + c(ch, 1) / c2;
    RatFunc cross = a2 / (b2 * c2) + b2 / (a2 * c2) + c2 / (a2 * b2);
    return (2 * gamma * (d + 2 * gamma - 2)) * inv - (gamma * gamma) * cross +
           3 * omega * omega * (a2 + b2 + c2);
}

RatFunc pot_Vb(const Rational& d, const Rational& gamma, const Rational& omega) {
    const Chart& ch = chart_r();
    RatFunc s1(e1_of(ch, "r12", "r13", "r23"));
    RatFunc s2(e2_of(ch, "r12", "r13", "r23"));
    RatFunc s3(e3_of(ch, "r12", "r13", "r23"));
    RatFunc disc = Rational(18) * s1 * s2 * s3 + s1 * s1 * s2 * s2 - Rational(4) * s1.pow(3) * s3 -
                   Rational(4) * s2.pow(3) - Rational(27) * s3 * s3;
    RatFunc numg2 = s1.pow(7) - Rational(9) * s1.pow(5) * s2 + Rational(33) * s1.pow(4) * s3 +
                    Rational(20) * s1.pow(3) * s2 * s2 - Rational(153) * s1 * s1 * s2 * s3 +
                    Rational(162) * s1 * s3 * s3 + Rational(54) * s2 * s2 * s3;
    RatFunc numg = Rational(54) * (d - 2) * s1 * s3 * s3 +
                   s3 * ((8 * d - 25) * s1.pow(4) - Rational(9) * (4 * d - 13) * s2 * s1 * s1 -
                         Rational(54) * s2 * s2) -
                   s1 * (s1 * s1 - Rational(4) * s2) *
                       (Rational(2) * (d + 1) * s2 * s2 + s1.pow(4) - Rational(5) * s2 * s1 * s1);
    return ((gamma * gamma) * numg2 + gamma * numg) / (s3 * disc) +
           3 * omega * omega * (s1 * s1 - Rational(2) * s2);
}

RatFunc pot_V_A2(const Rational& alpha) {
    const Chart& ch = chart_si();
    RatFunc s2 = v(ch, "si2"), s3 = v(ch, "si3");
    return alpha * s2 * s2 / (s3 * s3);
}

RatFunc pot_V_G2(const Rational& alpha, const Rational& beta) {
    const Chart& ch = chart_la();
    RatFunc l1 = v(ch, "la1"), l2 = v(ch, "la2");
    return alpha * l1 * l1 / l2 - Rational(9) * beta * l1 * l1 / (Rational(4) * l1.pow(3) + Rational(27) * l2);
}

RatFunc Pm_rho(const std::array<Rational, 3>& m) {
    const Chart& ch = chart_rho();
    return m[0] * m[1] * v(ch, "rho12") + m[0] * m[2] * v(ch, "rho13") +
           m[1] * m[2] * v(ch, "rho23");
}

RatFunc area16_rho() {  // 2*sum rho rho - sum rho^2 = 16 * squared area
    return disc_rho();
}

RatFunc pot_Veff_m(const Rational& d, const std::array<Rational, 3>& m) {
    const Chart& ch = chart_rho();
    Rational sm = m[0] + m[1] + m[2];
    RatFunc pm = Pm_rho(m);
    return c(ch, Rational(3, 8) * sm) / pm +
           ((d - 2) * (d - 4) / 2) * pm / ((m[0] * m[1] * m[2]) * area16_rho());
}

RatFunc pot_Det_rho() {
    RatFunc t1 = tau1_rho();
    return Rational(6) * t1 * disc_rho();
}

RatFunc pot_Det_m(const std::array<Rational, 3>& m) {
    Rational sm = m[0] + m[1] + m[2];
    Rational prod2 = (m[0] * m[1] * m[2]) * (m[0] * m[1] * m[2]);
    return (2 * sm / prod2) * Pm_rho(m) * area16_rho();
}

RatFunc pot_W1_m(const std::array<Rational, 3>& m) {
    const Chart& ch = chart_rho();
    return (Rational(1) / m[2]) * v(ch, "rho12") + (Rational(1) / m[1]) * v(ch, "rho13") +
           (Rational(1) / m[0]) * v(ch, "rho23");
}

void wAB(const std::array<Rational, 3>& m, RatFunc& Asq_plus_Bsq) {
    // W4 = A^2 + B^2 with Omega^2 = m1 m2 m3 (m1+m2+m3) folded in exactly.
    const Chart& ch = chart_rho();
    RatFunc a = v(ch, "rho12"), b = v(ch, "rho13"), cc = v(ch, "rho23");
    Rational q12 = m[0] + m[1], q13 = m[0] + m[2];
    Rational om2 = m[0] * m[1] * m[2] * (m[0] + m[1] + m[2]);
    RatFunc Araw = a * (m[1] * q13) - b * (m[2] * q12);  // times -Omega/(m2 m3 q12 q13)
    RatFunc Braw = cc * (q12 * q13) - a * (m[0] * q13) - b * (m[0] * q12);  // times -1/(q12 q13)
    Rational cA = om2 / (m[1] * m[1] * m[2] * m[2] * q12 * q12 * q13 * q13);
    Rational cB = Rational(1) / (q12 * q12 * q13 * q13);
    Asq_plus_Bsq = cA * Araw * Araw + cB * Braw * Braw;
}

RatFunc pot_W4_m(const std::array<Rational, 3>& m) {
    RatFunc out;
    wAB(m, out);
    return out;
}

// ------------------------------------------------------------------- gauges

GaugeFactor make_gauge(const Chart& ch, std::vector<std::pair<MultiPoly, Rational>> bases,
                       MultiPoly exp_arg) {
    GaugeFactor g;
    g.chart = ch;
    g.exp_arg = std::move(exp_arg);
    for (auto& [p, e] : bases)
        if (e != 0) g.bases.push_back({std::move(p), e});
    return g;
}

GaugeFactor gauge_Psi0(const Rational& gamma, const Rational& omega, const Rational& A) {
    const Chart& ch = chart_rho();
    MultiPoly t1 = e1_of(ch, "rho12", "rho13", "rho23");
    MultiPoly t2 = e2_of(ch, "rho12", "rho13", "rho23");
    MultiPoly u = Rational(4) * t2 - t1 * t1;
    MultiPoly arg = (-omega) * t1 + (-A / 2) * (t1 * t1);
    return make_gauge(ch, {{t1, Rational(1, 4)}, {u, gamma / 2}}, arg);
}

GaugeFactor gauge_Gamma(const Rational& d) {
    const Chart& ch = chart_rho();
    MultiPoly t1 = e1_of(ch, "rho12", "rho13", "rho23");
    MultiPoly t2 = e2_of(ch, "rho12", "rho13", "rho23");
    MultiPoly u = Rational(4) * t2 - t1 * t1;
    MultiPoly D = Rational(6) * t1 * u;
    return make_gauge(ch, {{D, Rational(-1, 4)}, {u, (3 - d) / 4}}, MultiPoly::zero(ch));
}

GaugeFactor gauge_Gamma_m(const Rational& d, const std::array<Rational, 3>& m) {
    const Chart& ch = chart_rho();
    MultiPoly t1 = e1_of(ch, "rho12", "rho13", "rho23");
    MultiPoly t2 = e2_of(ch, "rho12", "rho13", "rho23");
    MultiPoly u = Rational(4) * t2 - t1 * t1;
    MultiPoly pm = m[0] * m[1] * pv(ch, "rho12") + m[0] * m[2] * pv(ch, "rho13") +
                   m[1] * m[2] * pv(ch, "rho23");
    Rational sm = m[0] + m[1] + m[2];
    Rational prod2 = (m[0] * m[1] * m[2]) * (m[0] * m[1] * m[2]);
    MultiPoly Dm = (2 * sm / prod2) * pm * u;
    return make_gauge(ch, {{Dm, Rational(-1, 4)}, {u, (3 - d) / 4}}, MultiPoly::zero(ch));
}

GaugeFactor gauge_Psi0_pst(const Rational& gT, const Rational& omega, const Rational& A,
                           bool planar) {
    const Chart& ch = planar ? chart_pt() : chart_pst();
    MultiPoly P = pv(ch, "P");
    MultiPoly arg = (-omega) * P + (-A / 2) * (P * P);
    std::vector<std::pair<MultiPoly, Rational>> bases;
    if (!planar) bases.push_back({pv(ch, "S"), gT});
    return make_gauge(ch, std::move(bases), arg);
}

GaugeFactor gauge_Psi_a(const Rational& gamma, const Rational& omega) {
    const Chart& ch = chart_rho();
    MultiPoly t3 = e3_of(ch, "rho12", "rho13", "rho23");
    MultiPoly t1 = e1_of(ch, "rho12", "rho13", "rho23");
    return make_gauge(ch, {{t3, gamma / 2}}, (-omega / 2) * t1);
}

GaugeFactor gauge_Psi_b(const Rational& gamma, const Rational& omega) {
    const Chart& ch = chart_r();
    MultiPoly a = pv(ch, "r12"), b = pv(ch, "r13"), cc = pv(ch, "r23");
    MultiPoly vand = (a - b) * (b - cc) * (a - cc);
    MultiPoly sq = a * a + b * b + cc * cc;
    return make_gauge(ch, {{vand, gamma}}, (-omega / 2) * sq);
}

// ------------------------------------------------------------------- charts

std::vector<MultiPoly> map_rho_of_r() {
    const Chart& ch = chart_r();
    return {pv(ch, "r12") * pv(ch, "r12"), pv(ch, "r13") * pv(ch, "r13"),
            pv(ch, "r23") * pv(ch, "r23")};
}

std::vector<MultiPoly> map_tau_of_rho() {
    const Chart& ch = chart_rho();
    return {e1_of(ch, "rho12", "rho13", "rho23"), e2_of(ch, "rho12", "rho13", "rho23"),
            e3_of(ch, "rho12", "rho13", "rho23")};
}

std::vector<MultiPoly> map_pst_of_rho() {
    const Chart& ch = chart_rho();
    MultiPoly t1 = e1_of(ch, "rho12", "rho13", "rho23");
    MultiPoly t2 = e2_of(ch, "rho12", "rho13", "rho23");
    return {t1, Rational(1, 16) * (Rational(4) * t2 - t1 * t1),
            e3_of(ch, "rho12", "rho13", "rho23")};
}

std::vector<MultiPoly> map_xi_of_r() {
    const Chart& ch = chart_rd1();
    return {pv(ch, "r12") + pv(ch, "r23"), pv(ch, "r12") * pv(ch, "r23")};
}

std::vector<MultiPoly> map_si_of_xi() {
    const Chart& ch = chart_xi();
    MultiPoly x1 = pv(ch, "xi1"), x2 = pv(ch, "xi2");
    return {x2 - x1 * x1, -(x1 * x2)};
}

std::vector<MultiPoly> map_la_of_xi() {
    const Chart& ch = chart_xi();
    MultiPoly x1 = pv(ch, "xi1"), x2 = pv(ch, "xi2");
    return {x2 - x1 * x1, x1 * x1 * x2 * x2};
}

std::vector<MultiPoly> map_tu_of_q(long k) {
    const Chart& ch = chart_q();
    MultiPoly q1 = pv(ch, "q1"), q2 = pv(ch, "q2");
    MultiPoly t = q1 * q1 + q2 * q2;
    // Im((q1 + i q2)^k) = sum over odd j of C(k,j) (-1)^((j-1)/2) q1^(k-j) q2^j
    MultiPoly im = MultiPoly::zero(ch);
    Rational binom = 1;
    for (long j = 0; j <= k; ++j) {
        if (j > 0) binom = binom * Rational(k - j + 1) / Rational(j);
        if (j % 2 == 1) {
            Rational sign = ((j - 1) / 2) % 2 == 0 ? Rational(1) : Rational(-1);
            MultiPoly mono = q1.pow(static_cast<uint32_t>(k - j)) * q2.pow(static_cast<uint32_t>(j));
            im = im + (sign * binom) * mono;
        }
    }
    return {t, im * im};
}

NumericChart nchart_w_of_rho() {
    NumericChart nc;
    nc.name = "w_of_rho";
    nc.u_chart = chart_w();
    auto t12 = [](const std::vector<long double>& p) {
        long double t1 = p[0] + p[1] + p[2];
        long double t2 = p[0] * p[1] + p[0] * p[2] + p[1] * p[2];
        return std::pair<long double, long double>(t1, t2);
    };
    nc.map.push_back([](const std::vector<long double>& p) { return p[0] + p[1] + p[2]; });
    nc.map.push_back([t12](const std::vector<long double>& p) {
        auto [t1, t2] = t12(p);
        return 2.0L * std::sqrt(t1 * t1 - 3.0L * t2);
    });
    nc.map.push_back([t12](const std::vector<long double>& p) {
        auto [t1, t2] = t12(p);
        long double w2 = 2.0L * std::sqrt(t1 * t1 - 3.0L * t2);
        long double s3 = std::sqrt(3.0L);
        long double f1 = (2.0L - s3) * p[1] - p[2] + (s3 - 1.0L) * p[0];
        long double f2 = 2.0L * p[2] - (1.0L + s3) * p[1] + (s3 - 1.0L) * p[0];
        long double f3 = (2.0L + s3) * p[0] - (1.0L + s3) * p[1] - p[2];
        long double arg = 2.0L * std::sqrt(2.0L) / (w2 * w2 * w2) * f1 * f2 * f3;
        return -(s3 / 9.0L) * std::asin(arg);
    });
    nc.in_region = [](const std::vector<double>& p) {
        if (p.size() != 3) return false;
        for (double x : p)
            if (!(x > 0.0)) return false;
        if (!(p[2] > p[1] && p[1] > p[0])) return false;  // ordering defining branch (a)
        double t1 = p[0] + p[1] + p[2];
        double t2 = p[0] * p[1] + p[0] * p[2] + p[1] * p[2];
        return 4.0 * t2 - t1 * t1 > 0.0 && t1 * t1 - 3.0 * t2 > 0.0;
    };
    return nc;
}

NumericChart nchart_W3(const std::array<Rational, 3>& masses) {
    NumericChart nc;
    nc.name = "W3_chart";
    nc.u_chart = chart_W();
    long double m1 = to_double(masses[0]), m2 = to_double(masses[1]), m3 = to_double(masses[2]);
    long double om = std::sqrt(m1 * m2 * m3 * (m1 + m2 + m3));
    auto Afn = [=](const std::vector<long double>& p) {
        return -(p[0] * m2 * (m1 + m3) - p[1] * m3 * (m1 + m2)) * om /
               (m2 * m3 * (m1 + m2) * (m1 + m3));
    };
    auto Bfn = [=](const std::vector<long double>& p) {
        return -(p[2] * (m1 + m2) * (m1 + m3) - p[0] * m1 * (m1 + m3) - p[1] * m1 * (m1 + m2)) /
               ((m1 + m2) * (m1 + m3));
    };
    nc.map.push_back(
        [=](const std::vector<long double>& p) { return p[0] / m3 + p[1] / m2 + p[2] / m1; });
    nc.map.push_back([=](const std::vector<long double>& p) {
        return (m1 * m2 * m3 / (2.0L * om)) * std::atan2(Bfn(p), Afn(p));
    });
    nc.map.push_back([=](const std::vector<long double>& p) {
        long double a = Afn(p), b = Bfn(p);
        return a * a + b * b;
    });
    nc.in_region = [=](const std::vector<double>& p) {
        if (p.size() != 3) return false;
        for (double x : p)
            if (!(x > 0.0)) return false;
        double t1 = p[0] + p[1] + p[2];
        double t2 = p[0] * p[1] + p[0] * p[2] + p[1] * p[2];
        if (!(4.0 * t2 - t1 * t1 > 0.0)) return false;
        return Afn({p[0], p[1], p[2]}) > 0.0;  // stay on one branch of the angle
    };
    return nc;
}

// ------------------------------------------------------------------ catalog

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> cs;
    auto add = [&](const char* id, const char* kind, const char* chart, const char* params,
                   const char* desc) { cs.push_back({id, kind, chart, params, desc}); };

    add("DeltaR_r", "operator", "r", "d",
        "Radial reduction of the relative Laplacian over the three mutual distances.");
    add("DtildeAngular_d2", "operator", "rtheta", "",
        "Planar angular block; every term carries a derivative in the angle.");
    add("DeltaR_rho", "operator", "rho", "d",
        "Radial operator in squared mutual distances; polynomial coefficients.");
    add("DeltaLB_rho", "operator", "rho", "",
        "Laplace-Beltrami operator of the rho metric; dimension independent.");
    add("L1_rho", "operator", "rho", "", "First order symmetry; commutes with DeltaR_rho.");
    add("DeltaR_tau", "operator", "tau", "d",
        "Radial operator in elementary symmetric polynomial variables.");
    add("L1sq_tau", "operator", "tau", "",
        "Square of the symmetry L1 pushed to tau variables, with overall minus sign.");
    add("DeltaR_pst", "operator", "pst", "d",
        "Radial operator in the geometric variables (perimeter-like P, squared area S, tau3).");
    add("DeltaR_pst_d1", "operator", "pt", "",
        "Degeneration of the geometric-variable operator to collinear configurations.");
    add("DeltaR_rho_S_chart", "operator", "rhoS", "d",
        "Radial operator in (rho12, rho13, S) with rho23 entering coefficients passively.");
    add("DeltaR_rho_S_d1", "operator", "rho", "",
        "Collinear limit of the (rho12, rho13, S) operator at S = 0.");
    add("hQES_rho", "operator", "rho", "gamma,omega,A,N",
        "Gauge-rotated quasi-solvable operator in rho variables (published form).");
    add("hES_rho", "operator", "rho", "gamma,omega",
        "Gauge-rotated exactly-solvable operator in rho variables.");
    add("hQES_tau", "operator", "tau", "gamma,omega,A,N",
        "Quasi-solvable operator in tau variables (published form).");
    add("hES_tau", "operator", "tau", "gamma,omega",
        "Exactly-solvable operator in tau variables (published form).");
    add("hQES_tau12", "operator", "tau12", "gamma,omega,A,N",
        "Two-variable restriction of the quasi-solvable tau operator (published form).");
    add("hES_tau12", "operator", "tau12", "gamma,omega",
        "Two-variable restriction of the exactly-solvable tau operator (published form).");
    add("hQES_tau1", "operator", "tau1", "gamma,omega,A,N",
        "One-variable quasi-solvable operator; sextic-potential sector.");
    add("hES_tau1", "operator", "tau1", "gamma,omega",
        "One-variable exactly-solvable operator of Laguerre type.");
    add("hExact_pst", "operator", "pst", "d,gammaT,omega",
        "Exactly-solvable operator in geometric variables.");
    add("hExact_pst_r", "operator", "ps", "d,gammaT,omega",
        "Reduction of the geometric-variable solvable operator to (P, S).");
    add("hExact_pst_rr", "operator", "p", "d,gammaT,omega",
        "Radial Laguerre-type reduction in the single variable P.");
    add("hExact_pst_d1", "operator", "pt", "omega",
        "Collinear exactly-solvable operator in (P, T).");
    add("hExact_d1_r", "operator", "p", "omega", "Collinear radial reduction in P.");
    add("hQES_pst", "operator", "pst", "d,gammaT,omega,A,N",
        "Quasi-solvable deformation of the geometric-variable operator.");
    add("hQES_pst_r", "operator", "ps", "d,gammaT,omega,A,N",
        "Quasi-solvable reduction to (P, S).");
    add("hQES_pst_rr", "operator", "p", "d,gammaT,omega,A,N",
        "Quasi-solvable radial reduction in P.");
    add("hQES_pst_d1", "operator", "pt", "omega,A,N",
        "Collinear quasi-solvable operator in (P, T).");
    add("hQES_pst_d1_r", "operator", "p", "omega,A,N",
        "Collinear quasi-solvable radial reduction in P.");
    add("DeltaPrime_a", "operator", "r", "d,gamma,omega",
        "Distance-variable operator rotated by the symmetric product ground factor.");
    add("DeltaPrime_b", "operator", "r", "d,gamma,omega",
        "Distance-variable operator rotated by the antisymmetric difference ground factor.");
    add("DeltaLB_d1", "operator", "rd1", "",
        "Collinear Laplace-Beltrami operator in two independent distances.");
    add("DeltaLB_xi", "operator", "xi", "",
        "Collinear operator in the symmetric pair (xi1, xi2).");
    add("DeltaLB_si", "operator", "si", "", "Collinear operator in (si2, si3).");
    add("DeltaLB_la", "operator", "la", "", "Collinear operator in (la1, la2).");
    add("DeltaLB_tu", "operator", "tu", "k",
        "Dihedral-invariant planar operator; requires integer k.");
    add("H_TTW", "operator", "tu", "k,omega,alpha,beta",
        "Deformed oscillator Hamiltonian in dihedral invariants; requires integer k.");
    add("SeparatedRadial_w", "operator", "w12", "d,p",
        "Radial block after separating the angle-like variable w3.");
    add("DeltaR_w", "operator", "w", "d",
        "One sixth of the radial operator in symmetry-adapted w variables.");
    add("DeltaR_m", "operator", "rho", "d,masses",
        "Radial operator for arbitrary masses in squared mutual distances.");
    add("L1_m", "operator", "rho", "masses",
        "First order symmetry of the arbitrary-mass radial operator.");
    add("DeltaR_W", "operator", "W", "d,masses",
        "Arbitrary-mass radial operator in the invariants (W1, W3, W4).");

    add("Veff", "potential", "rho", "d",
        "Effective potential produced by the determinant gauge factor.");
    add("RicciScalar_rho", "potential", "rho", "",
        "Published closed form of the Ricci scalar of the rho metric.");
    add("V0_qes", "potential", "rho", "gamma,omega,A",
        "Ground sector potential for the quasi-solvable model.");
    add("VN_qes", "potential", "rho", "gamma,omega,A,N",
        "Level-N potential for the quasi-solvable model.");
    add("Vrel_qes", "potential", "rho", "d,gamma,omega,A,N",
        "Level-N potential with the dimension-dependent singular term combined.");
    add("VES", "potential", "rho", "gamma,omega", "Potential of the exactly-solvable model.");
    add("VExact_pst", "potential", "pst", "d,gammaT,omega",
        "Oscillator-type potential in geometric variables.");
    add("VQES_pst", "potential", "pst", "d,gammaT,omega,A,N",
        "Sextic-type potential in geometric variables.");
    add("VExact_d1", "potential", "p", "omega", "Collinear oscillator potential in P.");
    add("VQES_d1", "potential", "p", "omega,A,N", "Collinear sextic potential in P.");
    add("Va", "potential", "r", "d,gamma,omega",
        "Calogero-type potential paired with the symmetric product ground factor.");
    add("Vb", "potential", "r", "d,gamma,omega",
        "Potential paired with the antisymmetric difference ground factor.");
    add("V_A2", "potential", "si", "alpha",
        "Rational pair-interaction potential in (si2, si3) variables.");
    add("V_G2", "potential", "la", "alpha,beta",
        "Rational two-coupling potential in (la1, la2) variables.");
    add("Veff_m", "potential", "rho", "d,masses",
        "Effective potential for arbitrary masses.");
    add("Det_rho", "potential", "rho", "",
        "Factorized determinant of the rho metric.");
    add("Det_m", "potential", "rho", "masses",
        "Factorized determinant of the arbitrary-mass rho metric.");
    add("W1_m", "potential", "rho", "masses", "Mass-weighted linear invariant W1.");
    add("W2sq_m", "potential", "rho", "masses",
        "Square of the invariant W2; proportional to the squared triangle area.");
    add("W4_m", "potential", "rho", "masses",
        "Quadratic invariant W4 written as an exact sum of two squares.");
    add("W_invariants", "family", "rho", "masses",
        "Family of symmetry invariants; members W1_m, W2sq_m, W4_m are potentials.");

    add("Gamma_gauge", "gauge", "rho", "d",
        "Determinant-based gauge factor relating the Laplace-Beltrami operator to a Schroedinger form.");
    add("Psi0_qes", "gauge", "rho", "gamma,omega,A",
        "Ground factor of the quasi-solvable rho model.");
    add("Psi0_es", "gauge", "rho", "gamma,omega",
        "Ground factor of the exactly-solvable rho model.");
    add("Psi0_pst", "gauge", "pst", "gammaT,omega,A",
        "Ground factor in geometric variables.");
    add("Psi0_pst_d1", "gauge", "pt", "omega,A", "Collinear ground factor.");
    add("Psi_a", "gauge", "rho", "gamma,omega",
        "Permutation-symmetric product ground factor, written over rho variables.");
    add("Psi_b", "gauge", "r", "gamma,omega",
        "Permutation-symmetric difference ground factor over distance variables.");
    add("Gamma_m", "gauge", "rho", "d,masses",
        "Determinant-based gauge factor for arbitrary masses.");

    add("E0_qes", "energy", "", "gamma,omega", "Ground energy 12 omega (1 + gamma).");
    add("E0_es", "energy", "", "gamma,omega", "Ground energy 12 omega (1 + gamma).");
    add("E0_pst", "energy", "", "d,gammaT,omega", "Ground energy 6 omega (d + 4 gammaT).");
    add("E0_pst_d1", "energy", "", "omega", "Collinear ground energy 6 omega.");
    add("Ea", "energy", "", "d,gamma,omega", "Ground energy 6 omega (d + 3 gamma).");
    add("Eb", "energy", "", "d,gamma,omega", "Ground energy 6 omega (d + 3 gamma).");

    add("Metric_rho", "metric", "rho", "", "Contravariant metric of DeltaR_rho.");
    add("Metric_tau", "metric", "tau", "", "Contravariant metric of DeltaR_tau.");
    add("Metric_pst", "metric", "pst", "", "Contravariant metric of DeltaR_pst.");
    add("Metric_pst_d1", "metric", "pt", "", "Contravariant metric of DeltaR_pst_d1.");
    add("Metric_m", "metric", "rho", "masses", "Contravariant metric of DeltaR_m.");

    add("Classical_T", "classical", "rho", "",
        "Classical kinetic observable built from the rho metric.");
    add("Classical_L1", "classical", "rho", "",
        "Classical counterpart of the symmetry L1; Poisson-commutes with Classical_T.");

    add("rho_of_r", "chart", "r", "", "rho_ij = r_ij^2.");
    add("tau_of_rho", "chart", "rho", "", "Elementary symmetric polynomials of rho.");
    add("pst_of_rho", "chart", "rho", "",
        "P = tau1, S = (4 tau2 - tau1^2)/16 (squared area), T = tau3.");
    add("xi_of_r", "chart", "rd1", "", "xi1 = r12 + r23, xi2 = r12 r23.");
    add("si_of_xi", "chart", "xi", "", "si2 = xi2 - xi1^2, si3 = -xi1 xi2.");
    add("la_of_xi", "chart", "xi", "", "la1 = xi2 - xi1^2, la2 = xi1^2 xi2^2.");
    add("tu_of_q", "chart", "q", "k",
        "t = q1^2 + q2^2, u = Im((q1 + i q2)^k)^2; polynomial for integer k.");
    add("w_of_rho", "chart", "rho", "",
        "Numeric chart to the symmetry-adapted w variables; ordering branch rho23 > rho13 > rho12.");
    add("W3_chart", "chart", "rho", "masses",
        "Numeric chart to the mass-weighted invariants (W1, W3, W4).");
    return cs;
}

}  // namespace

// --------------------------------------------------------------- public API

void ModelParams::validate() const {
    for (const auto& m : masses)
        if (m <= 0) throw std::invalid_argument("masses must be positive");
    if (N < 0) throw std::invalid_argument("N must be a non-negative integer");
    if (omega < 0) throw std::invalid_argument("omega must be non-negative");
    if (A < 0) throw std::invalid_argument("A must be non-negative");
    if (k <= 0) throw std::invalid_argument("k must be positive");
}

#define TBA_CHART(fn, ...)                          \
    const Chart& fn() {                             \
        static const Chart ch = chart_of({__VA_ARGS__}); \
        return ch;                                  \
    }

TBA_CHART(chart_rho, "rho12", "rho13", "rho23")
TBA_CHART(chart_r, "r12", "r13", "r23")
TBA_CHART(chart_tau, "tau1", "tau2", "tau3")
TBA_CHART(chart_pst, "P", "S", "T")
TBA_CHART(chart_pt, "P", "T")
TBA_CHART(chart_ps, "P", "S")
TBA_CHART(chart_p, "P")
TBA_CHART(chart_tau12, "tau1", "tau2")
TBA_CHART(chart_tau1, "tau1")
TBA_CHART(chart_rd1, "r12", "r23")
TBA_CHART(chart_xi, "xi1", "xi2")
TBA_CHART(chart_si, "si2", "si3")
TBA_CHART(chart_la, "la1", "la2")
TBA_CHART(chart_q, "q1", "q2")
TBA_CHART(chart_tu, "t", "u")
TBA_CHART(chart_w, "w1", "w2", "w3")
TBA_CHART(chart_w12, "w1", "w2")
TBA_CHART(chart_rhoS, "rho12", "rho13", "S", "rho23")
TBA_CHART(chart_rtheta, "r12", "r13", "r23", "Strg", "theta")
TBA_CHART(chart_W, "W1", "W3", "W4")

#undef TBA_CHART

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> cs = build_catalog();
    return cs;
}

std::string catalog_json() {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : catalog()) {
        arr.push_back({{"id", e.id},
                       {"kind", e.kind},
                       {"chart", e.chart},
                       {"params", e.params},
                       {"description", e.description}});
    }
    return arr.dump(2);
}

bool catalog_has(const std::string& id) {
    for (const auto& e : catalog())
        if (e.id == id) return true;
    return false;
}

namespace {

DiffOp build_operator(const std::string& id, const ModelParams& P, bool derived) {
    P.validate();
    if (id == "DeltaR_r") return op_DeltaR_r(P.d);
    if (id == "DtildeAngular_d2") return op_DtildeAngular_d2();
    if (id == "DeltaR_rho") return op_DeltaR_rho(P.d);
    if (id == "DeltaLB_rho") return op_DeltaLB_rho();
    if (id == "L1_rho") return op_L1_rho();
    if (id == "DeltaR_tau") return op_DeltaR_tau(P.d);
    if (id == "L1sq_tau") return op_L1sq_tau();
    if (id == "DeltaR_pst") return op_DeltaR_pst(P.d);
    if (id == "DeltaR_pst_d1") return op_DeltaR_pst_d1();
    if (id == "DeltaR_rho_S_chart") return op_DeltaR_rhoS(P.d);
    if (id == "DeltaR_rho_S_d1") return op_DeltaR_rhoS_d1();
    if (id == "hQES_rho") return op_hQES_rho(P.gamma, P.omega, P.A, P.N, derived);
    if (id == "hES_rho") return op_hQES_rho(P.gamma, P.omega, 0, 0, derived);
    if (id == "hQES_tau") return op_hQES_tau(P.gamma, P.omega, P.A, P.N, derived);
    if (id == "hES_tau") return op_hQES_tau(P.gamma, P.omega, 0, 0, derived);
    if (id == "hQES_tau12") return op_hQES_tau12(P.gamma, P.omega, P.A, P.N, derived);
    if (id == "hES_tau12") return op_hQES_tau12(P.gamma, P.omega, 0, 0, derived);
    if (id == "hQES_tau1") return op_hQES_tau1(P.gamma, P.omega, P.A, P.N, derived);
    if (id == "hES_tau1") return op_hQES_tau1(P.gamma, P.omega, 0, 0, derived);
    if (id == "hExact_pst") return op_hExact_pst(P.d, P.gammaTilde, P.omega);
    if (id == "hExact_pst_r") return op_hExact_pst_r(P.d, P.gammaTilde, P.omega);
    if (id == "hExact_pst_rr") return op_hExact_pst_rr(P.d, P.gammaTilde, P.omega);
    if (id == "hExact_pst_d1") return op_hExact_pst_d1(P.omega);
    if (id == "hExact_d1_r") return op_hExact_d1_r(P.omega);
    if (id == "hQES_pst")
        return op_hExact_pst(P.d, P.gammaTilde, P.omega) +
               qes_block(chart_pst(), P.A, P.N, {{"P", 1}, {"S", 2}, {"T", 3}});
    if (id == "hQES_pst_r")
        return op_hExact_pst_r(P.d, P.gammaTilde, P.omega) +
               qes_block(chart_ps(), P.A, P.N, {{"P", 1}, {"S", 2}});
    if (id == "hQES_pst_rr")
        return op_hExact_pst_rr(P.d, P.gammaTilde, P.omega) +
               qes_block(chart_p(), P.A, P.N, {{"P", 1}});
    if (id == "hQES_pst_d1")
        return op_hExact_pst_d1(P.omega) +
               qes_block(chart_pt(), P.A, P.N, {{"P", 1}, {"T", 3}});
    if (id == "hQES_pst_d1_r")
        return op_hExact_d1_r(P.omega) + qes_block(chart_p(), P.A, P.N, {{"P", 1}});
    if (id == "DeltaPrime_a") return op_DeltaPrime_a(P.d, P.gamma, P.omega);
    if (id == "DeltaPrime_b") return op_DeltaPrime_b(P.d, P.gamma, P.omega);
    if (id == "DeltaLB_d1") return op_DeltaLB_d1();
    if (id == "DeltaLB_xi") return op_DeltaLB_xi();
    if (id == "DeltaLB_si") return op_DeltaLB_si();
    if (id == "DeltaLB_la") return op_DeltaLB_la();
    if (id == "DeltaLB_tu") return op_DeltaLB_tu(integer_k(P));
    if (id == "H_TTW") return op_H_TTW(P);
    if (id == "SeparatedRadial_w") return op_SeparatedRadial_w(P.d, P.p);
    if (id == "DeltaR_w") return op_DeltaR_w(P.d);
    if (id == "DeltaR_m") return op_DeltaR_m(P.d, P.masses);
    if (id == "L1_m") return op_L1_m(P.masses);
    if (id == "DeltaR_W") return op_DeltaR_W(P.d, P.masses);
    throw std::invalid_argument("unknown operator id: " + id);
}

}  // namespace

DiffOp operator_of(const std::string& id, const ModelParams& params) {
    return build_operator(id, params, false);
}

DiffOp derived_operator_of(const std::string& id, const ModelParams& params) {
    return build_operator(id, params, true);
}

RatFunc potential_of(const std::string& id, const ModelParams& P) {
    P.validate();
    if (id == "Veff") return pot_Veff(P.d);
    if (id == "RicciScalar_rho") return pot_RicciScalar_rho();
    if (id == "V0_qes") return pot_V0_like(P.gamma, P.omega, P.A, 0);
    if (id == "VN_qes") return pot_V0_like(P.gamma, P.omega, P.A, P.N);
    if (id == "Vrel_qes") return pot_Vrel_qes(P);
    if (id == "VES") return pot_VES(P.gamma, P.omega);
    if (id == "VExact_pst") return pot_VExact_pst(P.d, P.gammaTilde, P.omega);
    if (id == "VQES_pst") return pot_VQES_pst(P);
    if (id == "VExact_d1") return pot_VExact_d1(P.omega);
    if (id == "VQES_d1") return pot_VQES_d1(P);
    if (id == "Va") return pot_Va(P.d, P.gamma, P.omega);
    if (id == "Vb") return pot_Vb(P.d, P.gamma, P.omega);
    if (id == "V_A2") return pot_V_A2(P.alpha);
    if (id == "V_G2") return pot_V_G2(P.alpha, P.beta);
    if (id == "Veff_m") return pot_Veff_m(P.d, P.masses);
    if (id == "Det_rho") return pot_Det_rho();
    if (id == "Det_m") return pot_Det_m(P.masses);
    if (id == "W1_m") return pot_W1_m(P.masses);
    if (id == "W2sq_m") return Rational(4) * area16_rho();
    if (id == "W4_m") return pot_W4_m(P.masses);
    throw std::invalid_argument("unknown potential id: " + id);
}

GaugeFactor gauge_of(const std::string& id, const ModelParams& P) {
    P.validate();
    if (id == "Gamma_gauge") return gauge_Gamma(P.d);
    if (id == "Psi0_qes") return gauge_Psi0(P.gamma, P.omega, P.A);
    if (id == "Psi0_es") return gauge_Psi0(P.gamma, P.omega, 0);
    if (id == "Psi0_pst") return gauge_Psi0_pst(P.gammaTilde, P.omega, P.A, false);
    if (id == "Psi0_pst_d1") return gauge_Psi0_pst(0, P.omega, P.A, true);
    if (id == "Psi_a") return gauge_Psi_a(P.gamma, P.omega);
    if (id == "Psi_b") return gauge_Psi_b(P.gamma, P.omega);
    if (id == "Gamma_m") return gauge_Gamma_m(P.d, P.masses);
    throw std::invalid_argument("unknown gauge id: " + id);
}

Rational ground_energy_of(const std::string& id, const ModelParams& P) {
    P.validate();
    if (id == "E0_qes" || id == "E0_es") return 12 * P.omega * (1 + P.gamma);
    if (id == "E0_pst") return 6 * P.omega * (P.d + 4 * P.gammaTilde);
    if (id == "E0_pst_d1") return 6 * P.omega;
    if (id == "Ea" || id == "Eb") return 6 * P.omega * (P.d + 3 * P.gamma);
    throw std::invalid_argument("unknown energy id: " + id);
}

MetricTensor metric_of(const std::string& id, const ModelParams& P) {
    P.validate();
    if (id == "Metric_rho") return metric_from(op_DeltaR_rho(P.d));
    if (id == "Metric_tau") return metric_from(op_DeltaR_tau(P.d));
    if (id == "Metric_pst") return metric_from(op_DeltaR_pst(P.d));
    if (id == "Metric_pst_d1") return metric_from(op_DeltaR_pst_d1());
    if (id == "Metric_m") return metric_from(op_DeltaR_m(P.d, P.masses));
    throw std::invalid_argument("unknown metric id: " + id);
}

PhaseFunction classical_of(const std::string& id, const ModelParams& P) {
    P.validate();
    PhaseFunction f;
    f.positions = chart_rho();
    f.momenta = chart_of({"p12", "p13", "p23"});
    Chart full = f.doubled_chart();
    auto x = [&](const char* n) { return MultiPoly::variable(full, n); };
    if (id == "Classical_T") {
        MultiPoly a = x("rho12"), b = x("rho13"), cc = x("rho23");
        MultiPoly pa = x("p12"), pb = x("p13"), pcc = x("p23");
        f.value = Rational(4) * (a * pa * pa + b * pb * pb + cc * pcc * pcc) +
                  Rational(2) * ((a + b - cc) * pa * pb + (a + cc - b) * pa * pcc +
                                 (b + cc - a) * pb * pcc);
        return f;
    }
    if (id == "Classical_L1") {
        MultiPoly a = x("rho12"), b = x("rho13"), cc = x("rho23");
        f.value = (b - cc) * x("p12") + (cc - a) * x("p13") + (a - b) * x("p23");
        return f;
    }
    throw std::invalid_argument("unknown classical id: " + id);
}

std::vector<MultiPoly> chart_map_of(const std::string& chart_id, const ModelParams& P) {
    P.validate();
    if (chart_id == "rho_of_r") return map_rho_of_r();
    if (chart_id == "tau_of_rho") return map_tau_of_rho();
    if (chart_id == "pst_of_rho") return map_pst_of_rho();
    if (chart_id == "xi_of_r") return map_xi_of_r();
    if (chart_id == "si_of_xi") return map_si_of_xi();
    if (chart_id == "la_of_xi") return map_la_of_xi();
    if (chart_id == "tu_of_q") return map_tu_of_q(integer_k(P));
    if (chart_id == "w_of_rho" || chart_id == "W3_chart")
        throw std::invalid_argument(chart_id + " is numeric-only; use numeric_chart_of");
    throw std::invalid_argument("unknown chart id: " + chart_id);
}

NumericChart numeric_chart_of(const std::string& chart_id, const ModelParams& P) {
    P.validate();
    if (chart_id == "w_of_rho") return nchart_w_of_rho();
    if (chart_id == "W3_chart") return nchart_W3(P.masses);
    throw std::invalid_argument("unknown numeric chart id: " + chart_id);
}

}  // namespace tba

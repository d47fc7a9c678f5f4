#pragma once

#include <string>
#include <vector>

#include "diffop.hpp"
#include "models.hpp"
#include "report.hpp"

namespace tba {

// Hidden-algebra realizations by first order (and a few composite) differential
// operators, plus a table of operator expressions written in those generators.
enum class AlgebraId { sl4_b4, h3, g2, sl2, sl3_b2 };

std::string algebra_name(AlgebraId alg);
AlgebraId algebra_from_string(const std::string& name);
const Chart& algebra_chart(AlgebraId alg);
std::vector<std::string> algebra_generators(AlgebraId alg);

// Realization of one generator. N enters the Euler-shifted and raising
// generators; the rest ignore it.
DiffOp generator(AlgebraId alg, const std::string& name, long N);

// One monomial of an expression coefficient: c * gamma^g * gammaTilde^gt *
// omega^w * A^a * N^n * d^dd, evaluated against ModelParams.
struct CoeffMonomial {
    Rational c;
    int gamma = 0;
    int gammaTilde = 0;
    int omega = 0;
    int A = 0;
    int N = 0;
    int d = 0;
    Rational eval(const ModelParams& params) const;
};

struct ExprTerm {
    std::vector<CoeffMonomial> coeff;     // sum of monomials
    std::vector<std::string> word;        // generator names, left factor acts last
};

struct AlgExpr {
    std::string id;
    AlgebraId algebra = AlgebraId::sl4_b4;
    std::string target;                   // catalog operator id the expression realizes
    bool target_derived = false;          // compare against derived_operator_of
    bool erratum = false;                 // known mismatch kept for the record
    std::string note;
    std::vector<ExprTerm> terms;
};

// Composes the generator realizations and sums the terms; the empty
// expression expands to the zero operator on the algebra's chart.
DiffOp expand(const AlgExpr& expr, const ModelParams& params);

// Shipped expression table, parsed from the embedded copy of
// data/expressions.json.
const std::vector<AlgExpr>& expression_table();
const AlgExpr& expression_of(const std::string& id);
const std::string& expressions_json_text();

// Expands the expression and compares it, term by term, with the catalog
// operator it claims to realize. Entries flagged as errata report status
// `erratum` on the expected mismatch instead of failing.
CheckReport verify_realization(const std::string& expr_id, const ModelParams& params);

}  // namespace tba

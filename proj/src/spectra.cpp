#include "tba/spectra.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tba {

namespace {

std::string exps_str(const Chart& ch, const Exponents& e) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        os << ch[i];
        if (e[i] > 1) os << "^" << e[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

// polynomial part of a RatFunc known to have constant denominator
MultiPoly poly_part(const RatFunc& f) {
    return f.num() * (Rational(1) / f.den().constant_value());
}

double to_d(const Rational& q) { return q.get_d(); }

}  // namespace

long PolySpace::weight(const Exponents& e) const {
    long w = 0;
    for (std::size_t i = 0; i < e.size(); ++i) w += charvec[i] * static_cast<long>(e[i]);
    return w;
}

MultiPoly PolySpace::monomial(std::size_t j) const {
    return MultiPoly::monomial(chart, basis[j], Rational(1));
}

PolySpace basis(const Chart& chart, const std::vector<long>& charvec, long N) {
    if (charvec.size() != chart.size())
        throw std::invalid_argument("basis: charvec size must match chart size");
    for (long f : charvec)
        if (f < 1) throw std::invalid_argument("basis: weights must be >= 1");
    if (N < 0) throw std::invalid_argument("basis: N must be >= 0");
    PolySpace sp;
    sp.chart = chart;
    sp.charvec = charvec;
    sp.N = N;
    Exponents cur(chart.size(), 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i == chart.size()) {
            sp.basis.push_back(cur);
            return;
        }
        for (long e = 0; e * charvec[i] <= left; ++e) {
            cur[i] = static_cast<uint32_t>(e);
            rec(i + 1, left - e * charvec[i]);
        }
        cur[i] = 0;
    };
    rec(0, N);
    std::sort(sp.basis.begin(), sp.basis.end(), [&](const Exponents& a, const Exponents& b) {
        long wa = sp.weight(a), wb = sp.weight(b);
        if (wa != wb) return wa < wb;
        return a < b;
    });
    return sp;
}

CheckReport invariance_check(const DiffOp& op, const PolySpace& space) {
    CheckReport report;
    report.check_id = "spectra/invariance";
    report.params = {{"N", space.N}, {"dim", space.dim()}};
    if (op.chart() != space.chart)
        throw std::invalid_argument("invariance_check: op chart differs from space chart");
    for (std::size_t j = 0; j < space.dim(); ++j) {
        CheckItem item;
        item.label = exps_str(space.chart, space.basis[j]);
        RatFunc img = apply(op, RatFunc(space.monomial(j)));
        if (!img.is_polynomial()) {
            item.pass = false;
            item.residual = "non-polynomial image " + img.str();
            report.add(item);
            continue;
        }
        MultiPoly poly = poly_part(img);
        MultiPoly outside = MultiPoly::zero(space.chart);
        for (const auto& [e, c] : poly.terms())
            if (space.weight(e) > space.N)
                outside = outside + MultiPoly::monomial(space.chart, e, c);
        if (!outside.is_zero()) {
            item.pass = false;
            item.residual = "out-of-space remainder " + outside.str();
        }
        report.add(item);
    }
    return report;
}

OperatorMatrix matrix_of(const DiffOp& op, const PolySpace& space) {
    CheckReport inv = invariance_check(op, space);
    if (inv.status != CheckStatus::pass) {
        std::string witness;
        for (const auto& it : inv.items)
            if (!it.pass) { witness = it.label + ": " + it.residual; break; }
        throw std::runtime_error("matrix_of: space is not invariant (" + witness + ")");
    }
    std::size_t n = space.dim();
    std::map<Exponents, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[space.basis[i]] = i;
    OperatorMatrix mat;
    mat.space = space;
    mat.entries.assign(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t j = 0; j < n; ++j) {
        MultiPoly poly = poly_part(apply(op, RatFunc(space.monomial(j))));
        for (const auto& [e, c] : poly.terms()) mat.entries[index.at(e)][j] = c;
    }
    mat.gradedTriangular = true;
    for (std::size_t i = 0; i < n && mat.gradedTriangular; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (mat.entries[i][j] != 0 &&
                space.weight(space.basis[i]) > space.weight(space.basis[j])) {
                mat.gradedTriangular = false;
                break;
            }
    return mat;
}

SpectralShift model_shift(const std::string& model_id, const ModelParams& params) {
    auto is = [&](std::initializer_list<const char*> ids) {
        for (const char* s : ids)
            if (model_id == s) return true;
        return false;
    };
    if (is({"hES_rho", "hQES_rho", "hES_tau", "hQES_tau", "hES_tau12", "hQES_tau12"}))
        return {1, 12 * params.omega * (1 + params.gamma)};
    if (is({"hES_tau1", "hQES_tau1"})) return {1, Rational(0)};
    if (is({"hExact_pst", "hQES_pst", "hExact_pst_r", "hQES_pst_r", "hExact_pst_rr",
            "hQES_pst_rr"}))
        return {-1, 6 * params.omega * (params.d + 4 * params.gammaTilde)};
    if (is({"hExact_pst_d1", "hQES_pst_d1", "hExact_d1_r", "hQES_pst_d1_r"}))
        return {-1, 6 * params.omega};
    return {1, Rational(0)};
}

std::vector<Rational> eigen_exact(const OperatorMatrix& mat, const SpectralShift& shift) {
    if (!mat.gradedTriangular)
        throw std::invalid_argument("eigen_exact needs a graded-triangular matrix; use eigen_numeric");
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < mat.space.dim(); ++i)
        vals.push_back(Rational(shift.sign) * mat.entries[i][i] + shift.offset);
    std::sort(vals.begin(), vals.end());
    return vals;
}

std::vector<EigenPair> eigen_numeric(const OperatorMatrix& mat, const SpectralShift& shift) {
    const std::size_t n = mat.space.dim();
    Eigen::MatrixXd A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = to_d(mat.entries[i][j]);
    Eigen::EigenSolver<Eigen::MatrixXd> solver;
    solver.setMaxIterations(static_cast<Eigen::Index>(30 * n * n));
    solver.compute(A, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigen_numeric: QR iteration did not converge within 30 n^2 sweeps");
    Eigen::MatrixXcd Ac = A.cast<std::complex<double>>();
    std::vector<EigenPair> out;
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> lambda = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        Eigen::VectorXcd v = solver.eigenvectors().col(static_cast<Eigen::Index>(k));
        // one inverse-iteration refinement step
        Eigen::MatrixXcd B = Ac - lambda * Eigen::MatrixXcd::Identity(n, n);
        Eigen::VectorXcd w = B.fullPivLu().solve(v);
        if (w.allFinite() && w.norm() > 0) {
            w.normalize();
            std::complex<double> mu = (w.adjoint() * Ac * w)(0, 0);
            double res_w = (Ac * w - mu * w).norm();
            double res_v = (Ac * v - lambda * v).norm() / v.norm();
            if (res_w < res_v) {
                lambda = mu;
                v = w;
            }
        }
        EigenPair p;
        p.residual = (Ac * v - lambda * v).norm() / v.norm();
        p.value = std::complex<double>(shift.sign, 0) * lambda + to_d(shift.offset);
        out.push_back(p);
    }
    std::sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

std::vector<Rational> closed_form_spectrum(const std::string& model_id, const ModelParams& params,
                                           long N) {
    const Rational& om = params.omega;
    std::vector<Rational> vals;
    auto enumerate = [&](const std::vector<long>& weights, auto&& level_energy) {
        Chart dummy(weights.size(), "x");
        for (std::size_t i = 0; i < weights.size(); ++i) dummy[i] = "x" + std::to_string(i);
        PolySpace sp = basis(dummy, weights, N);
        for (const Exponents& e : sp.basis) vals.push_back(level_energy(sp.weight(e)));
    };
    Rational ground_es = 12 * om * (1 + params.gamma);
    Rational ground_pst = 6 * om * (params.d + 4 * params.gammaTilde);
    if (model_id == "hES_rho")
        enumerate({1, 1, 1}, [&](long w) -> Rational { return 12 * om * Rational(w) + ground_es; });
    else if (model_id == "hES_tau")
        enumerate({1, 2, 3}, [&](long w) -> Rational { return 12 * om * Rational(w) + ground_es; });
    else if (model_id == "hES_tau12")
        enumerate({1, 2}, [&](long w) -> Rational { return 12 * om * Rational(w) + ground_es; });
    else if (model_id == "hES_tau1")
        enumerate({1}, [&](long w) -> Rational { return 12 * om * Rational(w); });
    else if (model_id == "hExact_pst")
        enumerate({1, 2, 3}, [&](long w) -> Rational { return 12 * om * Rational(w) + ground_pst; });
    else if (model_id == "hExact_pst_r")
        enumerate({1, 2}, [&](long w) -> Rational { return 12 * om * Rational(w) + ground_pst; });
    else if (model_id == "hExact_pst_rr")
        enumerate({1}, [&](long w) -> Rational { return 12 * om * Rational(w) + ground_pst; });
    else if (model_id == "hExact_pst_d1")
        enumerate({1, 3}, [&](long w) -> Rational { return 12 * om * Rational(w) + 6 * om; });
    else if (model_id == "hExact_d1_r")
        enumerate({1}, [&](long w) -> Rational { return 12 * om * Rational(w) + 6 * om; });
    else
        throw std::invalid_argument("no printed closed-form spectrum for " + model_id);
    std::sort(vals.begin(), vals.end());
    return vals;
}

CheckReport reducibility_check(const DiffOp& op, const std::vector<long>& sub_charvec, long N) {
    const Chart& ch = op.chart();
    std::size_t k = sub_charvec.size();
    if (k > ch.size())
        throw std::invalid_argument("reducibility_check: sub_charvec longer than chart");
    CheckReport report;
    report.check_id = "spectra/reducibility";
    report.params = {{"N", N}, {"sub_dim", k}};
    // weighted basis over the leading k variables, trailing exponents zero
    std::vector<long> weights(ch.size(), 1);
    for (std::size_t i = 0; i < k; ++i) weights[i] = sub_charvec[i];
    Exponents cur(ch.size(), 0);
    std::vector<Exponents> sub;
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i == k) {
            sub.push_back(cur);
            return;
        }
        for (long e = 0; e * weights[i] <= left; ++e) {
            cur[i] = static_cast<uint32_t>(e);
            rec(i + 1, left - e * weights[i]);
        }
        cur[i] = 0;
    };
    rec(0, N);
    for (const Exponents& e : sub) {
        CheckItem item;
        item.label = exps_str(ch, e);
        RatFunc img = apply(op, RatFunc(MultiPoly::monomial(ch, e, Rational(1))));
        if (!img.is_polynomial()) {
            item.pass = false;
            item.residual = "non-polynomial image " + img.str();
            report.add(item);
            continue;
        }
        MultiPoly poly = poly_part(img);
        MultiPoly outside = MultiPoly::zero(ch);
        for (const auto& [f, c] : poly.terms()) {
            long w = 0;
            bool trailing = false;
            for (std::size_t i = 0; i < f.size(); ++i) {
                w += weights[i] * static_cast<long>(f[i]);
                if (i >= k && f[i] > 0) trailing = true;
            }
            if (trailing || w > N) outside = outside + MultiPoly::monomial(ch, f, c);
        }
        if (!outside.is_zero()) {
            item.pass = false;
            item.residual = "out-of-space remainder " + outside.str();
        }
        report.add(item);
    }
    return report;
}

std::vector<SpectrumRow> spectrum_rows(const std::vector<Rational>& values) {
    std::vector<Rational> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<SpectrumRow> rows;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        SpectrumRow row;
        row.level = static_cast<long>(rows.size());
        row.eigenvalue = sorted[i].get_str();
        row.multiplicity = static_cast<long>(j - i);
        rows.push_back(row);
        i = j;
    }
    return rows;
}

std::vector<SpectrumRow> spectrum_rows(const std::vector<EigenPair>& pairs, double group_tol) {
    std::vector<EigenPair> sorted = pairs;
    std::sort(sorted.begin(), sorted.end(), [](const EigenPair& a, const EigenPair& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    std::vector<SpectrumRow> rows;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        double worst = 0.0;
        while (j < sorted.size() && std::abs(sorted[j].value - sorted[i].value) <= group_tol) {
            worst = std::max(worst, sorted[j].residual);
            ++j;
        }
        SpectrumRow row;
        row.level = static_cast<long>(rows.size());
        std::ostringstream os;
        os << std::setprecision(12) << sorted[i].value.real();
        if (std::abs(sorted[i].value.imag()) > group_tol)
            os << (sorted[i].value.imag() >= 0 ? "+" : "") << std::setprecision(12)
               << sorted[i].value.imag() << "i";
        row.eigenvalue = os.str();
        row.multiplicity = static_cast<long>(j - i);
        row.residual = worst;
        rows.push_back(row);
        i = j;
    }
    return rows;
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
    std::ostringstream os;
    os << "level,eigenvalue,multiplicity,residual\n";
    for (const SpectrumRow& r : rows) {
        os << r.level << "," << r.eigenvalue << "," << r.multiplicity << ","
           << std::setprecision(6) << r.residual << "\n";
    }
    return os.str();
}

nlohmann::json spectrum_json(const std::string& model_id, const std::string& source,
                             const SpectralShift& shift, const std::vector<SpectrumRow>& rows) {
    nlohmann::json j;
    j["model"] = model_id;
    j["source"] = source;
    j["convention"] = "E = sign * (algebraic operator eigenvalue) + offset";
    j["sign"] = shift.sign;
    j["offset"] = shift.offset.get_str();
    j["rows"] = nlohmann::json::array();
    for (const SpectrumRow& r : rows) {
        j["rows"].push_back({{"level", r.level},
                             {"eigenvalue", r.eigenvalue},
                             {"multiplicity", r.multiplicity},
                             {"residual", r.residual}});
    }
    return j;
}

}  // namespace tba

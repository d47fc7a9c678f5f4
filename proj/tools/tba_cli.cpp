#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "tba/liealg.hpp"
#include "tba/spectra.hpp"
#include "tba/suites.hpp"

using namespace tba;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct SpectralInfo {
    const Chart& chart;
    std::vector<long> weights;
};

// Spectral models the `spectrum` command accepts, with the characteristic
// vector of the invariant flag each one acts on.
const std::map<std::string, SpectralInfo>& spectral_models() {
    static const std::map<std::string, SpectralInfo> table{
        {"hES_rho", {chart_rho(), {1, 1, 1}}},
        {"hQES_rho", {chart_rho(), {1, 1, 1}}},
        {"hES_tau", {chart_tau(), {1, 2, 3}}},
        {"hQES_tau", {chart_tau(), {1, 2, 3}}},
        {"hES_tau12", {chart_tau12(), {1, 2}}},
        {"hQES_tau12", {chart_tau12(), {1, 2}}},
        {"hES_tau1", {chart_tau1(), {1}}},
        {"hQES_tau1", {chart_tau1(), {1}}},
        {"hExact_pst", {chart_pst(), {1, 2, 3}}},
        {"hQES_pst", {chart_pst(), {1, 2, 3}}},
        {"hExact_pst_r", {chart_ps(), {1, 2}}},
        {"hQES_pst_r", {chart_ps(), {1, 2}}},
        {"hExact_pst_rr", {chart_p(), {1}}},
        {"hQES_pst_rr", {chart_p(), {1}}},
        {"hExact_pst_d1", {chart_pt(), {1, 3}}},
        {"hQES_pst_d1", {chart_pt(), {1, 3}}},
        {"hExact_d1_r", {chart_p(), {1}}},
        {"hQES_pst_d1_r", {chart_p(), {1}}},
    };
    return table;
}

std::array<Rational, 3> parse_masses(const std::string& text) {
    std::array<Rational, 3> m;
    std::stringstream ss(text);
    std::string part;
    std::size_t i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= 3) throw std::invalid_argument("expected three masses, got more");
        m[i++] = parse_rational(part);
    }
    if (i != 3) throw std::invalid_argument("expected three comma-separated masses");
    for (const Rational& q : m)
        if (q <= 0) throw std::invalid_argument("masses must be positive");
    return m;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

// -------------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, const SuiteConfig& cfg, const std::string& format,
               const std::string& out_path) {
    std::vector<CheckReport> checks = run_suite(suite, cfg);

    long pass = 0, fail = 0, erratum = 0;
    for (const CheckReport& r : checks) {
        if (r.status == CheckStatus::pass) ++pass;
        else if (r.status == CheckStatus::fail) ++fail;
        else ++erratum;
    }
    bool ok = fail == 0;

    std::ostringstream os;
    if (format == "json") {
        nlohmann::json j;
        j["schema"] = "report/v1";
        j["command"] = "verify";
        j["suite"] = suite;
        j["seed"] = cfg.seed;
        j["masses"] = {rational_str(cfg.masses[0]), rational_str(cfg.masses[1]),
                       rational_str(cfg.masses[2])};
        j["checks"] = nlohmann::json::array();
        j["errata"] = nlohmann::json::array();
        for (const CheckReport& r : checks) {
            j["checks"].push_back(r.to_json());
            if (r.status == CheckStatus::erratum)
                j["errata"].push_back({{"check_id", r.check_id}, {"note", r.note}});
        }
        j["summary"] = {{"pass", pass}, {"fail", fail}, {"erratum", erratum}};
        j["ok"] = ok;
        os << j.dump(2) << "\n";
    } else if (format == "csv") {
        os << "check_id,status,items_passed,items_total\n";
        for (const CheckReport& r : checks) {
            long good = 0;
            for (const CheckItem& it : r.items)
                if (it.pass) ++good;
            os << r.check_id << "," << status_str(r.status) << "," << good << ","
               << r.items.size() << "\n";
        }
    } else {
        for (const CheckReport& r : checks) {
            if (r.status == CheckStatus::pass) {
                os << "PASS    " << r.check_id << "\n";
            } else if (r.status == CheckStatus::erratum) {
                os << "ERRATUM " << r.check_id << "\n";
            } else {
                os << "FAIL    " << r.check_id << "\n";
                for (const CheckItem& it : r.items)
                    if (!it.pass) os << "        " << it.label << "\n";
            }
        }
        os << "\n" << pass << " passed, " << fail << " failed, " << erratum
           << " published-form errata\n";
        if (erratum > 0) {
            os << "\nErrata (published forms that disagree with the derived ones; "
                  "these do not fail the run):\n";
            for (const CheckReport& r : checks)
                if (r.status == CheckStatus::erratum)
                    os << "  " << r.check_id << ": " << r.note << "\n";
        }
    }
    emit(out_path, os.str());
    return ok ? kExitPass : kExitCheckFailure;
}

// ------------------------------------------------------------------ spectrum

int cmd_spectrum(const std::string& model, const ModelParams& P, const std::string& source,
                 const std::string& format, const std::string& out_path) {
    auto it = spectral_models().find(model);
    if (it == spectral_models().end()) {
        std::cerr << "error: '" << model << "' is not a spectral model; see `catalog`\n";
        return kExitUsage;
    }
    const SpectralInfo& info = it->second;
    SpectralShift shift = model_shift(model, P);

    std::vector<SpectrumRow> rows;
    if (source == "closed-form") {
        rows = spectrum_rows(closed_form_spectrum(model, P, P.N));
    } else {
        OperatorMatrix mat = matrix_of(operator_of(model, P), basis(info.chart, info.weights, P.N));
        if (source == "exact") {
            if (!mat.gradedTriangular) {
                std::cerr << "error: " << model
                          << " is not graded-triangular on this space; use --source numeric\n";
                return kExitUsage;
            }
            rows = spectrum_rows(eigen_exact(mat, shift));
        } else {
            rows = spectrum_rows(eigen_numeric(mat, shift), 1e-9);
        }
    }

    std::ostringstream os;
    if (format == "json") {
        os << spectrum_json(model, source, shift, rows).dump(2) << "\n";
    } else if (format == "csv") {
        os << spectrum_csv(rows);
    } else {
        os << "# model " << model << ", N = " << P.N << ", source = " << source << "\n";
        os << "# convention: E = " << (shift.sign < 0 ? "-" : "+")
           << "lambda + " << rational_str(shift.offset)
           << "  (lambda: matrix eigenvalue on the invariant space)\n";
        os << "level  eigenvalue  multiplicity  residual\n";
        for (const SpectrumRow& r : rows)
            os << r.level << "  " << r.eigenvalue << "  " << r.multiplicity << "  "
               << r.residual << "\n";
    }
    emit(out_path, os.str());
    return kExitPass;
}

// ------------------------------------------------------------------- catalog

int cmd_catalog(bool as_json, const std::string& filter, const std::string& format,
                const std::string& out_path) {
    std::vector<CatalogEntry> entries;
    for (const CatalogEntry& e : catalog())
        if (filter.empty() || e.id.find(filter) != std::string::npos) entries.push_back(e);

    std::ostringstream os;
    if (as_json || format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const CatalogEntry& e : entries)
            j.push_back({{"id", e.id},
                         {"kind", e.kind},
                         {"chart", e.chart},
                         {"params", e.params},
                         {"description", e.description}});
        os << j.dump(2) << "\n";
    } else if (format == "csv") {
        os << "id,kind,chart,params\n";
        for (const CatalogEntry& e : entries)
            os << e.id << "," << e.kind << "," << e.chart << "," << e.params << "\n";
    } else {
        for (const CatalogEntry& e : entries) {
            os << e.id;
            if (!e.chart.empty()) os << "  [" << e.chart << "]";
            os << "  (" << e.kind << ")";
            if (!e.params.empty()) os << "  params: " << e.params;
            os << "\n    " << e.description << "\n";
        }
        os << entries.size() << " entries\n";
    }
    emit(out_path, os.str());
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic constructor and verifier for the reduced three-body "
                 "operator catalog"};
    app.require_subcommand(1);

    unsigned long seed = 7;
    std::string out_path;
    std::string format = "text";
    app.add_option("--seed", seed, "seed for random rational parameter draws");
    app.add_option("--out", out_path, "write output to this file instead of stdout");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    // verify
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    std::string masses_text;
    verify->add_option("suite", suite, "one of: identities, charts, spectra, geometry, liealg, appendix, all")
        ->required();
    verify->add_option("--masses", masses_text, "three comma-separated rational masses, e.g. 1/1,2/1,3/1");

    // spectrum
    CLI::App* spectrum = app.add_subcommand("spectrum", "compute the algebraic spectrum of a model");
    std::string model, source = "exact";
    long N = 0;
    std::string d_text, gamma_text, gammaT_text, omega_text, A_text, k_text;
    spectrum->add_option("model", model, "spectral model id; see `catalog`")->required();
    spectrum->add_option("--N", N, "flag level (dimension parameter of the invariant space)")
        ->required();
    spectrum->add_option("--source", source, "eigenvalue source")
        ->check(CLI::IsMember({"exact", "numeric", "closed-form"}));
    spectrum->add_option("--d", d_text, "space dimension (rational)");
    spectrum->add_option("--gamma", gamma_text, "pair coupling exponent (rational)");
    spectrum->add_option("--gammaT", gammaT_text, "area coupling exponent (rational)");
    spectrum->add_option("--omega", omega_text, "oscillator frequency (rational)");
    spectrum->add_option("--A", A_text, "sextic coupling (rational)");
    spectrum->add_option("--k", k_text, "dihedral deformation parameter (rational)");

    // catalog
    CLI::App* cat = app.add_subcommand("catalog", "list the operator/model catalog");
    bool cat_json = false;
    std::string filter;
    cat->add_flag("--json", cat_json, "emit the catalog as JSON");
    cat->add_option("--filter", filter, "only ids containing this substring");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help requests exit 0; anything else is a usage error
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*verify) {
            SuiteConfig cfg;
            cfg.seed = seed;
            if (!masses_text.empty()) cfg.masses = parse_masses(masses_text);
            return cmd_verify(suite, cfg, format, out_path);
        }
        if (*spectrum) {
            ModelParams P;
            P.N = N;
            if (!d_text.empty()) P.d = parse_rational(d_text);
            if (!gamma_text.empty()) P.gamma = parse_rational(gamma_text);
            if (!gammaT_text.empty()) P.gammaTilde = parse_rational(gammaT_text);
            if (!omega_text.empty()) P.omega = parse_rational(omega_text);
            if (!A_text.empty()) P.A = parse_rational(A_text);
            if (!k_text.empty()) P.k = parse_rational(k_text);
            P.validate();
            return cmd_spectrum(model, P, source, format, out_path);
        }
        return cmd_catalog(cat_json, filter, format, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
}

#pragma once

#include <array>
#include <string>
#include <vector>

#include "tba/models.hpp"
#include "tba/report.hpp"

namespace tba {

// Configuration shared by every verification suite. The seed drives all
// random rational parameter draws, so a fixed config yields a byte-identical
// report.
struct SuiteConfig {
    unsigned long seed = 7;
    std::array<Rational, 3> masses{Rational(1), Rational(2), rat(3, 2)};
};

const std::vector<std::string>& suite_names();

// Runs one named suite ("identities", "charts", "spectra", "geometry",
// "liealg", "appendix") or "all". Throws std::invalid_argument on an unknown
// suite name. Check failures are reported, not thrown.
std::vector<CheckReport> run_suite(const std::string& suite, const SuiteConfig& cfg);

}  // namespace tba

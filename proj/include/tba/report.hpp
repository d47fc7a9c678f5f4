#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace tba {

enum class CheckStatus { pass, fail, erratum };

std::string status_str(CheckStatus s);

// One verified item inside a check: a basis monomial, a sample point, or a
// named sub-identity, together with its residual when nonzero.
struct CheckItem {
    std::string label;
    std::string residual;  // empty when the item passed
    bool pass = true;
};

struct CheckReport {
    std::string check_id;
    nlohmann::json params = nlohmann::json::object();
    CheckStatus status = CheckStatus::pass;
    std::vector<CheckItem> items;
    std::string note;  // free-form context, e.g. erratum description

    bool ok() const { return status != CheckStatus::fail; }
    void add(CheckItem item);
    nlohmann::json to_json() const;
};

}  // namespace tba

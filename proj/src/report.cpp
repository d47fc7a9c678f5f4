#include "tba/report.hpp"

namespace tba {

std::string status_str(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::erratum: return "erratum";
    }
    return "fail";
}

void CheckReport::add(CheckItem item) {
    if (!item.pass && status == CheckStatus::pass) status = CheckStatus::fail;
    items.push_back(std::move(item));
}

nlohmann::json CheckReport::to_json() const {
    nlohmann::json j;
    j["check_id"] = check_id;
    j["params"] = params;
    j["status"] = status_str(status);
    j["items"] = nlohmann::json::array();
    for (const auto& it : items) {
        nlohmann::json e;
        e["basis"] = it.label;
        e["residual"] = it.residual;
        e["pass"] = it.pass;
        j["items"].push_back(std::move(e));
    }
    if (!note.empty()) j["note"] = note;
    return j;
}

}  // namespace tba

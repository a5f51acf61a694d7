#include "chiral/report.hpp"

namespace chiral {

nlohmann::json to_json(const CheckReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["pass"] = r.pass;
    if (std::holds_alternative<double>(r.measured))
        j["measured"] = std::get<double>(r.measured);
    else
        j["measured"] = std::get<std::string>(r.measured);
    j["tolerance"] = r.tolerance;
    j["claim"] = r.claim;
    return j;
}

nlohmann::json to_json(const std::vector<CheckReport>& rs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rs) arr.push_back(to_json(r));
    return arr;
}

bool all_pass(const std::vector<CheckReport>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

}  // namespace chiral

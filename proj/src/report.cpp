#include "ainf/report.hpp"

#include <json.hpp>

namespace ainf {

bool VerifyReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void VerifyReport::add(const std::string& name, bool ok, const std::string& details) {
    checks.push_back({name, ok, details});
}

std::string VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["inputs"] = inputs;
    j["pass"] = pass();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["status"] = c.pass ? "pass" : "fail";
        if (!c.details.empty()) jc["details"] = c.details;
        j["checks"].push_back(jc);
    }
    return j.dump(2) + "\n";
}

std::string VerifyReport::summary() const {
    std::string out;
    for (const auto& c : checks)
        out += std::string(c.pass ? "PASS" : "FAIL") + "  " + c.name +
               (c.details.empty() || c.pass ? "" : "  [" + c.details + "]") + "\n";
    return out;
}

}  // namespace ainf

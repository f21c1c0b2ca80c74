#include "burniat5/report.hpp"

#include <json.hpp>
#include <sstream>

namespace bur5 {

const char* kEngineVersion = "1.0.0";

bool Report::all_pass() const {
    for (const auto& it : items)
        if (!it.pass) return false;
    return true;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "# " << command << " (engine " << version << ")\n";
    for (const auto& it : items) {
        os << (it.pass ? "pass" : "FAIL") << "  " << it.name;
        if (!it.expected.empty()) os << "  expected=" << it.expected;
        if (!it.computed.empty()) os << "  computed=" << it.computed;
        if (!it.citation.empty()) os << "  [" << it.citation << "]";
        os << "\n";
    }
    os << (all_pass() ? "ok" : "FAILED") << " (" << items.size() << " items, " << wall_ms
       << " ms)\n";
    return os.str();
}

std::string Report::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["version"] = version;
    j["items"] = nlohmann::json::array();
    for (const auto& it : items) {
        nlohmann::json ji;
        ji["name"] = it.name;
        ji["expected"] = it.expected;
        ji["computed"] = it.computed;
        ji["pass"] = it.pass;
        ji["citation"] = it.citation;
        j["items"].push_back(ji);
    }
    j["pass"] = all_pass();
    j["wall_ms"] = wall_ms;
    return j.dump(2);
}

}  // namespace bur5

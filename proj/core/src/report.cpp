#include "mellinlab/report.hpp"

#include <json.hpp>

#include <stdexcept>

namespace mellinlab {

double Report::get(const std::string& key) const {
    for (const auto& [k, v] : measured)
        if (k == key) return v;
    throw std::out_of_range("Report::get: no measurement '" + key + "' in " + name);
}

bool Report::has(const std::string& key) const {
    for (const auto& [k, v] : measured)
        if (k == key) return true;
    return false;
}

void Report::require(bool cond, const std::string& note_on_fail) {
    if (!cond) {
        pass = false;
        notes.push_back(note_on_fail);
    }
}

std::string Report::json() const {
    nlohmann::json j;
    j["name"] = name;
    j["pass"] = pass;
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [k, v] : measured) m[k] = v;
    j["measured"] = m;
    j["notes"] = notes;
    return j.dump();
}

}  // namespace mellinlab

// Verification reports: named measured quantities plus a pass/fail verdict,
// serializable to JSON for the CLI and the acceptance suites.
#pragma once

#include <map>
#include <string>
#include <vector>

namespace mellinlab {

struct Report {
    std::string name;
    bool pass = true;
    std::vector<std::pair<std::string, double>> measured;
    std::vector<std::string> notes;

    void set(const std::string& key, double value) { measured.emplace_back(key, value); }
    double get(const std::string& key) const;
    bool has(const std::string& key) const;
    void require(bool cond, const std::string& note_on_fail);
    std::string json() const;
};

}  // namespace mellinlab

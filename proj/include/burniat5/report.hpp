#pragma once

#include <string>
#include <vector>

namespace bur5 {

// Machine-readable run report. The comparison payload (items) carries no
// timestamps, so reports for identical inputs are identical; wall time lives
// outside it.
struct ReportItem {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
    std::string citation;  // tag into the corpus index
};

struct Report {
    std::string command;
    std::string version;
    std::vector<ReportItem> items;
    double wall_ms = 0;

    bool all_pass() const;
    std::string to_text() const;
    std::string to_json() const;
};

extern const char* kEngineVersion;

}  // namespace bur5

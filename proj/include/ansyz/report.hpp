#pragma once

#include <string>
#include <vector>

namespace ansyz::report {

enum class Status { pass, fail, not_stabilized, resolved };

std::string status_str(Status s);

// One verification record. The anchor is a fixed one-line statement of the
// property checked, so each check id always carries the same anchor text.
struct Record {
    std::string id;
    Status status = Status::fail;
    std::string anchor;
    std::string witness;
};

struct Report {
    std::string tool = "ansyz 0.1.0";
    std::string config;
    std::vector<Record> records;

    void add(const std::string& id, Status st, const std::string& anchor, const std::string& witness = "");
    bool all_pass() const;  // pass and resolved both count
    std::string render() const;
};

} // namespace ansyz::report

#include "ansyz/report.hpp"

#include <algorithm>
#include <sstream>

namespace ansyz::report {

std::string status_str(Status s)
{
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "FAIL";
        case Status::not_stabilized: return "not-stabilized";
        case Status::resolved: return "resolved";
    }
    return "?";
}

void Report::add(const std::string& id, Status st, const std::string& anchor, const std::string& witness)
{
    records.push_back(Record{id, st, anchor, witness});
}

bool Report::all_pass() const
{
    for (auto& r : records)
        if (r.status == Status::fail || r.status == Status::not_stabilized) return false;
    return true;
}

std::string Report::render() const
{
    std::vector<Record> sorted = records;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Record& a, const Record& b) { return a.id < b.id; });
    std::ostringstream out;
    out << "ansyz-report/1\n";
    out << "tool " << tool << "\n";
    out << "config " << config << "\n";
    size_t pass = 0, fail = 0, notstab = 0, resolved = 0;
    for (auto& r : sorted) {
        out << "check " << r.id << " status=" << status_str(r.status) << " property=\"" << r.anchor << "\"";
        if (!r.witness.empty()) out << " witness=\"" << r.witness << "\"";
        out << "\n";
        switch (r.status) {
            case Status::pass: ++pass; break;
            case Status::fail: ++fail; break;
            case Status::not_stabilized: ++notstab; break;
            case Status::resolved: ++resolved; break;
        }
    }
    out << "summary checks=" << sorted.size() << " pass=" << pass << " fail=" << fail
        << " not-stabilized=" << notstab << " resolved=" << resolved << "\n";
    return out.str();
}

} // namespace ansyz::report

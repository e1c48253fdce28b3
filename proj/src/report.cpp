#include "siltlab/report.hpp"

#include <sstream>

namespace siltlab {

bool Report::expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond) {
        failures.push_back(what);
    }
    return cond;
}

void Report::merge(const Report& other) {
    checks += other.checks;
    for (const auto& f : other.failures) {
        failures.push_back(other.title.empty() ? f : other.title + ": " + f);
    }
    indeterminate = indeterminate || other.indeterminate;
    for (const auto& n : other.notes) {
        notes.push_back(other.title.empty() ? n : other.title + ": " + n);
    }
}

Json Report::to_json() const {
    Json j;
    j["title"] = title;
    j["summary"] = summary;
    j["status"] = failures.empty() ? (indeterminate ? "indeterminate" : "pass") : "fail";
    j["checks"] = checks;
    j["failures"] = failures;
    j["notes"] = notes;
    j["data"] = data;
    return j;
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << title << ": " << (failures.empty() ? (indeterminate ? "INDETERMINATE" : "PASS") : "FAIL");
    if (!summary.empty()) {
        out << " (" << summary << ")";
    }
    out << ", " << checks << " checks";
    if (!failures.empty()) {
        out << ", " << failures.size() << " failures";
    }
    out << "\n";
    for (const auto& n : notes) {
        out << "  note: " << n << "\n";
    }
    for (const auto& f : failures) {
        out << "  failure: " << f << "\n";
    }
    return out.str();
}

} // namespace siltlab

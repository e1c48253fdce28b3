#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace siltlab {

using Json = nlohmann::ordered_json;

/// Outcome of a verifier: counted checks with their failure messages, plus
/// free-form data. Failures are content, not exceptions.
struct Report {
    std::string title;
    std::string summary;
    long long checks = 0;
    std::vector<std::string> failures;
    bool indeterminate = false;
    std::vector<std::string> notes;
    Json data = Json::object();

    bool expect(bool cond, const std::string& what);
    void merge(const Report& other);
    bool passed() const { return failures.empty() && !indeterminate; }

    Json to_json() const;
    std::string to_text() const;
};

} // namespace siltlab

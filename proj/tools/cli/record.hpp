#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rigidity::cli {

// Ordered key/value record printed either as one `key=value` line or as a
// single-line JSON object with the same keys.
class Record {
public:
    using Value = std::variant<std::string, double, long long>;

    Record& add(std::string key, std::string value);
    Record& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
    Record& add(std::string key, double value);
    Record& add(std::string key, int value) { return add(std::move(key), static_cast<long long>(value)); }
    Record& add(std::string key, long long value);

    const std::vector<std::pair<std::string, Value>>& fields() const { return fields_; }

    std::string text() const;
    std::string json() const;

private:
    std::vector<std::pair<std::string, Value>> fields_;
};

}  // namespace rigidity::cli

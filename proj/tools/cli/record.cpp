#include "record.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>

namespace rigidity::cli {

namespace {

bool needs_quotes(const std::string& s) {
    if (s.empty()) return true;
    for (char c : s)
        if (c == ' ' || c == '"' || c == '=' || c == '\\' || c == '\t' || c == '\n') return true;
    return false;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

Record& Record::add(std::string key, std::string value) {
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
}

Record& Record::add(std::string key, double value) {
    fields_.emplace_back(std::move(key), value);
    return *this;
}

Record& Record::add(std::string key, long long value) {
    fields_.emplace_back(std::move(key), value);
    return *this;
}

std::string Record::text() const {
    std::string out;
    for (const auto& [key, value] : fields_) {
        if (!out.empty()) out += ' ';
        out += key;
        out += '=';
        if (const auto* s = std::get_if<std::string>(&value))
            out += needs_quotes(*s) ? quote(*s) : *s;
        else if (const auto* d = std::get_if<double>(&value))
            out += fmt::format("{}", *d);
        else
            out += fmt::format("{}", std::get<long long>(value));
    }
    return out;
}

std::string Record::json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [key, value] : fields_) {
        if (const auto* s = std::get_if<std::string>(&value))
            j[key] = *s;
        else if (const auto* d = std::get_if<double>(&value))
            j[key] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(fmt::format("{}", *d));
        else
            j[key] = std::get<long long>(value);
    }
    return j.dump();
}

}  // namespace rigidity::cli

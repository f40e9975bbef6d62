#include "qdc/textio.hpp"

#include "qdc/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace qdc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string format_exact(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string format_output(double v) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.12g", v);
    return std::string(buf.data());
}

double parse_double(std::string_view text, std::string_view what) {
    const auto t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw DomainError("invalid number for " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return v;
}

long long parse_int(std::string_view text, std::string_view what) {
    const auto t = trim(text);
    long long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
        throw DomainError("invalid integer for " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return v;
}

double KeyValueSpec::number(std::string_view key) const {
    const auto it = values.find(key);
    if (it == values.end()) throw DomainError(kind + ": missing parameter '" + std::string(key) + "'");
    return parse_double(it->second, kind + "." + std::string(key));
}

double KeyValueSpec::number_or(std::string_view key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

long long KeyValueSpec::integer(std::string_view key) const {
    const auto it = values.find(key);
    if (it == values.end()) throw DomainError(kind + ": missing parameter '" + std::string(key) + "'");
    return parse_int(it->second, kind + "." + std::string(key));
}

std::string KeyValueSpec::text_or(std::string_view key, std::string_view fallback) const {
    const auto it = values.find(key);
    return it == values.end() ? std::string(fallback) : it->second;
}

void KeyValueSpec::allow_only(std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, value] : values) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw DomainError(kind + ": unknown parameter '" + key + "'");
        }
    }
}

KeyValueSpec parse_kv_spec(std::string_view text) {
    KeyValueSpec spec;
    const auto colon = text.find(':');
    spec.kind = lower(trim(text.substr(0, colon)));
    if (spec.kind.empty()) throw DomainError("empty specifier: '" + std::string(text) + "'");
    if (colon == std::string_view::npos) return spec;

    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw DomainError(spec.kind + ": expected key=value, got '" + std::string(item) + "'");
        }
        auto key = lower(trim(item.substr(0, eq)));
        if (!spec.values.emplace(key, std::string(trim(item.substr(eq + 1)))).second) {
            throw DomainError(spec.kind + ": duplicate parameter '" + key + "'");
        }
    }
    return spec;
}

}  // namespace qdc

#pragma once

// Number formatting and the `kind:key=value,...` specifier syntax used on the
// command line for states and channels.

#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>

namespace qdc {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_exact(double v);

/// 12 significant digits, used for reported outputs.
std::string format_output(double v);

/// Strict full-string parse; throws DomainError mentioning `what` on failure.
double parse_double(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);

struct KeyValueSpec {
    std::string kind;
    std::map<std::string, std::string, std::less<>> values;

    bool has(std::string_view key) const { return values.find(key) != values.end(); }
    double number(std::string_view key) const;
    double number_or(std::string_view key, double fallback) const;
    long long integer(std::string_view key) const;
    std::string text_or(std::string_view key, std::string_view fallback) const;
    /// Throws DomainError naming the first key not in `allowed`.
    void allow_only(std::initializer_list<std::string_view> allowed) const;
};

/// "kind" or "kind:k1=v1,k2=v2". Kind and keys are lower-cased; whitespace
/// around tokens is ignored.
KeyValueSpec parse_kv_spec(std::string_view text);

}  // namespace qdc

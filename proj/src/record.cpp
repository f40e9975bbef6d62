#include "qdc/record.hpp"

#include "qdc/errors.hpp"
#include "qdc/textio.hpp"

#include <json.hpp>

#include <charconv>

#ifndef QDC_VERSION
#define QDC_VERSION "0.0.0"
#endif

namespace qdc {

namespace {

using Json = nlohmann::ordered_json;

std::string opt_text(const std::optional<double>& v, bool output) {
    if (!v) return {};
    return output ? format_output(*v) : format_exact(*v);
}

template <class T>
std::string opt_int_text(const std::optional<T>& v) {
    return v ? std::to_string(*v) : std::string();
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

bool parse_bool(std::string_view s, std::string_view what) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw DomainError(std::string(what) + ": expected true or false, got '" + std::string(s) + "'");
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw DomainError(std::string(what) + ": not an unsigned integer: '" + std::string(s) + "'");
    return v;
}

std::optional<double> opt_double(std::string_view s, std::string_view what) {
    if (s.empty()) return std::nullopt;
    return parse_double(s, what);
}

// Output values are stored at the precision they are printed with.
double rounded(double v) { return parse_double(format_output(v), "output"); }

Json json_value(const std::optional<double>& v, bool output) {
    if (!v) return nullptr;
    return output ? rounded(*v) : *v;
}

template <class T>
Json json_value(const std::optional<T>& v) {
    if (!v) return nullptr;
    return *v;
}

RunRecord inputs(const Problem& problem, bool optimized) {
    RunRecord r;
    r.state = state_name(problem.state);
    r.state_params = state_params(problem.state);
    r.n_senders = problem.layout.n_senders;
    r.receivers = problem.layout.receiver_count();
    if (problem.layout.two_receivers) r.split = problem.layout.split;
    r.channel = channel_name(problem.channel.kind);
    r.alpha = problem.channel.alpha;
    r.p = problem.channel.p;
    r.epsilon = problem.channel.epsilon;
    r.draw_policy = draw_policy_name(problem.channel.draw);
    r.optimized = optimized;
    r.opt_seed = problem.opt.seed;
    r.opt_population = problem.opt.population_for(problem.layout.n_senders);
    r.opt_max_evals = problem.opt.max_evaluations;
    r.opt_restarts = problem.opt.restarts;
    r.opt_tolerance = problem.opt.tolerance;
    r.version = tool_version();
    return r;
}

}  // namespace

std::string tool_version() { return QDC_VERSION; }

RunRecord make_record(const Problem& problem) {
    return inputs(problem, problem.opt.enabled && !problem.channel.is_covariant());
}

RunRecord make_record(const Problem& problem, const CapacityResult& result) {
    RunRecord r = inputs(problem, result.optimized);
    r.capacity_bits = result.capacity_bits;
    r.classical_bound = result.classical_bound_bits;
    r.dense_codeable = result.dense_codeable;
    return r;
}

RunRecord make_record(const Problem& problem, const QuenchConfig& qc, const QuenchedResult& result) {
    RunRecord r = inputs(problem, qc.optimize_per_realization);
    r.capacity_bits = result.mean_capacity_bits;
    r.classical_bound = result.classical_bound_bits;
    r.dense_codeable = result.mean_capacity_bits > result.classical_bound_bits + kDenseCodingSlack;
    r.std_error = result.std_error_bits;
    r.realizations = result.realizations_used;
    r.master_seed = qc.master_seed;
    return r;
}

RunRecord make_record(const Problem& problem, const CriticalStrengths& cs, const std::optional<QuenchConfig>& qc) {
    RunRecord r = qc ? inputs(problem, qc->optimize_per_realization) : make_record(problem);
    r.p.reset();
    if (qc) {
        r.realizations = qc->realizations;
        r.master_seed = qc->master_seed;
    }
    r.p_c = cs.p_c;
    r.p_r = cs.p_r;
    r.p_a = cs.p_a;
    r.bracket_resolution = cs.bracket_resolution;
    return r;
}

Problem problem_from_record(const RunRecord& record) {
    Problem pr;
    pr.state = parse_state(record.state_params.empty() ? record.state : record.state + ":" + record.state_params);
    pr.layout.n_senders = record.n_senders;
    if (record.receivers != 1 && record.receivers != 2) throw DomainError("record: receivers must be 1 or 2");
    pr.layout.two_receivers = record.receivers == 2;
    pr.layout.split = record.split.value_or(1);
    pr.channel = parse_channel(record.channel + ":alpha=" + format_exact(record.alpha) +
                               ",p=" + format_exact(record.p.value_or(0.0)) + ",eps=" + format_exact(record.epsilon) +
                               ",draw=" + record.draw_policy);
    pr.opt.population = record.opt_population;
    pr.opt.max_evaluations = record.opt_max_evals;
    pr.opt.restarts = record.opt_restarts;
    pr.opt.tolerance = record.opt_tolerance;
    pr.opt.seed = record.opt_seed;
    pr.opt.enabled = record.optimized || pr.channel.is_random();
    validate(pr);
    return pr;
}

std::optional<QuenchConfig> quench_from_record(const RunRecord& record) {
    if (!record.realizations || !record.master_seed) return std::nullopt;
    QuenchConfig qc;
    qc.realizations = *record.realizations;
    qc.master_seed = *record.master_seed;
    qc.optimize_per_realization = record.optimized;
    return qc;
}

const std::vector<std::string>& csv_header() {
    static const std::vector<std::string> header = {
        "state",        "state_params",    "n_senders",       "receivers",    "split",         "channel",
        "alpha",        "p",               "epsilon",         "draw_policy",  "optimized",     "capacity_bits",
        "classical_bound", "dense_codeable", "std_error",     "realizations", "master_seed",   "opt_seed",
        "tool_version", "opt_population",  "opt_max_evals",   "opt_restarts", "opt_tolerance", "p_c",
        "p_r",          "p_a",             "bracket_resolution"};
    return header;
}

std::string csv_header_line() {
    std::string line;
    for (const auto& h : csv_header()) line += (line.empty() ? "" : ",") + h;
    return line;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r' && c != '\n') {
            fields.back() += c;
        }
    }
    if (quoted) throw DomainError("csv: unterminated quoted field");
    return fields;
}

std::string to_csv_row(const RunRecord& r) {
    const std::vector<std::string> fields = {
        r.state,
        r.state_params,
        std::to_string(r.n_senders),
        std::to_string(r.receivers),
        opt_int_text(r.split),
        r.channel,
        format_exact(r.alpha),
        opt_text(r.p, false),
        format_exact(r.epsilon),
        r.draw_policy,
        bool_text(r.optimized),
        opt_text(r.capacity_bits, true),
        opt_text(r.classical_bound, true),
        r.dense_codeable ? bool_text(*r.dense_codeable) : std::string(),
        opt_text(r.std_error, true),
        opt_int_text(r.realizations),
        opt_int_text(r.master_seed),
        std::to_string(r.opt_seed),
        r.version,
        std::to_string(r.opt_population),
        std::to_string(r.opt_max_evals),
        std::to_string(r.opt_restarts),
        format_exact(r.opt_tolerance),
        opt_text(r.p_c, true),
        opt_text(r.p_r, true),
        opt_text(r.p_a, true),
        opt_text(r.bracket_resolution, false),
    };
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_escape(fields[i]);
    return line;
}

RunRecord from_csv_row(std::string_view line) {
    const auto f = csv_split(line);
    if (f.size() != csv_header().size())
        throw DomainError("csv: expected " + std::to_string(csv_header().size()) + " fields, got " +
                          std::to_string(f.size()));
    RunRecord r;
    r.state = f[0];
    r.state_params = f[1];
    r.n_senders = static_cast<int>(parse_int(f[2], "n_senders"));
    r.receivers = static_cast<int>(parse_int(f[3], "receivers"));
    if (!f[4].empty()) r.split = static_cast<int>(parse_int(f[4], "split"));
    r.channel = f[5];
    r.alpha = parse_double(f[6], "alpha");
    r.p = opt_double(f[7], "p");
    r.epsilon = parse_double(f[8], "epsilon");
    r.draw_policy = f[9];
    r.optimized = parse_bool(f[10], "optimized");
    r.capacity_bits = opt_double(f[11], "capacity_bits");
    r.classical_bound = opt_double(f[12], "classical_bound");
    if (!f[13].empty()) r.dense_codeable = parse_bool(f[13], "dense_codeable");
    r.std_error = opt_double(f[14], "std_error");
    if (!f[15].empty()) r.realizations = parse_int(f[15], "realizations");
    if (!f[16].empty()) r.master_seed = parse_u64(f[16], "master_seed");
    r.opt_seed = parse_u64(f[17], "opt_seed");
    r.version = f[18];
    r.opt_population = static_cast<int>(parse_int(f[19], "opt_population"));
    r.opt_max_evals = parse_int(f[20], "opt_max_evals");
    r.opt_restarts = static_cast<int>(parse_int(f[21], "opt_restarts"));
    r.opt_tolerance = parse_double(f[22], "opt_tolerance");
    r.p_c = opt_double(f[23], "p_c");
    r.p_r = opt_double(f[24], "p_r");
    r.p_a = opt_double(f[25], "p_a");
    r.bracket_resolution = opt_double(f[26], "bracket_resolution");
    return r;
}

std::string to_json(const RunRecord& r) {
    Json j;
    j["state"] = r.state;
    j["state_params"] = r.state_params;
    j["n_senders"] = r.n_senders;
    j["receivers"] = r.receivers;
    j["split"] = json_value(r.split);
    j["channel"] = r.channel;
    j["alpha"] = r.alpha;
    j["p"] = json_value(r.p, false);
    j["epsilon"] = r.epsilon;
    j["draw_policy"] = r.draw_policy;
    j["optimized"] = r.optimized;
    j["capacity_bits"] = json_value(r.capacity_bits, true);
    j["classical_bound"] = json_value(r.classical_bound, true);
    j["dense_codeable"] = json_value(r.dense_codeable);
    j["std_error"] = json_value(r.std_error, true);
    j["realizations"] = json_value(r.realizations);
    j["master_seed"] = json_value(r.master_seed);
    j["opt_seed"] = r.opt_seed;
    j["tool_version"] = r.version;
    j["opt_population"] = r.opt_population;
    j["opt_max_evals"] = r.opt_max_evals;
    j["opt_restarts"] = r.opt_restarts;
    j["opt_tolerance"] = r.opt_tolerance;
    j["p_c"] = json_value(r.p_c, true);
    j["p_r"] = json_value(r.p_r, true);
    j["p_a"] = json_value(r.p_a, true);
    j["bracket_resolution"] = json_value(r.bracket_resolution, false);
    return j.dump();
}

RunRecord from_json(std::string_view text) {
    const Json j = Json::parse(text);
    auto opt_d = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key) || j[key].is_null()) return std::nullopt;
        return j[key].get<double>();
    };
    RunRecord r;
    try {
        r.state = j.at("state").get<std::string>();
        r.state_params = j.at("state_params").get<std::string>();
        r.n_senders = j.at("n_senders").get<int>();
        r.receivers = j.at("receivers").get<int>();
        if (!j.at("split").is_null()) r.split = j["split"].get<int>();
        r.channel = j.at("channel").get<std::string>();
        r.alpha = j.at("alpha").get<double>();
        r.p = opt_d("p");
        r.epsilon = j.at("epsilon").get<double>();
        r.draw_policy = j.at("draw_policy").get<std::string>();
        r.optimized = j.at("optimized").get<bool>();
        r.capacity_bits = opt_d("capacity_bits");
        r.classical_bound = opt_d("classical_bound");
        if (!j.at("dense_codeable").is_null()) r.dense_codeable = j["dense_codeable"].get<bool>();
        r.std_error = opt_d("std_error");
        if (!j.at("realizations").is_null()) r.realizations = j["realizations"].get<long>();
        if (!j.at("master_seed").is_null()) r.master_seed = j["master_seed"].get<std::uint64_t>();
        r.opt_seed = j.at("opt_seed").get<std::uint64_t>();
        r.version = j.at("tool_version").get<std::string>();
        r.opt_population = j.at("opt_population").get<int>();
        r.opt_max_evals = j.at("opt_max_evals").get<long>();
        r.opt_restarts = j.at("opt_restarts").get<int>();
        r.opt_tolerance = j.at("opt_tolerance").get<double>();
        r.p_c = opt_d("p_c");
        r.p_r = opt_d("p_r");
        r.p_a = opt_d("p_a");
        r.bracket_resolution = opt_d("bracket_resolution");
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("json record: ") + e.what());
    }
    return r;
}

}  // namespace qdc

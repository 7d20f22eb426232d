#include "fads/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fads/textio.hpp"

namespace fads {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw std::invalid_argument("config key '" + key + "': " + why);
}

double parse_number(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') bad_key(key, "expected a number, got '" + text + "'");
    return v;
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0') bad_key(key, "expected an integer, got '" + text + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || text.find('-') != std::string::npos) {
        bad_key(key, "expected an unsigned integer, got '" + text + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

// A plain number means a constant curve; "t:v" pairs give the segments of a
// piecewise-constant curve.
Curve parse_curve(const std::string& key, const std::string& text) {
    if (text.find(':') == std::string::npos) {
        return Curve::constant(parse_number(key, text));
    }
    std::vector<CurveSegment> segments;
    for (const auto& piece : split(text, ',')) {
        const auto colon = piece.find(':');
        if (colon == std::string::npos) bad_key(key, "expected t:value segments");
        segments.push_back({parse_number(key, trim(piece.substr(0, colon))),
                            parse_number(key, trim(piece.substr(colon + 1)))});
    }
    try {
        return Curve::piecewise(std::move(segments));
    } catch (const std::invalid_argument& e) {
        bad_key(key, e.what());
    }
}

std::vector<double> parse_axis(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& piece : split(text, ',')) {
        if (piece.empty()) bad_key(key, "empty axis value");
        out.push_back(parse_number(key, piece));
    }
    if (out.empty()) bad_key(key, "empty axis");
    return out;
}

PortfolioRule parse_rule(const std::string& key, const std::string& text) {
    if (text == "optimal") return PortfolioRule::optimal();
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string head = text.substr(0, colon);
        const double arg = parse_number(key, trim(text.substr(colon + 1)));
        if (head == "scaled") return PortfolioRule::scaled(arg);
        if (head == "constant") return PortfolioRule::constant(arg);
    }
    bad_key(key, "expected optimal, scaled:<factor> or constant:<weight>");
}

Estimand parse_estimand(const std::string& key, const std::string& text) {
    if (text == "expected_log_utility") return Estimand::log_utility();
    if (text == "expected_power_utility") return Estimand::power_utility();
    if (text == "terminal_wealth_mean") return Estimand::wealth_mean();
    const auto colon = text.find(':');
    if (colon != std::string::npos && text.substr(0, colon) == "upsilon_second_moment") {
        return Estimand::upsilon_moment(parse_number(key, trim(text.substr(colon + 1))));
    }
    bad_key(key, "unknown estimand '" + text + "'");
}

std::string rule_to_string(const PortfolioRule& rule) {
    switch (rule.kind) {
        case RuleKind::optimal: return "optimal";
        case RuleKind::scaled: return "scaled:" + format_double(rule.value);
        case RuleKind::constant_weight: return "constant:" + format_double(rule.value);
    }
    return "optimal";
}

std::string estimand_to_string(const Estimand& e) {
    switch (e.kind) {
        case EstimandKind::expected_log_utility: return "expected_log_utility";
        case EstimandKind::expected_power_utility: return "expected_power_utility";
        case EstimandKind::upsilon_second_moment:
            return "upsilon_second_moment:" + format_double(e.time);
        case EstimandKind::terminal_wealth_mean: return "terminal_wealth_mean";
    }
    return "expected_log_utility";
}

std::string curve_to_string(const Curve& c) {
    if (c.is_constant()) return format_double(c.segments().front().value);
    std::string out;
    for (std::size_t i = 0; i < c.segments().size(); ++i) {
        if (i) out += ',';
        out += format_double(c.segments()[i].t_start) + ":" + format_double(c.segments()[i].value);
    }
    return out;
}

std::string axis_to_string(const std::vector<double>& axis) {
    std::string out;
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (i) out += ',';
        out += format_double(axis[i]);
    }
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        }
        if (kv.count(key)) bad_key(key, "duplicate key");
        kv[key] = value;
    }

    const auto take = [&](const std::string& key) -> std::string {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::invalid_argument("missing config key: " + key);
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    const auto take_or = [&](const std::string& key, const std::string& fallback) -> std::string {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    RunConfig cfg;
    cfg.model.r = parse_curve("model.r", take("model.r"));
    cfg.model.mu = parse_curve("model.mu", take("model.mu"));
    cfg.model.sigma = parse_curve("model.sigma", take("model.sigma"));
    cfg.model.lambda = parse_number("model.lambda", take("model.lambda"));
    cfg.model.p = parse_number("model.p", take("model.p"));
    cfg.model.gamma = parse_number("model.gamma", take("model.gamma"));
    cfg.model.horizon = parse_number("model.T", take("model.T"));
    cfg.model.s0 = parse_number("model.s0", take("model.s0"));
    cfg.model.x0 = parse_number("model.x0", take("model.x0"));
    cfg.model = validate_params(cfg.model);

    cfg.experiment.params = cfg.model;
    cfg.experiment.n_paths = parse_int("experiment.n_paths", take_or("experiment.n_paths", "10000"));
    cfg.experiment.n_steps = static_cast<int>(
        parse_int("experiment.n_steps", take_or("experiment.n_steps", "1000")));
    cfg.experiment.seed = parse_uint("experiment.seed", take_or("experiment.seed", "42"));
    cfg.experiment.threads = static_cast<int>(
        parse_int("experiment.threads", take_or("experiment.threads", "0")));
    const std::string investor = take_or("experiment.investor", "informed");
    if (investor == "informed") {
        cfg.experiment.investor = Investor::informed;
    } else if (investor == "uninformed") {
        cfg.experiment.investor = Investor::uninformed;
    } else {
        bad_key("experiment.investor", "expected informed or uninformed");
    }
    cfg.experiment.rule = parse_rule("experiment.rule", take_or("experiment.rule", "optimal"));
    cfg.experiment.estimand =
        parse_estimand("experiment.estimand", take_or("experiment.estimand", "expected_log_utility"));

    cfg.out_dir = take_or("output.dir", ".");
    const std::string formats = take_or("output.formats", "csv,json");
    cfg.write_csv = false;
    cfg.write_json = false;
    for (const auto& f : split(formats, ',')) {
        if (f == "csv") cfg.write_csv = true;
        else if (f == "json") cfg.write_json = true;
        else bad_key("output.formats", "expected a subset of csv,json");
    }

    if (kv.count("sweep.lambda")) cfg.sweep.lambda = parse_axis("sweep.lambda", take("sweep.lambda"));
    if (kv.count("sweep.p")) cfg.sweep.p = parse_axis("sweep.p", take("sweep.p"));
    if (kv.count("sweep.gamma")) cfg.sweep.gamma = parse_axis("sweep.gamma", take("sweep.gamma"));
    if (kv.count("sweep.T")) cfg.sweep.horizon = parse_axis("sweep.T", take("sweep.T"));

    if (!kv.empty()) bad_key(kv.begin()->first, "unknown key");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    out += "model.r = " + curve_to_string(cfg.model.r) + "\n";
    out += "model.mu = " + curve_to_string(cfg.model.mu) + "\n";
    out += "model.sigma = " + curve_to_string(cfg.model.sigma) + "\n";
    out += "model.lambda = " + format_double(cfg.model.lambda) + "\n";
    out += "model.p = " + format_double(cfg.model.p) + "\n";
    out += "model.gamma = " + format_double(cfg.model.gamma) + "\n";
    out += "model.T = " + format_double(cfg.model.horizon) + "\n";
    out += "model.s0 = " + format_double(cfg.model.s0) + "\n";
    out += "model.x0 = " + format_double(cfg.model.x0) + "\n";
    out += "experiment.n_paths = " + std::to_string(cfg.experiment.n_paths) + "\n";
    out += "experiment.n_steps = " + std::to_string(cfg.experiment.n_steps) + "\n";
    out += "experiment.seed = " + std::to_string(cfg.experiment.seed) + "\n";
    out += "experiment.threads = " + std::to_string(cfg.experiment.threads) + "\n";
    out += std::string("experiment.investor = ") +
           investor_name(cfg.experiment.investor) + "\n";
    out += "experiment.rule = " + rule_to_string(cfg.experiment.rule) + "\n";
    out += "experiment.estimand = " + estimand_to_string(cfg.experiment.estimand) + "\n";
    out += "output.dir = " + cfg.out_dir + "\n";
    std::string formats;
    if (cfg.write_csv) formats = "csv";
    if (cfg.write_json) formats += formats.empty() ? "json" : ",json";
    out += "output.formats = " + formats + "\n";
    if (!cfg.sweep.lambda.empty()) out += "sweep.lambda = " + axis_to_string(cfg.sweep.lambda) + "\n";
    if (!cfg.sweep.p.empty()) out += "sweep.p = " + axis_to_string(cfg.sweep.p) + "\n";
    if (!cfg.sweep.gamma.empty()) out += "sweep.gamma = " + axis_to_string(cfg.sweep.gamma) + "\n";
    if (!cfg.sweep.horizon.empty()) out += "sweep.T = " + axis_to_string(cfg.sweep.horizon) + "\n";
    return out;
}

}  // namespace fads

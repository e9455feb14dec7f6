#include "magsim/config.hpp"

#include "magsim/errors.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace magsim {

namespace {

using Value = std::variant<double, std::string, bool>;

struct Entry {
    Value value;
    std::size_t line = 0;
};

[[noreturn]] void parse_error(std::size_t line, std::size_t col, const std::string& what) {
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

bool is_key_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
}

class Lexer {
public:
    Lexer(std::string_view line, std::size_t line_no) : s_(line), line_(line_no) {}

    void skip_space() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
    }
    bool at_end_or_comment() {
        skip_space();
        return pos_ >= s_.size() || s_[pos_] == '#';
    }
    std::size_t col() const { return pos_ + 1; }

    std::string key() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && is_key_char(s_[pos_])) ++pos_;
        if (pos_ == start) parse_error(line_, col(), "expected a key");
        return std::string(s_.substr(start, pos_ - start));
    }

    void expect(char ch) {
        skip_space();
        if (pos_ >= s_.size() || s_[pos_] != ch) {
            parse_error(line_, col(), std::string("expected '") + ch + "'");
        }
        ++pos_;
    }

    Value value() {
        skip_space();
        if (pos_ >= s_.size()) parse_error(line_, col(), "missing value");
        if (s_[pos_] == '"') return string();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != '#' && s_[pos_] != ' ' && s_[pos_] != '\t' &&
               s_[pos_] != '\r') {
            ++pos_;
        }
        const std::string_view word = s_.substr(start, pos_ - start);
        if (word == "true") return true;
        if (word == "false") return false;
        std::string_view num = word;
        if (!num.empty() && num.front() == '+') num.remove_prefix(1);
        double v = 0.0;
        const auto [end, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
        if (ec != std::errc() || end != num.data() + num.size() || num.empty()) {
            parse_error(line_, start + 1, "invalid value '" + std::string(word) + "'");
        }
        return v;
    }

private:
    std::string string() {
        const std::size_t open = pos_++;
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != '"') {
            char ch = s_[pos_++];
            if (ch == '\\') {
                if (pos_ >= s_.size()) break;
                const char esc = s_[pos_++];
                switch (esc) {
                case 'n': ch = '\n'; break;
                case 't': ch = '\t'; break;
                case '"': ch = '"'; break;
                case '\\': ch = '\\'; break;
                default: parse_error(line_, pos_, std::string("unknown escape \\") + esc);
                }
            }
            out.push_back(ch);
        }
        if (pos_ >= s_.size()) parse_error(line_, open + 1, "unterminated string");
        ++pos_;
        return out;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

std::map<std::string, Entry> parse_document(std::string_view text) {
    std::map<std::string, Entry> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        Lexer lex(text.substr(start, end - start), line_no);
        if (!lex.at_end_or_comment()) {
            const std::size_t key_col = lex.col();
            std::string key = lex.key();
            lex.expect('=');
            Value v = lex.value();
            if (!lex.at_end_or_comment()) parse_error(line_no, lex.col(), "unexpected trailing text");
            if (out.count(key)) parse_error(line_no, key_col, "duplicate key '" + key + "'");
            out.emplace(std::move(key), Entry{std::move(v), line_no});
        }
        start = end + 1;
    }
    return out;
}

[[noreturn]] void schema_error(const std::string& key, const Entry& e, const std::string& what) {
    throw ConfigError("line " + std::to_string(e.line) + ": key '" + key + "': " + what);
}

class Document {
public:
    explicit Document(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    std::optional<double> number(const std::string& key) {
        const Entry* e = take(key);
        if (!e) return std::nullopt;
        if (const double* v = std::get_if<double>(&e->value)) return *v;
        schema_error(key, *e, "expected a number");
    }
    std::optional<std::string> string(const std::string& key) {
        const Entry* e = take(key);
        if (!e) return std::nullopt;
        if (const std::string* v = std::get_if<std::string>(&e->value)) return *v;
        schema_error(key, *e, "expected a string");
    }
    std::optional<bool> boolean(const std::string& key) {
        const Entry* e = take(key);
        if (!e) return std::nullopt;
        if (const bool* v = std::get_if<bool>(&e->value)) return *v;
        schema_error(key, *e, "expected true or false");
    }
    std::optional<std::size_t> count(const std::string& key) {
        const auto v = number(key);
        if (!v) return std::nullopt;
        if (*v < 1 || *v != static_cast<double>(static_cast<std::size_t>(*v))) {
            schema_error(key, entries_.at(key), "expected a positive integer");
        }
        return static_cast<std::size_t>(*v);
    }

    /// Runs `f` and rewraps a ConfigError with the key's line.
    template <class F>
    auto with_key(const std::string& key, F&& f) {
        try {
            return f();
        } catch (const ConfigError& e) {
            schema_error(key, entries_.at(key), e.what());
        }
    }

    std::vector<std::string> remaining_keys() const {
        std::vector<std::string> keys;
        for (const auto& [k, _] : entries_) {
            if (!used_.count(k)) keys.push_back(k);
        }
        return keys;
    }
    const Entry& entry(const std::string& key) const { return entries_.at(key); }

private:
    const Entry* take(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        used_.insert(key);
        return &it->second;
    }

    std::map<std::string, Entry> entries_;
    std::set<std::string> used_;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::optional<Axis> read_axis(Document& doc, const std::string& name) {
    const auto column = doc.string(name);
    const auto lo = doc.number(name + "_min");
    const auto hi = doc.number(name + "_max");
    const auto n = doc.count(name + "_points");
    if (!column) {
        if (lo || hi || n) throw ConfigError("axis bounds given without '" + name + "'");
        return std::nullopt;
    }
    if (!lo || !hi) throw ConfigError("key '" + name + "': needs " + name + "_min and " + name + "_max");
    Axis axis;
    axis.parameter = doc.with_key(name, [&] { return parse_axis(*column); });
    axis.values = linear_grid(*lo, *hi, n.value_or(201));
    return axis;
}

} // namespace

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

std::string_view format_name(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

RunConfig parse_config(std::string_view text) {
    Document doc(parse_document(text));
    RunConfig cfg;

    const auto scenario = doc.string("scenario");
    if (!scenario) throw ConfigError("missing key 'scenario'");
    cfg.scenario = *scenario;
    const bool custom = cfg.scenario == "custom";
    if (custom) {
        cfg.definition.name = "custom";
        cfg.definition.directions = {Direction::Forward, Direction::Backward};
    } else {
        cfg.definition = doc.with_key("scenario", [&] { return preset_definition(cfg.scenario); });
    }

    cfg.output = doc.string("output");
    if (const auto f = doc.string("format")) cfg.format = doc.with_key("format", [&] { return parse_format(*f); });
    if (const auto t = doc.count("threads")) cfg.threads = static_cast<unsigned>(*t);

    if (const auto c = doc.string("logneg_convention")) {
        if (*c == "normalized") cfg.conventions.logneg = LogNegConvention::Normalized;
        else if (*c == "printed") cfg.conventions.logneg = LogNegConvention::Printed;
        else schema_error("logneg_convention", doc.entry("logneg_convention"), "expected normalized or printed");
    }
    if (const auto b = doc.boolean("gmb_2pi_interpretation")) cfg.conventions.gmb_2pi = *b;
    if (const auto m = doc.string("meanfield_mode")) {
        if (*m == "closed_form") cfg.conventions.mean_field = MeanFieldMethod::ClosedForm;
        else if (*m == "self_consistent") cfg.conventions.mean_field = MeanFieldMethod::SelfConsistent;
        else schema_error("meanfield_mode", doc.entry("meanfield_mode"), "expected closed_form or self_consistent");
    }

    if (const auto a = doc.boolean("angular")) cfg.definition.raw.angular = *a;
    for (const std::string& key : param_keys()) {
        if (const auto v = doc.number(key)) cfg.definition.raw.set(key, *v);
    }
    for (const std::string key : {"kappa_hz", "p_mw"}) {
        if (const auto v = doc.number(key)) cfg.definition.raw.set(key, *v);
    }

    std::vector<Axis> axes;
    for (const std::string name : {"axis1", "axis2"}) {
        if (auto axis = read_axis(doc, name)) axes.push_back(std::move(*axis));
    }
    if (!axes.empty()) cfg.definition.axes = std::move(axes);

    if (const auto d = doc.string("directions")) {
        cfg.definition.directions.clear();
        for (const auto& item : split_list(*d)) {
            cfg.definition.directions.push_back(doc.with_key("directions", [&] { return parse_direction(item); }));
        }
    }
    if (const auto o = doc.string("outputs")) {
        cfg.definition.outputs.clear();
        for (const auto& item : split_list(*o)) {
            cfg.definition.outputs.insert(doc.with_key("outputs", [&] { return parse_observable(item); }));
        }
    }

    const auto source = doc.string("gmb_source");
    const auto fixed = doc.number("fixed_gmb_hz");
    if (fixed) cfg.definition.fixed_gmb = *fixed;
    if (source) {
        if (*source == "derived") {
            if (fixed) schema_error("fixed_gmb_hz", doc.entry("fixed_gmb_hz"), "conflicts with gmb_source = derived");
            cfg.definition.fixed_gmb.reset();
        } else if (*source == "fixed") {
            if (!cfg.definition.fixed_gmb) schema_error("gmb_source", doc.entry("gmb_source"), "needs fixed_gmb_hz");
        } else {
            schema_error("gmb_source", doc.entry("gmb_source"), "expected fixed or derived");
        }
    }
    if (const auto r = doc.boolean("refine_minima")) cfg.definition.refine_transmission_minima = *r;

    const auto unknown = doc.remaining_keys();
    if (!unknown.empty()) schema_error(unknown.front(), doc.entry(unknown.front()), "unknown key");

    if (custom && cfg.definition.axes.empty()) throw ConfigError("custom scenario needs 'axis1'");
    if (custom && cfg.definition.outputs.empty()) throw ConfigError("custom scenario needs 'outputs'");
    cfg.spec(); // surfaces parameter and sweep errors now
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace magsim

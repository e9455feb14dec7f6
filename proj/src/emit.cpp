#include "magsim/emit.hpp"

#include "magsim/decibel.hpp"
#include "magsim/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <istream>

namespace magsim {

namespace {

Cell opt(const std::optional<double>& v) {
    if (!v || std::isnan(*v)) return std::monostate{};
    return *v;
}

std::string suffixed(const std::string& stem, const SweepResult& r, Direction d) {
    if (r.directions.size() == 1) return stem;
    return stem + "_" + std::string(direction_suffix(d));
}

std::optional<std::size_t> direction_index(const SweepResult& r, Direction d) {
    for (std::size_t i = 0; i < r.directions.size(); ++i) {
        if (r.directions[i] == d) return i;
    }
    return std::nullopt;
}

std::string escape_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string csv_cell(const Cell& c) {
    if (const double* v = std::get_if<double>(&c)) return format_number(*v);
    if (const std::string* s = std::get_if<std::string>(&c)) return escape_csv(*s);
    return {};
}

std::string json_cell(const Cell& c) {
    if (const double* v = std::get_if<double>(&c)) {
        if (std::isinf(*v)) return *v > 0 ? "\"inf\"" : "\"-inf\"";
        if (std::isnan(*v)) return "null";
        return format_number(*v);
    }
    if (const std::string* s = std::get_if<std::string>(&c)) return nlohmann::json(*s).dump();
    return "null";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

Cell parse_cell(const std::string& s) {
    if (s.empty()) return std::monostate{};
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && end == s.data() + s.size()) return v;
    return s;
}

} // namespace

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw Error("no column named " + name);
}

Table tabulate(const SweepResult& r) {
    Table t;
    using Getter = std::function<Cell(const SweepPoint&)>;
    std::vector<Getter> getters;
    const auto add = [&](std::string name, Getter g) {
        t.columns.push_back(std::move(name));
        getters.push_back(std::move(g));
    };

    for (std::size_t i = 0; i < r.axes.size(); ++i) {
        add(std::string(axis_column(r.axes[i])), [i](const SweepPoint& p) { return Cell(p.coords[i]); });
    }

    const auto transmission_column = [&](const char* name, Direction d) {
        const auto k = direction_index(r, d);
        add(name, [k](const SweepPoint& p) { return k ? opt(p.records[*k].transmission) : Cell(); });
    };
    if (r.outputs.count(Observable::T12)) transmission_column("T12", Direction::Forward);
    if (r.outputs.count(Observable::T21)) transmission_column("T21", Direction::Backward);
    if (r.outputs.count(Observable::Tiso)) {
        add("Tiso_db", [](const SweepPoint& p) { return opt(p.t_iso_db); });
    }

    const auto& pairs = reported_pairs();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const std::string stem = "E_" + pairs[k].label();
        const auto e_obs = static_cast<Observable>(static_cast<int>(Observable::E_ac) + static_cast<int>(k));
        const auto iso_obs = static_cast<Observable>(static_cast<int>(Observable::E_ac_iso) + static_cast<int>(k));
        if (r.outputs.count(e_obs)) {
            for (std::size_t d = 0; d < r.directions.size(); ++d) {
                add(suffixed(stem, r, r.directions[d]),
                    [d, k](const SweepPoint& p) { return opt(p.records[d].entanglement[k]); });
            }
        }
        if (r.outputs.count(iso_obs)) {
            const auto f = direction_index(r, Direction::Forward);
            const auto b = direction_index(r, Direction::Backward);
            add(stem + "_iso_db", [f, b, k](const SweepPoint& p) -> Cell {
                if (!f || !b) return {};
                const auto& e12 = p.records[*f].entanglement[k];
                const auto& e21 = p.records[*b].entanglement[k];
                if (!e12 || !e21) return {};
                return entanglement_isolation(*e12, *e21);
            });
        }
    }

    if (r.outputs.count(Observable::Margin)) {
        for (std::size_t d = 0; d < r.directions.size(); ++d) {
            add(suffixed("margin", r, r.directions[d]), [d](const SweepPoint& p) -> Cell {
                const auto& s = p.records[d].stability;
                return s ? Cell(s->margin) : Cell();
            });
        }
    }

    const bool entangling = std::any_of(r.outputs.begin(), r.outputs.end(), [](Observable o) {
        return is_entanglement(o) || is_entanglement_isolation(o) || o == Observable::Margin;
    });
    if (entangling) {
        for (std::size_t d = 0; d < r.directions.size(); ++d) {
            add(suffixed("status", r, r.directions[d]),
                [d](const SweepPoint& p) { return Cell(std::string(status_name(p.records[d].status))); });
        }
        for (std::size_t d = 0; d < r.directions.size(); ++d) {
            add(suffixed("validation", r, r.directions[d]), [d](const SweepPoint& p) -> Cell {
                const auto& v = p.records[d].validation;
                return v ? Cell(std::string(verdict_name(v->overall()))) : Cell();
            });
        }
    }

    t.rows.reserve(r.points.size());
    for (const auto& p : r.points) {
        std::vector<Cell> row;
        row.reserve(getters.size());
        for (const auto& g : getters) row.push_back(g(p));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string format_number(double v) {
    if (std::isnan(v)) return {};
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::size_t emit(const Table& t, OutputFormat format, std::ostream& out) {
    std::string text;
    if (format == OutputFormat::Csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            if (i) text += ',';
            text += escape_csv(t.columns[i]);
        }
        text += '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) text += ',';
                text += csv_cell(row[i]);
            }
            text += '\n';
        }
    } else {
        text += "[\n";
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            text += "  {";
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                if (i) text += ", ";
                text += nlohmann::json(t.columns[i]).dump();
                text += ": ";
                text += json_cell(t.rows[r][i]);
            }
            text += r + 1 < t.rows.size() ? "},\n" : "}\n";
        }
        text += "]\n";
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("write failed");
    return text.size();
}

std::size_t emit(const SweepResult& result, OutputFormat format, std::ostream& out) {
    return emit(tabulate(result), format, out);
}

Table read_csv(std::istream& in) {
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw Error("empty CSV");
    t.columns = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != t.columns.size()) throw Error("CSV row has the wrong number of fields");
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_cell(f));
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace magsim

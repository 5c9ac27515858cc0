#include "output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <system_error>

#include "qhp/cli.hpp"

namespace qhp::cli {

double round_significant(double value, int precision) {
    if (!std::isfinite(value)) return value;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, precision);
    double rounded = 0.0;
    std::from_chars(buf, res.ptr, rounded);
    return rounded;
}

std::string format_number(double value, int precision) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, round_significant(value, precision));
    return {buf, res.ptr};
}

std::string format_value(const Value& v, int precision) {
    struct Visitor {
        int precision;
        std::string operator()(Empty) const { return {}; }
        std::string operator()(double x) const { return format_number(x, precision); }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{precision}, v);
}

Json to_json(const Value& v, int precision) {
    struct Visitor {
        int precision;
        Json operator()(Empty) const { return nullptr; }
        Json operator()(double x) const {
            if (!std::isfinite(x)) return nullptr;
            return round_significant(x, precision);
        }
        Json operator()(long long x) const { return x; }
        Json operator()(bool x) const { return x; }
        Json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{precision}, v);
}

Json to_json(const Row& row, int precision) {
    Json obj = Json::object();
    for (const auto& [key, value] : row) obj[key] = to_json(value, precision);
    return obj;
}

void write_csv(std::ostream& out, const std::vector<Row>& rows, int precision) {
    if (rows.empty()) return;
    std::string line;
    for (std::size_t i = 0; i < rows.front().size(); ++i) {
        if (i) line += ',';
        line += rows.front()[i].first;
    }
    line += '\n';
    out << line;
    for (const Row& row : rows) {
        line.clear();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line += ',';
            line += format_value(row[i].second, precision);
        }
        line += '\n';
        out << line;
    }
}

void write_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

}  // namespace qhp::cli

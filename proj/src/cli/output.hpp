#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qhp::cli {

using Json = nlohmann::ordered_json;

struct Empty {};
using Value = std::variant<Empty, double, long long, bool, std::string>;
using Row = std::vector<std::pair<std::string, Value>>;

std::string format_value(const Value& v, int precision);
Json to_json(const Value& v, int precision);
Json to_json(const Row& row, int precision);

/// Header from the first row's keys, `,` separator, `\n` line ends.
void write_csv(std::ostream& out, const std::vector<Row>& rows, int precision);

/// Two-space indented dump followed by a newline.
void write_json(std::ostream& out, const Json& doc);

inline Row concat(Row a, const Row& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace qhp::cli

#include "permlog/cli/json_writer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace permlog::cli {

namespace {

void write_number(std::string& out, double value) {
    if (!std::isfinite(value)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value == 0.0 ? 0.0 : value);
    out += buf;
}

void write(std::string& out, const Json& node, int indent, int depth) {
    const auto newline = [&](int level) {
        if (indent > 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * level), ' ');
        }
    };
    switch (node.type()) {
        case Json::value_t::object: {
            if (node.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto& [key, value] : node.items()) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(key).dump();
                out += indent > 0 ? ": " : ":";
                write(out, value, indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (node.empty()) {
                out += "[]";
                return;
            }
            // Scalars and [re, im] pairs stay on one line, so a matrix prints
            // one row per line.
            const bool flat = std::all_of(node.begin(), node.end(), [](const Json& v) {
                return !v.is_structured() || (v.is_array() && v.size() == 2 && v[0].is_number());
            });
            out += '[';
            bool first = true;
            for (const auto& value : node) {
                if (!first) out += flat ? ", " : ",";
                first = false;
                if (!flat) newline(depth + 1);
                write(out, value, flat ? 0 : indent, depth + 1);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float:
            write_number(out, node.get<double>());
            return;
        default:
            out += node.dump();
            return;
    }
}

}  // namespace

std::string dump_fixed(const Json& doc, int indent) {
    std::string out;
    write(out, doc, indent, 0);
    out += '\n';
    return out;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) {
            row.push_back(to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const std::vector<Complex>& values) {
    Json out = Json::array();
    for (Complex z : values) {
        out.push_back(to_json(z));
    }
    return out;
}

}  // namespace permlog::cli

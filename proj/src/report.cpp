#include "plurinorm/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace plurinorm {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

}  // namespace

Json& Json::set(const std::string& key, Json v) {
    if (!node_ || !std::holds_alternative<Obj>(node_->v))
        throw std::logic_error("set() on a non-object json node");
    auto& obj = std::get<Obj>(node_->v);
    for (auto& f : obj.fields)
        if (f.first == key) {
            f.second = std::move(v);
            return *this;
        }
    obj.fields.emplace_back(key, std::move(v));
    return *this;
}

Json& Json::push(Json v) {
    if (!node_ || !std::holds_alternative<Arr>(node_->v))
        throw std::logic_error("push() on a non-array json node");
    std::get<Arr>(node_->v).push_back(std::move(v));
    return *this;
}

void Json::dump_to(std::string& out, int indent, int depth) const {
    if (!node_) {
        out += "null";
        return;
    }
    const std::string pad(static_cast<size_t>(indent) * depth, ' ');
    const std::string pad1(static_cast<size_t>(indent) * (depth + 1), ' ');
    if (std::holds_alternative<std::nullptr_t>(node_->v)) {
        out += "null";
    } else if (std::holds_alternative<bool>(node_->v)) {
        out += std::get<bool>(node_->v) ? "true" : "false";
    } else if (std::holds_alternative<long long>(node_->v)) {
        out += std::to_string(std::get<long long>(node_->v));
    } else if (std::holds_alternative<double>(node_->v)) {
        out += fmt_double(std::get<double>(node_->v));
    } else if (std::holds_alternative<std::string>(node_->v)) {
        escape_into(out, std::get<std::string>(node_->v));
    } else if (std::holds_alternative<Arr>(node_->v)) {
        const auto& a = std::get<Arr>(node_->v);
        if (a.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (size_t i = 0; i < a.size(); ++i) {
            out += pad1;
            a[i].dump_to(out, indent, depth + 1);
            if (i + 1 < a.size()) out += ',';
            out += '\n';
        }
        out += pad + "]";
    } else {
        const auto& o = std::get<Obj>(node_->v);
        if (o.fields.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        for (size_t i = 0; i < o.fields.size(); ++i) {
            out += pad1;
            escape_into(out, o.fields[i].first);
            out += ": ";
            o.fields[i].second.dump_to(out, indent, depth + 1);
            if (i + 1 < o.fields.size()) out += ',';
            out += '\n';
        }
        out += pad + "}";
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    dump_to(out, indent, 0);
    out += '\n';
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("short write to '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace plurinorm

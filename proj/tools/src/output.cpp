#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include "resona/common.hpp"

namespace resona::cli {

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string Table::to_csv() const
{
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
    s += '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + format_double(r[i]);
        s += '\n';
    }
    return s;
}

json Table::to_json() const
{
    json rows_j = json::array();
    for (const auto& r : rows) {
        json o = json::object();
        for (std::size_t i = 0; i < header.size() && i < r.size(); ++i) o[header[i]] = r[i];
        rows_j.push_back(o);
    }
    return {{"columns", header}, {"rows", rows_j}};
}

void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    if (!std::filesystem::is_directory(dir)) throw InvalidArgument("output directory does not exist: " + dir.string());
    const auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write " + tmp.string());
        f << content;
        f.flush();
        if (!f) throw InvalidArgument("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

Table read_csv(const std::string& text)
{
    Table t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        if (first) {
            while (std::getline(ls, cell, ',')) t.header.push_back(cell);
            first = false;
            continue;
        }
        std::vector<double> r;
        while (std::getline(ls, cell, ',')) {
            char* end = nullptr;
            r.push_back(std::strtod(cell.c_str(), &end));
            if (cell.empty() || *end != '\0') throw std::runtime_error("read_csv: bad number '" + cell + "'");
        }
        if (r.size() != t.header.size()) throw std::runtime_error("read_csv: row width differs from header");
        t.rows.push_back(std::move(r));
    }
    return t;
}

}  // namespace resona::cli

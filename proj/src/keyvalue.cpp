// SPDX-License-Identifier: Apache-2.0
#include "trimdiff/keyvalue.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "trimdiff/errors.hpp"

namespace trimdiff::keyvalue {

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void Section::set(const std::string& key, const std::string& value, int line)
{
    if (entries_.count(key))
        throw ParseError("duplicate key '" + key + "' at line " + std::to_string(line));
    entries_[key] = {value, line};
}

bool Section::has(const std::string& key) const
{
    if (entries_.count(key)) {
        consumed_.insert(key);
        return true;
    }
    return false;
}

std::string Section::get_string(const std::string& key) const
{
    auto it = entries_.find(key);
    if (it == entries_.end())
        throw MissingParameter("missing parameter '" + key + "'");
    consumed_.insert(key);
    return it->second.value;
}

double Section::get_double(const std::string& key) const
{
    return parse_double(get_string(key), "key '" + key + "'");
}

int Section::get_int(const std::string& key) const
{
    return parse_int(get_string(key), "key '" + key + "'");
}

double Section::get_double_or(const std::string& key, double fallback) const
{
    return has(key) ? get_double(key) : fallback;
}

int Section::get_int_or(const std::string& key, int fallback) const
{
    return has(key) ? get_int(key) : fallback;
}

std::string Section::get_string_or(const std::string& key, const std::string& fallback) const
{
    return has(key) ? get_string(key) : fallback;
}

void Section::reject_unknown(const std::string& context) const
{
    for (const auto& [key, entry] : entries_) {
        if (!consumed_.count(key))
            throw ParseError("unknown key '" + key + "' in " + context + " (line "
                             + std::to_string(entry.line) + ")");
    }
}

Document Document::parse(const std::string& text)
{
    Document doc;
    std::istringstream in(text);
    std::string line;
    std::string current = "";
    doc.sections_[current];
    doc.order_.push_back(current);
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("malformed section header at line " + std::to_string(lineno));
            current = trim(line.substr(1, line.size() - 2));
            if (!doc.sections_.count(current))
                doc.order_.push_back(current);
            doc.sections_[current];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value' at line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("empty key or value at line " + std::to_string(lineno));
        doc.sections_[current].set(key, value, lineno);
    }
    return doc;
}

Document Document::parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

Section& Document::section(const std::string& name)
{
    return sections_[name];
}

bool Document::has_section(const std::string& name) const
{
    auto it = sections_.find(name);
    return it != sections_.end() && !it->second.empty();
}

double parse_double(const std::string& token, const std::string& context)
{
    const char* begin = token.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError("invalid number '" + token + "' for " + context);
    return v;
}

int parse_int(const std::string& token, const std::string& context)
{
    const char* begin = token.c_str();
    char* end = nullptr;
    long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw ParseError("invalid integer '" + token + "' for " + context);
    return static_cast<int>(v);
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace trimdiff::keyvalue

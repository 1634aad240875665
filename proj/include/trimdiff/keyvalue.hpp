// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace trimdiff::keyvalue {

/// One `key = value` section of a config file. Tracks which keys were read
/// so callers can reject unknown ones.
class Section {
public:
    void set(const std::string& key, const std::string& value, int line);

    bool has(const std::string& key) const;
    // throws MissingParameter when absent
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    int get_int_or(const std::string& key, int fallback) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;

    // throws ParseError naming the first key never requested
    void reject_unknown(const std::string& context) const;

    bool empty() const { return entries_.empty(); }

private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::map<std::string, Entry> entries_;
    mutable std::set<std::string> consumed_;
};

/// Sectioned `[name]` key-value file. Keys before any header land in the
/// section named "".
class Document {
public:
    static Document parse(const std::string& text);
    static Document parse_file(const std::string& path);

    Section& section(const std::string& name);
    const std::vector<std::string>& section_names() const { return order_; }
    bool has_section(const std::string& name) const;

private:
    std::map<std::string, Section> sections_;
    std::vector<std::string> order_;
};

// strict decimal parse; throws ParseError unless the whole token converts
double parse_double(const std::string& token, const std::string& context);
int parse_int(const std::string& token, const std::string& context);

// 17-significant-digit round-trip-exact formatting
std::string format_double(double v);

}  // namespace trimdiff::keyvalue

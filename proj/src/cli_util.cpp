#include "wunits/cli_util.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace wunits {

namespace {

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long parse_long_strict(const std::string& s, const std::string& what) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used, 10);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw domain_error("invalid integer for " + what + ": '" + s + "'");
    }
}

}  // namespace

FileConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot read config file: " + path);
    FileConfig cfg;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw domain_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        if (key == "prec")
            cfg.prec = parse_long_strict(val, "prec");
        else if (key == "guard")
            cfg.guard = parse_long_strict(val, "guard");
        else if (key == "jobs")
            cfg.jobs = parse_long_strict(val, "jobs");
        else if (key == "format")
            cfg.format = val;
        else
            throw domain_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key +
                               "'");
    }
    return cfg;
}

Complex parse_complex_literal(const std::string& text, long prec) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s.push_back(c);
    if (s.empty()) throw domain_error("empty complex literal");

    auto parse_part = [&](std::string part, bool implicit_one) {
        if (part.empty() || part == "+") part = implicit_one ? "1" : part;
        if (part == "-") part = implicit_one ? "-1" : part;
        if (part.empty()) throw domain_error("unparseable complex literal: '" + text + "'");
        try {
            return Real::from_string(part, prec);
        } catch (const domain_error&) {
            throw domain_error("unparseable complex literal: '" + text + "'");
        }
    };

    if (s.back() != 'i' && s.back() != 'I') return Complex(parse_part(s, false), Real(prec));

    s.pop_back();
    // split at the last sign that is not an exponent sign
    size_t split = std::string::npos;
    for (size_t k = 1; k < s.size(); ++k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E')
            split = k;
    }
    if (split == std::string::npos) return Complex(Real(prec), parse_part(s, true));
    return Complex(parse_part(s.substr(0, split), false), parse_part(s.substr(split), true));
}

std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = strip(item);
        if (item.empty()) throw domain_error("empty entry in list: '" + text + "'");
        size_t dash = std::string::npos;
        for (size_t k = 1; k < item.size(); ++k)
            if (item[k] == '-' && std::isdigit((unsigned char)item[k - 1])) {
                dash = k;
                break;
            }
        if (dash == std::string::npos) {
            out.push_back(parse_long_strict(item, "list entry"));
        } else {
            long lo = parse_long_strict(item.substr(0, dash), "range start");
            long hi = parse_long_strict(item.substr(dash + 1), "range end");
            if (hi < lo) throw domain_error("descending range: '" + item + "'");
            if (hi - lo > 100000) throw domain_error("range too large: '" + item + "'");
            for (long v = lo; v <= hi; ++v) out.push_back(v);
        }
    }
    if (out.empty()) throw domain_error("empty list: '" + text + "'");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CharacterVector parse_char_vector(const std::string& text) {
    std::vector<long> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(parse_long_strict(strip(item), "vector"));
    if (parts.size() != 3)
        throw domain_error("character vector must be 'a,b,N': '" + text + "'");
    if (parts[2] <= 0) throw domain_error("character vector needs N > 0: '" + text + "'");
    auto v = CharacterVector::reduced(parts[0], parts[1], parts[2]);
    if (!v) throw domain_error("character vector is integral: '" + text + "'");
    return *v;
}

}  // namespace wunits

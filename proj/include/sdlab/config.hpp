#ifndef SDLAB_CONFIG_HPP
#define SDLAB_CONFIG_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sdlab/errors.hpp"

namespace sdlab {

namespace detail {
inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
}  // namespace detail

// Flat key-value configuration: one "key = value" per line, '#' comments.
class Config {
public:
    Config() = default;
    explicit Config(std::map<std::string, std::string> values) : values_(std::move(values)) {}

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    void set_default(const std::string& key, const std::string& value) {
        values_.emplace(key, value);
    }

    const std::string& get_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw config_error(key, "missing required key");
        return it->second;
    }
    std::string get_string(const std::string& key, const std::string& def) const {
        auto it = values_.find(key);
        return it == values_.end() ? def : it->second;
    }

    double get_double(const std::string& key) const { return parse_double(key, get_string(key)); }
    double get_double(const std::string& key, double def) const {
        return has(key) ? get_double(key) : def;
    }

    long get_long(const std::string& key) const { return parse_long(key, get_string(key)); }
    long get_long(const std::string& key, long def) const {
        return has(key) ? get_long(key) : def;
    }

    std::vector<double> get_double_list(const std::string& key) const {
        std::vector<double> out;
        for (const auto& tok : split_list(get_string(key))) out.push_back(parse_double(key, tok));
        if (out.empty()) throw config_error(key, "list must be non-empty");
        return out;
    }
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& def) const {
        return has(key) ? get_double_list(key) : def;
    }
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& def) const {
        if (!has(key)) return def;
        std::vector<int> out;
        for (const auto& tok : split_list(get_string(key)))
            out.push_back(static_cast<int>(parse_long(key, tok)));
        if (out.empty()) throw config_error(key, "list must be non-empty");
        return out;
    }

    // Rejects keys outside the experiment's documented schema, naming the offender.
    void require_known(const std::set<std::string>& known) const {
        for (const auto& [k, v] : values_)
            if (!known.count(k)) throw config_error(k, "unknown key for this experiment");
    }

    const std::map<std::string, std::string>& entries() const { return values_; }

    // Canonical sorted text of the resolved configuration (hash + manifest input).
    std::string canonical_text() const {
        std::ostringstream os;
        for (const auto& [k, v] : values_) os << k << " = " << v << "\n";
        return os.str();
    }

private:
    static double parse_double(const std::string& key, const std::string& tok) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw config_error(key, "cannot parse '" + tok + "' as a number");
        }
    }
    static long parse_long(const std::string& key, const std::string& tok) {
        try {
            std::size_t pos = 0;
            const long v = std::stol(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw config_error(key, "cannot parse '" + tok + "' as an integer");
        }
    }
    static std::vector<std::string> split_list(const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s + ",") {
            if (c == ',' || c == ' ' || c == '\t') {
                if (!cur.empty()) out.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        return out;
    }

    std::map<std::string, std::string> values_;
};

inline Config parse_config_text(const std::string& text) {
    std::map<std::string, std::string> values;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno),
                               "expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw config_error("line " + std::to_string(lineno), "empty key");
        values[key] = value;
    }
    return Config(std::move(values));
}

inline Config parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace sdlab

#endif

#pragma once

// CSV output, JSON run manifests, and the key/value run-config format used
// by the CLI. CSV payloads are deterministic: fixed %.17g formatting, no
// timestamps (wall-clock data lives in the manifest only).

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace hermosc {

inline constexpr const char* kVersion = "0.1.0";

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header) : path_(path) {
        out_.open(path);
        if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
        for (std::size_t i = 0; i < header.size(); ++i)
            out_ << (i ? "," : "") << header[i];
        out_ << "\n";
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::ofstream out_;
};

// minimal reader for our own numeric CSVs
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            t.header = cells;
            first = false;
        } else {
            t.rows.push_back(cells);
        }
    }
    return t;
}

// run manifest: {command, params, version, started_at, duration_s, outputs[]}
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::chrono::system_clock::time_point started_at = std::chrono::system_clock::now();
    std::vector<std::string> outputs;

    void write(const std::string& path) const {
        nlohmann::ordered_json j;
        j["command"] = command;
        nlohmann::ordered_json p = nlohmann::ordered_json::object();
        for (const auto& [k, v] : params) p[k] = v;
        j["params"] = p;
        j["version"] = kVersion;
        const std::time_t t0 = std::chrono::system_clock::to_time_t(started_at);
        char buf[64];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t0));
        j["started_at"] = buf;
        const auto dur = std::chrono::duration<double>(std::chrono::system_clock::now() - started_at);
        j["duration_s"] = dur.count();
        j["outputs"] = outputs;
        std::ofstream out(path);
        if (!out) throw std::runtime_error("RunManifest: cannot open " + path);
        out << j.dump(2) << "\n";
    }
};

// ---------------------------------------------------------------------------
// key = value run configs with [mode] blocks for WSpec data

struct ConfigBlock {
    std::vector<std::pair<std::string, std::vector<std::string>>> entries;

    bool has(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return true;
        return false;
    }
    const std::vector<std::string>& get(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return v;
        throw std::invalid_argument("config: missing key '" + key + "'");
    }
    std::vector<std::vector<std::string>> get_all(const std::string& key) const {
        std::vector<std::vector<std::string>> out;
        for (const auto& [k, v] : entries)
            if (k == key) out.push_back(v);
        return out;
    }
    double get_double(const std::string& key) const { return std::stod(get(key)[0]); }
    double get_double(const std::string& key, double dflt) const {
        return has(key) ? get_double(key) : dflt;
    }
    long get_long(const std::string& key) const { return std::stol(get(key)[0]); }
    long get_long(const std::string& key, long dflt) const {
        return has(key) ? get_long(key) : dflt;
    }
    std::string get_string(const std::string& key, const std::string& dflt) const {
        return has(key) ? get(key)[0] : dflt;
    }
    std::vector<double> get_doubles(const std::string& key) const {
        std::vector<double> out;
        for (const auto& s : get(key)) out.push_back(std::stod(s));
        return out;
    }
    std::vector<double> get_doubles(const std::string& key, std::vector<double> dflt) const {
        return has(key) ? get_doubles(key) : dflt;
    }
};

struct RunConfig {
    ConfigBlock top;
    std::vector<ConfigBlock> modes; // one per [mode] section
};

inline RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    ConfigBlock* cur = &cfg.top;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (line == "[mode]") {
            cfg.modes.emplace_back();
            cur = &cfg.modes.back();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        const auto kb = key.find_last_not_of(" \t");
        key = key.substr(0, kb + 1);
        std::vector<std::string> tokens;
        std::stringstream ss(val);
        std::string tok;
        while (ss >> tok) tokens.push_back(tok);
        cur->entries.push_back({key, tokens});
    }
    return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    return parse_config(in);
}

} // namespace hermosc

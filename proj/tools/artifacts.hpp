#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

namespace wflow::cli {

using json = nlohmann::json;

struct schema_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline uint64_t fnv1a(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_config(const std::string& path) {
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw schema_error("<root>: not valid JSON");
    if (!j.is_object()) throw schema_error("<root>: expected an object");
    return j;
}

/// Reject unknown fields: reproducibility over leniency.
inline void check_keys(const json& j, const std::string& path, std::vector<std::string> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw schema_error(path + "." + it.key() + ": unknown field");
}

inline const json& require(const json& j, const std::string& path, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) throw schema_error(path + "." + key + ": missing required field");
    return *it;
}

inline double get_num(const json& j, const std::string& path) {
    if (!j.is_number()) throw schema_error(path + ": expected a number");
    return j.get<double>();
}

inline int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw schema_error(path + ": expected an integer");
    return j.get<int>();
}

inline std::vector<double> get_num_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw schema_error(path + ": expected an array of numbers");
    std::vector<double> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(get_num(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::vector<int> get_int_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw schema_error(path + ": expected an array of integers");
    std::vector<int> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline void expect_kind(const json& cfg, const std::string& kind) {
    std::string k = require(cfg, "$", "kind").get<std::string>();
    if (k != kind) throw schema_error("$.kind: expected \"" + kind + "\", got \"" + k + "\"");
}

/// Collects outputs so the manifest can list every artifact with the config
/// hash; CSV/JSON bytes depend only on config + seed (the manifest alone
/// carries wall-clock).
struct ArtifactWriter {
    std::filesystem::path dir;
    std::string config_hash;
    std::string command;
    uint64_t seed = 0;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    ArtifactWriter(const std::string& out_dir, const std::string& cfg_bytes,
                   const std::string& cmd, uint64_t seed_)
        : dir(out_dir), config_hash(hash_hex(fnv1a(cfg_bytes))), command(cmd), seed(seed_) {
        std::filesystem::create_directories(dir);
    }

    void write_json(const std::string& name, json j) {
        j["config_hash"] = config_hash;
        j["seed"] = seed;
        std::ofstream out(dir / name, std::ios::binary);
        out << j.dump(2) << "\n";
        outputs.push_back(name);
    }

    /// CSV with a leading comment line carrying the config hash.
    void write_csv(const std::string& name, const std::vector<std::string>& columns,
                   const std::vector<std::vector<double>>& rows) {
        std::ofstream out(dir / name, std::ios::binary);
        out << "# config_hash=" << config_hash << " seed=" << seed << "\n";
        for (size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
        out << "\n";
        char buf[32];
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                std::snprintf(buf, sizeof buf, "%.17g", row[c]);
                out << (c ? "," : "") << buf;
            }
            out << "\n";
        }
        outputs.push_back(name);
    }

    void write_svg(const std::string& name, const std::string& body) {
        std::ofstream out(dir / name, std::ios::binary);
        out << "<!-- config_hash=" << config_hash << " -->\n" << body;
        outputs.push_back(name);
    }

    void finish() {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json m;
        m["config_hash"] = config_hash;
        m["command"] = command;
        m["seed"] = seed;
        m["outputs"] = outputs;
        m["versions"] = {{"weightflow", "0.1.0"},
                         {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                       std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                       std::to_string(EIGEN_MINOR_VERSION)}};
        m["wall_clock_seconds"] = secs;
        std::ofstream out(dir / "manifest.json", std::ios::binary);
        out << m.dump(2) << "\n";
    }
};

inline std::vector<double> log_spaced(double lo, double hi, int per_decade) {
    std::vector<double> out;
    int n = static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade));
    for (int k = 0; k <= n; ++k) out.push_back(lo * std::pow(10.0, static_cast<double>(k) / per_decade));
    if (out.back() < hi) out.push_back(hi);
    out.back() = hi;
    return out;
}

}  // namespace wflow::cli

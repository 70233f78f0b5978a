#include "opdlab/report.hpp"

#include <fstream>

namespace opdlab {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

nlohmann::ordered_json Budget::to_json() const {
    nlohmann::ordered_json j;
    j["t2_max_q"] = t2_max_q;
    j["t3_max_q"] = t3_max_q;
    j["ext_t3_exhaustive_max_q"] = ext_t3_exhaustive_max_q;
    j["ext_t3_mc_max_q"] = ext_t3_mc_max_q;
    j["ext_count_max_q"] = ext_count_max_q;
    j["blockcount_max_q"] = blockcount_max_q;
    j["mc_samples"] = mc_samples;
    j["counter_cap"] = counter_cap;
    return j;
}

nlohmann::ordered_json report_core(const nlohmann::ordered_json& report) {
    nlohmann::ordered_json core = report;
    core.erase("timing_ms");
    core.erase("integrity");
    return core;
}

std::string report_integrity(const nlohmann::ordered_json& report) {
    return hex64(fnv1a(report_core(report).dump()));
}

ReportCache::ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::string ReportCache::key_of(const nlohmann::ordered_json& request) {
    return hex64(fnv1a(request.dump()));
}

std::optional<nlohmann::ordered_json> ReportCache::lookup(
    const std::string& key) const {
    const auto path = dir_ / (key + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    nlohmann::ordered_json report;
    try {
        report = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
        throw CacheCorruption("unparseable cache entry: " + path.string());
    }
    if (!report.contains("integrity") ||
        report["integrity"].get<std::string>() != report_integrity(report))
        throw CacheCorruption("integrity mismatch: " + path.string());
    return report;
}

void ReportCache::store(const std::string& key,
                        nlohmann::ordered_json report) const {
    report["integrity"] = report_integrity(report);
    const auto path = dir_ / (key + ".json");
    const auto tmp = dir_ / (key + ".tmp");
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << report.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);  // atomic on POSIX
}

}  // namespace opdlab

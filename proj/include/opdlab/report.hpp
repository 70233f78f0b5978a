#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace opdlab {

std::uint64_t fnv1a(std::string_view s);
std::string hex64(std::uint64_t v);

struct CacheCorruption : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exhaustive-verification ceilings, by field order. Work beyond a
/// ceiling is either downgraded to a labelled Monte-Carlo check or
/// reported as skipped, never silently truncated.
struct Budget {
    std::uint32_t t2_max_q = 729;
    std::uint32_t t3_max_q = 256;
    std::uint32_t ext_t3_exhaustive_max_q = 128;
    std::uint32_t ext_t3_mc_max_q = 256;
    std::uint32_t ext_count_max_q = 128;
    std::uint32_t blockcount_max_q = 512;
    std::uint32_t mc_samples = 200;
    std::uint64_t counter_cap = std::uint64_t(1) << 28;

    nlohmann::ordered_json to_json() const;
};

/// Report body with the volatile fields ("timing_ms") removed; the part
/// covered by determinism and integrity checks.
nlohmann::ordered_json report_core(const nlohmann::ordered_json& report);

std::string report_integrity(const nlohmann::ordered_json& report);

/// Content-addressed report storage. Keys are hashes of the canonical
/// request; stored reports embed an integrity hash over their core and a
/// lookup re-verifies it, so corruption surfaces as an error rather than
/// a silent miss. Writes go through a temp file + rename.
class ReportCache {
  public:
    explicit ReportCache(std::filesystem::path dir);

    static std::string key_of(const nlohmann::ordered_json& request);

    std::optional<nlohmann::ordered_json> lookup(const std::string& key) const;
    void store(const std::string& key, nlohmann::ordered_json report) const;

    const std::filesystem::path& dir() const { return dir_; }

  private:
    std::filesystem::path dir_;
};

}  // namespace opdlab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "opdlab/report.hpp"

namespace opdlab {

enum class ConjectureId {
    blockcount,  // C-blockcount: b = q(q-1) for non-translation o-polynomials
    stabilizer,  // C-stabilizer: trivial stabilizer off the power-of-2 exponents
    x10,         // C-x10: odd-characteristic x^10 spectrum recurrence + designs
    extended,    // C-extended: b = q(q-1)^2 under the extended construction
};

const char* conjecture_name(ConjectureId id);
ConjectureId conjecture_from_name(const std::string& name);

enum class Verdict { holds, fails, skipped };

struct ConjectureCase {
    ConjectureId id;
    std::uint32_t m = 0;
    std::string instance;  // family name or exponent
    Verdict verdict = Verdict::skipped;
    nlohmann::ordered_json details;  // witness on failure, reason on skip

    nlohmann::ordered_json to_json() const;
};

/// Runs one conjecture over the given extension degrees. Instances whose
/// field order exceeds the budget come back as skipped with the reason
/// recorded; a "fails" verdict always carries a concrete witness.
std::vector<ConjectureCase> run_conjecture(ConjectureId id,
                                           const std::vector<std::uint32_t>& ms,
                                           const Budget& budget = {},
                                           std::uint64_t seed = 0x5eed);

/// k_m = (3^m + 1)/2 + 3^(m-1) - 3 k_(m-2), k_1 = 2 (odd m).
std::uint64_t x10_block_size(std::uint32_t m);

}  // namespace opdlab

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace negacopula {

/// Identifier of the generator and seeding scheme; embedded in every run record.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64/seed_seq/open53-v1";

/// A reproducible uniform stream. The engine is std::mt19937_64 seeded through
/// std::seed_seq from (seed, stream); both are specified bit-exactly by the standard.
/// Independent streams for parallel work use distinct stream indices.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

    /// Uniform on the open interval (0,1) with 53-bit resolution.
    double uniform() noexcept;

private:
    std::mt19937_64 engine_;
};

}  // namespace negacopula

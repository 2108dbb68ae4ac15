/**
 * @file random.hpp
 * @brief Seeded random streams and circular complex Gaussian draws.
 */
#pragma once

#include <cstdint>
#include <random>

#include "adaptdet/types.hpp"

namespace adaptdet {

/// One round of the splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of stream @p index under @p master. Pure function of both arguments,
/// so a trial's randomness does not depend on which worker runs it.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept;

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

    /// (g₁ + i·g₂)/√2, so E|w|² = 1.
    cplx complex_normal();

    /// rows×cols matrix of independent complex_normal() entries, column by column.
    CMatrix complex_normal(Eigen::Index rows, Eigen::Index cols);

    std::mt19937_64& engine() noexcept { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace adaptdet

#pragma once

#include <cstdint>
#include <random>

#include "kwayneg/tensor.hpp"

namespace kwayneg {

/// Seeded random source. Independent tasks take independent streams of the
/// same seed: the engine is a mt19937_64 seeded through std::seed_seq with
/// the 32-bit halves of (seed, stream).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    Complex complex_normal();
    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Independent complex standard normal amplitudes, normalized.
PureState haar_random_pure(const SubsystemLayout& layout, RandomStream& rng);
PureState haar_random_pure(const SubsystemLayout& layout, std::uint64_t seed);

/// Haar-distributed n x n unitary (QR of a complex Ginibre matrix with the
/// phases of R's diagonal removed).
CMatrix haar_unitary(int n, RandomStream& rng);

/// G G^dagger / tr(G G^dagger) with G a total_dim x rank Ginibre matrix.
DensityOperator random_mixed(const SubsystemLayout& layout, int rank, RandomStream& rng);

}  // namespace kwayneg

#include "kwayneg/random.hpp"

#include <array>
#include <cmath>

#include "kwayneg/error.hpp"

namespace kwayneg {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) : engine_(seeded_engine(seed, stream)) {}

Complex RandomStream::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

std::size_t RandomStream::below(std::size_t n) {
    if (n == 0) {
        throw ArgumentError("empty range");
    }
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(engine_);
}

PureState haar_random_pure(const SubsystemLayout& layout, RandomStream& rng) {
    CVector v(static_cast<Eigen::Index>(layout.total_dim()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = rng.complex_normal();
    }
    return PureState::normalized(layout, std::move(v));
}

PureState haar_random_pure(const SubsystemLayout& layout, std::uint64_t seed) {
    RandomStream rng(seed);
    return haar_random_pure(layout, rng);
}

CMatrix haar_unitary(int n, RandomStream& rng) {
    if (n < 1) {
        throw ArgumentError("unitary side must be positive");
    }
    CMatrix g(n, n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            g(r, c) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix& rmat = qr.matrixQR();
    for (int k = 0; k < n; ++k) {
        const Complex d = rmat(k, k);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(k) *= d / mag;
        }
    }
    return q;
}

DensityOperator random_mixed(const SubsystemLayout& layout, int rank, RandomStream& rng) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    if (rank < 1 || rank > n) {
        throw ArgumentError("rank must lie in [1, total_dim]");
    }
    CMatrix g(n, rank);
    for (Eigen::Index c = 0; c < rank; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            g(r, c) = rng.complex_normal();
        }
    }
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint());
    return DensityOperator::trusted(layout, std::move(rho));
}

}  // namespace kwayneg

#pragma once

#include <cstddef>

#include "kwayneg/tensor.hpp"

namespace kwayneg {

enum class TransposeKind { Global, KWay, PairRestricted };

/// Which partial transpose to take with respect to the focus subsystem.
struct TransposeSpec {
    TransposeKind kind = TransposeKind::Global;
    int focus = 0;
    int order = 0;     ///< K, for KWay
    int partner = -1;  ///< for PairRestricted

    static TransposeSpec global(int focus) { return {TransposeKind::Global, focus, 0, -1}; }
    static TransposeSpec kway(int order, int focus) { return {TransposeKind::KWay, focus, order, -1}; }
    static TransposeSpec pair(int focus, int partner) { return {TransposeKind::PairRestricted, focus, 0, partner}; }
};

/// Number of subsystems whose labels differ between basis states r and c.
int differing_count(std::size_t r, std::size_t c, const SubsystemLayout& layout);

/// Transposes every matrix index of subsystem `focus`.
CMatrix global_pt(const DensityOperator& rho, int focus);

/// Transposes the focus index only on elements whose row and column labels
/// differ in exactly `order` subsystems; every other element is copied.
/// Throws ArgumentError unless 2 <= order <= N.
CMatrix kway_pt(const DensityOperator& rho, int order, int focus);

/// Two-way transpose restricted to elements where the remaining (third)
/// subsystem keeps its label. Three subsystems only.
CMatrix pair_pt(const DensityOperator& rho, int focus, int partner);

CMatrix partial_transpose(const DensityOperator& rho, const TransposeSpec& spec);

}  // namespace kwayneg

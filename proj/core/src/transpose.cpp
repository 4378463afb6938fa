#include "kwayneg/transpose.hpp"

#include <vector>

#include <fmt/format.h>

#include "kwayneg/config.hpp"
#include "kwayneg/error.hpp"

namespace kwayneg {

namespace {

// Digits of every basis index, row-major: digits[k * N + m].
struct BasisTable {
    explicit BasisTable(const SubsystemLayout& layout) : n(layout.count()), digits(layout.total_dim() * static_cast<std::size_t>(n)) {
        for (std::size_t k = 0; k < layout.total_dim(); ++k) {
            const auto multi = multi_index(k, layout);
            std::copy(multi.begin(), multi.end(), digits.begin() + static_cast<std::ptrdiff_t>(k * static_cast<std::size_t>(n)));
        }
    }

    int digit(std::size_t k, int m) const { return digits[k * static_cast<std::size_t>(n) + static_cast<std::size_t>(m)]; }

    int differing(std::size_t r, std::size_t c) const {
        int count = 0;
        for (int m = 0; m < n; ++m) {
            count += digit(r, m) != digit(c, m) ? 1 : 0;
        }
        return count;
    }

    int n;
    std::vector<int> digits;
};

// Builds the output elementwise: where `moves(r, c)` holds the focus labels of
// row and column are exchanged, elsewhere the element is copied.
template <typename Pred>
CMatrix transpose_where(const DensityOperator& rho, int focus, Pred moves) {
    const SubsystemLayout& layout = rho.layout();
    layout.dim(focus);  // range check
    const BasisTable table(layout);
    const auto stride = layout.stride(focus);
    const CMatrix& m = rho.matrix();
    const auto n = static_cast<std::size_t>(m.rows());
    CMatrix out(m.rows(), m.cols());
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            const auto ri = static_cast<Eigen::Index>(r);
            const auto ci = static_cast<Eigen::Index>(c);
            if (!moves(table, r, c)) {
                out(ri, ci) = m(ri, ci);
                continue;
            }
            const auto ip = static_cast<std::size_t>(table.digit(r, focus));
            const auto jp = static_cast<std::size_t>(table.digit(c, focus));
            const std::size_t r_src = r - ip * stride + jp * stride;
            const std::size_t c_src = c - jp * stride + ip * stride;
            out(ri, ci) = m(static_cast<Eigen::Index>(r_src), static_cast<Eigen::Index>(c_src));
        }
    }
    const double defect = hermiticity_defect(out);
    if (!(defect <= kTol.hermitian)) {
        throw InvariantViolation(fmt::format("partial transpose is not Hermitian: defect={:.3g}", defect));
    }
    return out;
}

}  // namespace

int differing_count(std::size_t r, std::size_t c, const SubsystemLayout& layout) {
    const auto a = multi_index(r, layout);
    const auto b = multi_index(c, layout);
    int count = 0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        count += a[m] != b[m] ? 1 : 0;
    }
    return count;
}

CMatrix global_pt(const DensityOperator& rho, int focus) {
    return transpose_where(rho, focus, [](const BasisTable&, std::size_t, std::size_t) { return true; });
}

CMatrix kway_pt(const DensityOperator& rho, int order, int focus) {
    const int n = rho.layout().count();
    if (order < 2 || order > n) {
        throw ArgumentError(fmt::format("K-way order {} outside [2, {}]", order, n));
    }
    return transpose_where(rho, focus, [order](const BasisTable& t, std::size_t r, std::size_t c) {
        return t.differing(r, c) == order;
    });
}

CMatrix pair_pt(const DensityOperator& rho, int focus, int partner) {
    const SubsystemLayout& layout = rho.layout();
    if (layout.count() != 3) {
        throw UnsupportedError("pair-restricted transposes are defined for three subsystems only");
    }
    layout.dim(focus);
    layout.dim(partner);
    if (focus == partner) {
        throw ArgumentError("pair-restricted transpose needs two distinct subsystems");
    }
    const int third = 3 - focus - partner;
    return transpose_where(rho, focus, [third](const BasisTable& t, std::size_t r, std::size_t c) {
        return t.differing(r, c) == 2 && t.digit(r, third) == t.digit(c, third);
    });
}

CMatrix partial_transpose(const DensityOperator& rho, const TransposeSpec& spec) {
    switch (spec.kind) {
        case TransposeKind::Global:
            return global_pt(rho, spec.focus);
        case TransposeKind::KWay:
            return kway_pt(rho, spec.order, spec.focus);
        case TransposeKind::PairRestricted:
            return pair_pt(rho, spec.focus, spec.partner);
    }
    throw ArgumentError("unknown transpose kind");
}

}  // namespace kwayneg

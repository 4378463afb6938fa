#include "kwayneg/convex_roof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "kwayneg/config.hpp"
#include "kwayneg/error.hpp"
#include "kwayneg/negativity.hpp"
#include "kwayneg/random.hpp"

namespace kwayneg {

namespace {

constexpr double kInitialAngle = std::numbers::pi / 4.0;
constexpr double kFinalAngle = 1e-8;
constexpr double kConvergedGain = 1e-8;

// Columns sqrt(lambda_k) e_k over the retained eigenpairs.
CMatrix weighted_eigenvectors(const DensityOperator& rho) {
    const EigenSystem es = hermitian_eigensystem(rho.matrix());
    std::vector<Eigen::Index> kept;
    for (Eigen::Index k = es.values.size() - 1; k >= 0; --k) {
        if (es.values[k] > kTol.drop_weight) {
            kept.push_back(k);
        }
    }
    CMatrix phi(rho.matrix().rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t i = 0; i < kept.size(); ++i) {
        phi.col(static_cast<Eigen::Index>(i)) = std::sqrt(es.values[kept[i]]) * es.vectors.col(kept[i]);
    }
    return phi;
}

Ensemble members_from(const SubsystemLayout& layout, const CMatrix& phi, const CMatrix& w) {
    Ensemble out;
    for (Eigen::Index j = 0; j < w.rows(); ++j) {
        const CVector v = phi * w.row(j).transpose();
        const double p = v.squaredNorm();
        if (p > kTol.drop_weight) {
            out.members.push_back({p, PureState(layout, v / std::sqrt(p))});
        }
    }
    return out;
}

class MemberCost {
public:
    MemberCost(const SubsystemLayout& layout, const CMatrix& phi, int focus, RoofMeasure measure)
        : layout_(layout), phi_(phi), focus_(focus), measure_(measure) {}

    double operator()(const CVector& row) const {
        const CVector v = phi_ * row;
        const double p = v.squaredNorm();
        if (p <= kTol.drop_weight) {
            return 0.0;
        }
        return p * pure_measure(PureState(layout_, v / std::sqrt(p)), focus_, measure_);
    }

private:
    const SubsystemLayout& layout_;
    const CMatrix& phi_;
    int focus_;
    RoofMeasure measure_;
};

struct RestartOutcome {
    CMatrix w;
    double value;
    bool converged;
};

RestartOutcome run_restart(const MemberCost& cost, CMatrix w, int iterations, RandomStream& rng) {
    const Eigen::Index m = w.rows();
    std::vector<double> costs(static_cast<std::size_t>(m));
    double total = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        costs[static_cast<std::size_t>(j)] = cost(w.row(j).transpose());
        total += costs[static_cast<std::size_t>(j)];
    }

    const double decay = std::pow(kFinalAngle / kInitialAngle, 1.0 / std::max(1, iterations - 1));
    const int tail_start = iterations - std::max(1, iterations / 5);
    double tail_value = total;
    double angle = kInitialAngle;
    for (int it = 0; it < iterations; ++it, angle *= decay) {
        if (it == tail_start) {
            tail_value = total;
        }
        if (m < 2) {
            continue;
        }
        const auto i = static_cast<Eigen::Index>(rng.below(static_cast<std::size_t>(m)));
        auto j = static_cast<Eigen::Index>(rng.below(static_cast<std::size_t>(m - 1)));
        if (j >= i) {
            ++j;
        }
        const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        // An accepted rotation is extended by doubling while that keeps paying off.
        double theta = angle * (2.0 * rng.uniform() - 1.0);
        while (std::abs(theta) <= kInitialAngle) {
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            const Eigen::RowVectorXcd wi = c * w.row(i) - phase * s * w.row(j);
            const Eigen::RowVectorXcd wj = std::conj(phase) * s * w.row(i) + c * w.row(j);
            const double ci = cost(wi.transpose());
            const double cj = cost(wj.transpose());
            const double gain = costs[ui] + costs[uj] - ci - cj;
            if (!(gain > 0.0)) {
                break;
            }
            w.row(i) = wi;
            w.row(j) = wj;
            costs[ui] = ci;
            costs[uj] = cj;
            total -= gain;
            theta *= 2.0;
        }
    }
    return {std::move(w), total, tail_value - total < kConvergedGain};
}

}  // namespace

CMatrix Ensemble::mixture() const {
    if (members.empty()) {
        throw ValidationError("empty ensemble");
    }
    const auto dim = static_cast<Eigen::Index>(members.front().state.layout().total_dim());
    CMatrix m = CMatrix::Zero(dim, dim);
    for (const auto& member : members) {
        const CVector& v = member.state.amplitudes();
        m.noalias() += member.probability * v * v.adjoint();
    }
    return m;
}

double Ensemble::reconstruction_error(const DensityOperator& rho) const {
    return (mixture() - rho.matrix()).norm();
}

Ensemble eigen_ensemble(const DensityOperator& rho) {
    const CMatrix phi = weighted_eigenvectors(rho);
    return members_from(rho.layout(), phi, CMatrix::Identity(phi.cols(), phi.cols()));
}

Ensemble isometry_ensemble(const DensityOperator& rho, const CMatrix& w, int m) {
    const CMatrix phi = weighted_eigenvectors(rho);
    if (m < phi.cols() || w.rows() != m || w.cols() != phi.cols()) {
        throw ValidationError(fmt::format("isometry must be {} x {} with m >= rank, got {} x {}", m, phi.cols(),
                                          w.rows(), w.cols()));
    }
    const double defect =
        (w.adjoint() * w - CMatrix::Identity(w.cols(), w.cols())).cwiseAbs().maxCoeff();
    if (defect > kTol.unitary) {
        throw ValidationError(fmt::format("isometry columns are not orthonormal: defect={:.3g}", defect));
    }
    return members_from(rho.layout(), phi, w);
}

double pure_measure(const PureState& psi, int focus, const RoofMeasure& measure) {
    const SubsystemLayout& layout = psi.layout();
    const int dp = layout.dim(focus);
    if (measure.kind == RoofMeasure::Kind::KWay) {
        return partial_kway_negativity(outer(psi), measure.order, focus);
    }
    // ||rho^T_p||_1 is the squared sum of Schmidt coefficients across p | rest.
    const std::size_t stride = layout.stride(focus);
    const auto rest = static_cast<Eigen::Index>(layout.total_dim() / static_cast<std::size_t>(dp));
    CMatrix split(dp, rest);
    for (std::size_t k = 0; k < layout.total_dim(); ++k) {
        const auto row = static_cast<Eigen::Index>((k / stride) % static_cast<std::size_t>(dp));
        const auto col = static_cast<Eigen::Index>((k / (stride * static_cast<std::size_t>(dp))) * stride + k % stride);
        split(row, col) = psi[k];
    }
    const double s = Eigen::JacobiSVD<CMatrix>(split).singularValues().sum();
    return (s * s - 1.0) / (dp - 1);
}

double ensemble_average(const Ensemble& ensemble, int focus, const RoofMeasure& measure) {
    double total = 0.0;
    for (const auto& member : ensemble.members) {
        total += member.probability * pure_measure(member.state, focus, measure);
    }
    return total;
}

RoofResult roof_negativity(const DensityOperator& rho, int focus, const RoofMeasure& measure,
                           const RoofBudget& budget) {
    if (budget.restarts <= 0 || budget.iterations <= 0 || budget.m_max <= 0) {
        throw ArgumentError(fmt::format("roof budget must be positive: restarts={} iterations={} m_max={}",
                                        budget.restarts, budget.iterations, budget.m_max));
    }
    const int n = rho.layout().count();
    if (focus < 0 || focus >= n) {
        throw IndexError(fmt::format("focus {} outside [0, {})", focus, n));
    }
    if (measure.kind == RoofMeasure::Kind::KWay && (measure.order < 2 || measure.order > n)) {
        throw ArgumentError(fmt::format("K-way order {} outside [2, {}]", measure.order, n));
    }

    const CMatrix phi = weighted_eigenvectors(rho);
    const auto rank = static_cast<int>(phi.cols());
    RoofResult result;
    if (rank == 1) {
        result.certificate = eigen_ensemble(rho);
        result.value = measure.kind == RoofMeasure::Kind::Global
                           ? global_negativity(rho, focus)
                           : partial_kway_negativity(rho, measure.order, focus);
        result.converged = true;
        return result;
    }

    const int m = std::max(rank, std::min(2 * rank, budget.m_max));
    const MemberCost cost(rho.layout(), phi, focus, measure);
    bool have_best = false;
    RestartOutcome best;
    for (int r = 0; r < budget.restarts; ++r) {
        RandomStream rng(budget.seed, static_cast<std::uint64_t>(r));
        CMatrix w = r == 0 ? CMatrix(CMatrix::Identity(m, rank)) : CMatrix(haar_unitary(m, rng).leftCols(rank));
        RestartOutcome outcome = run_restart(cost, std::move(w), budget.iterations, rng);
        if (!have_best || outcome.value < best.value) {
            best = std::move(outcome);
            have_best = true;
        }
    }
    result.certificate = members_from(rho.layout(), phi, best.w);
    result.value = ensemble_average(result.certificate, focus, measure);
    result.restarts_used = budget.restarts;
    result.converged = best.converged;
    return result;
}

double reduced_pair_negativity(const PureState& psi, int focus, int partner) {
    if (focus == partner) {
        throw ArgumentError("pair needs two distinct subsystems");
    }
    const DensityOperator pair = partial_trace(outer(psi), {std::min(focus, partner), std::max(focus, partner)});
    return global_negativity(pair, focus < partner ? 0 : 1);
}

}  // namespace kwayneg

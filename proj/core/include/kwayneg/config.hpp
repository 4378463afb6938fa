#pragma once

namespace kwayneg {

/// Numerical tolerances shared by every module. All values are absolute.
struct Tolerances {
    double hermitian = 1e-10;       ///< max |M - M^dagger| entry accepted as Hermitian
    double norm = 1e-9;             ///< |<psi|psi> - 1| and |tr rho - 1|
    double psd = 1e-9;              ///< smallest density-operator eigenvalue allowed is -psd
    double eigen = 1e-10;           ///< eigenvalues below -eigen count as negative
    double unitary = 1e-12;         ///< max |U^dagger U - I| entry
    double jacobi_offdiag = 1e-13;  ///< off-diagonal Frobenius norm at which Jacobi stops
    int jacobi_max_sweeps = 100;
    double sum_rule = 1e-9;         ///< admissible N_G - (sum E_K - E_0) residual
    double inequality_slack = 1e-9;
    double spectrum_clamp = 1e-12;  ///< eigenvalues of rho * spin-flipped rho below this are zero
    double sqrt_clamp = 1e-14;      ///< eigenvalues of rho below this are zero inside sqrt(rho)
    double drop_weight = 1e-12;     ///< ensemble members lighter than this are dropped
};

inline constexpr Tolerances kTol{};

}  // namespace kwayneg

// collective.hpp: N qubits dephasing through one shared bosonic bath,
// restricted to the symmetric (Dicke) subspace.
//
// Basis index k = 0..N counts down spins; the collective L_z = sum_j sigma_zj
// has eigenvalue m = N - 2k. k = 0 is |up...up>, k = N is |down...down>.

#pragma once

#include <functional>

#include <Eigen/Dense>

#include "bathforge/kk.hpp"
#include "bathforge/spectra.hpp"

namespace bathforge::collective {

inline constexpr int kMaxQubits = 14;

class DickeState {
public:
    // Throws std::invalid_argument for N outside [1, 14] or a wrong shape.
    DickeState(int n_qubits, Eigen::MatrixXcd rho);

    static DickeState from_pure(int n_qubits, const Eigen::VectorXcd& amplitudes);
    static DickeState all_up(int n_qubits);
    static DickeState all_down(int n_qubits);
    // Spin-coherent state with every qubit cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>.
    static DickeState coherent(int n_qubits, double theta, double phi);
    // (|up...up> + e^{i chi} |down...down>) / sqrt(2).
    static DickeState ghz(int n_qubits, double chi = 0.0);

    int n_qubits() const { return n_; }
    const Eigen::MatrixXcd& rho() const { return rho_; }
    static int m_of(int k, int n) { return n - 2 * k; }

    double trace() const;
    double min_eigenvalue() const;
    double hermiticity_defect() const;  // max |rho - rho^dagger|

private:
    int n_;
    Eigen::MatrixXcd rho_;
};

// Dicke amplitudes of the spin-coherent state along (theta, phi).
Eigen::VectorXcd coherent_amplitudes(int n_qubits, double theta, double phi);

struct DephasingKernel {
    std::function<double(double)> lamb_phase;            // f(t)
    std::function<double(double)> decoherence_exponent;  // gamma(t)
};

// gamma(t) = kappa int_0^inf G coth(w / 2T) (1 - cos wt) / w^2 dw
// f(t)     =       int_0^inf G (wt - sin wt) / w^2 dw        (T = 0 spectrum)
// kappa in [0, 1] models phase-flip suppression of the linear term.
// Throws DomainError for an infrared-divergent gamma (G(0+) > 0 at T > 0)
// and for spectra with G(0+) > 0, whose f(t) diverges.
DephasingKernel dephasing_kernel(const spectra::ThermalBath& bath, double suppression = 1.0);

// f(t) = f_rate t, gamma(t) = gamma_rate t.
DephasingKernel markovian_kernel(double f_rate, double gamma_rate);

// rho_{mm'} -> rho_{mm'} exp(-i w0 (m - m') t) exp(i f (m'^2 - m^2)) exp(-(m - m')^2 gamma).
DickeState evolve(const DickeState& state, const DephasingKernel& kernel, double omega0, double t);

// max over chi of <GHZ(chi)| rho |GHZ(chi)> with the cat along z.
double ghz_fidelity(const DickeState& state);

// The same for the cat between the coherent states along (theta, phi) and
// the antipodal direction.
double cat_fidelity(const DickeState& state, double theta, double phi);

struct CatFidelity {
    double fidelity{0.0};
    double phi{0.0};
};

// Best cat fidelity over all equatorial axes (theta = pi/2). One-axis
// twisting of an x-polarized state produces its cat in the equatorial plane.
CatFidelity best_equatorial_cat_fidelity(const DickeState& state);

// Principal value P int G(w) / w dw by symmetric excision of |w| < delta,
// Richardson-extrapolated over delta, delta/2, delta/4. Throws NumericError
// when the extrapolation does not settle.
double lamb_shift_rate(const spectra::BathSpectrum& spectrum);
double lamb_shift_rate(const kk::SpectralDensity& density);

struct Dominance {
    double f_ab{0.0};
    double gamma{0.0};   // 2 pi G_T(0)
    double ratio{0.0};
    bool infinite{false};
};

Dominance dominance_ratio(const spectra::ThermalBath& bath);

} // namespace bathforge::collective

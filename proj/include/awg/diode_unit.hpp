#pragma once

// Single-unit reflection model: PIN-diode impedance versus terminal voltage,
// the unit's reflection coefficient, and the decoupled magnitude map L{.}
// with its inverse.

#include <complex>

namespace awg {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeedOfLight = 299792458.0;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Parametric PIN diode. Below v_forward the diode is an R-L-C series
// network; above it the RF resistance follows
//   r_on(v) = r_on_ref * ((v_ref - v_forward + v_soft) / (v - v_forward + v_soft))^slope
// in series with l_p. v_soft keeps r_on finite at the conduction threshold.
struct DiodeModel {
  double r_on_ref = 2.5;      // ohm at v_ref
  double v_forward = 0.7;     // V
  double v_ref = 1.2;         // V
  double v_soft = 0.05;       // V
  double slope = 2.0;
  double l_p = 0.7e-9;        // H
  double c_p = 1.8e-12;       // F
  double r_p0 = 2.0;          // ohm, zero-bias series resistance

  // Throws ConfigError naming the first violated invariant.
  void validate() const;

  // Forward-bias RF resistance. Requires v >= v_forward.
  double on_resistance(double v) const;
};

struct UnitModel {
  DiodeModel diode;
  double r_rf = 10.0;              // ohm
  double l_rf = 0.5e-9;            // H
  double c_rf = 0.6275e-12;        // F; +inf means no series capacitor
  double z0 = 377.0;               // ohm
  double phi_on = kPi;             // rad
  double phi_off = 0.0;            // rad
  double alpha = 0.96;             // OFF-state |RC|
  double phase_jitter = deg2rad(5.0);  // rad, ON-phase excursion across bias

  void validate() const;

  // Deterministic ON-phase deviation: phase_jitter at v_forward, falling
  // linearly to zero at v_ref and clamped beyond.
  double jitter(double v) const;
};

// Default carrier of the reference design (5.8 GHz).
constexpr double kDefaultCarrierHz = 5.8e9;
inline double default_omega() { return 2.0 * kPi * kDefaultCarrierHz; }

std::complex<double> pin_impedance(const DiodeModel& model, double v_ab, double omega);

std::complex<double> effective_impedance(const UnitModel& unit, double v_ab, double omega);

// (Z_eff - z0) / (Z_eff + z0). Throws SingularityError at Z_eff == -z0.
std::complex<double> reflection_coefficient(const UnitModel& unit, double v_ab, double omega);

// |reflection_coefficient| on the conducting branch. Throws
// PreconditionError when v_ab < v_forward.
double magnitude_map(const UnitModel& unit, double v_ab, double omega);

// Achievable ON-branch magnitudes [L(v_forward), L(v_ref)].
struct MagnitudeRange {
  double lo;
  double hi;
  double span() const { return hi - lo; }
};
MagnitudeRange magnitude_range(const UnitModel& unit, double omega);

// Bisection inverse of magnitude_map on [v_forward, v_ref]. Throws
// RangeError (carrying the achievable interval) for unreachable targets.
double inverse_magnitude_map(const UnitModel& unit, double target_mag, double omega);

struct RcState {
  double magnitude;
  double phase;
};

// Piecewise unit state: ON branch (L(v), phi_on + jitter(v)) at or above
// v_forward, otherwise (alpha, phi_off).
RcState rc_state(const UnitModel& unit, double v_ab, double omega);

}  // namespace awg

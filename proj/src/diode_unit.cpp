#include "awg/diode_unit.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "awg/errors.hpp"

namespace awg {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw DomainError(std::string(name) + " is not finite");
}

void require_omega(double omega) {
  require_finite(omega, "omega");
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
}

constexpr int kMaxBisection = 200;
constexpr double kMagnitudeTolerance = 1e-9;

}  // namespace

void DiodeModel::validate() const {
  if (!(v_forward > 0.0)) throw ConfigError("must be > 0", "diode.v_forward");
  if (!(v_ref > v_forward)) throw ConfigError("must exceed v_forward", "diode.v_ref");
  if (!(r_on_ref > 0.0)) throw ConfigError("must be > 0", "diode.r_on_ref");
  if (!(l_p > 0.0)) throw ConfigError("must be > 0", "diode.l_p");
  if (!(c_p > 0.0)) throw ConfigError("must be > 0", "diode.c_p");
  if (!(v_soft > 0.0)) throw ConfigError("must be > 0", "diode.v_soft");
  if (!(slope > 0.0)) throw ConfigError("must be > 0", "diode.slope");
  if (!std::isfinite(r_p0)) throw ConfigError("must be finite", "diode.r_p0");
}

double DiodeModel::on_resistance(double v) const {
  const double ratio = (v_ref - v_forward + v_soft) / (v - v_forward + v_soft);
  return r_on_ref * std::pow(ratio, slope);
}

void UnitModel::validate() const {
  diode.validate();
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("must lie in (0, 1]", "unit.alpha");
  if (!(z0 > 0.0)) throw ConfigError("must be > 0", "unit.z0");
  if (!(c_rf > 0.0)) throw ConfigError("must be > 0 (use inf for none)", "unit.c_rf");
  if (!(phase_jitter >= 0.0)) throw ConfigError("must be >= 0", "unit.phase_jitter");
  if (!std::isfinite(phi_on) || !std::isfinite(phi_off)) {
    throw ConfigError("phases must be finite", "unit.phi_on/phi_off");
  }
}

double UnitModel::jitter(double v) const {
  const double span = diode.v_ref - diode.v_forward;
  double frac = (diode.v_ref - v) / span;
  if (frac < 0.0) frac = 0.0;
  if (frac > 1.0) frac = 1.0;
  return phase_jitter * frac;
}

std::complex<double> pin_impedance(const DiodeModel& model, double v_ab, double omega) {
  require_finite(v_ab, "v_ab");
  require_omega(omega);
  const std::complex<double> j(0.0, 1.0);
  if (v_ab < model.v_forward) {
    return model.r_p0 + j * omega * model.l_p + 1.0 / (j * omega * model.c_p);
  }
  return model.on_resistance(v_ab) + j * omega * model.l_p;
}

std::complex<double> effective_impedance(const UnitModel& unit, double v_ab, double omega) {
  const std::complex<double> zpin = pin_impedance(unit.diode, v_ab, omega);
  const double cap_reactance = std::isinf(unit.c_rf) ? 0.0 : -1.0 / (omega * unit.c_rf);
  const double re = zpin.real() + unit.r_rf;
  const double im = zpin.imag() + omega * unit.l_rf + cap_reactance;
  return {re, im};
}

std::complex<double> reflection_coefficient(const UnitModel& unit, double v_ab, double omega) {
  const std::complex<double> z = effective_impedance(unit, v_ab, omega);
  const std::complex<double> den = z + unit.z0;
  if (std::abs(den) <= std::numeric_limits<double>::epsilon() * unit.z0) {
    throw SingularityError("reflection coefficient pole: Z_eff = -z0");
  }
  return (z - unit.z0) / den;
}

double magnitude_map(const UnitModel& unit, double v_ab, double omega) {
  require_finite(v_ab, "v_ab");
  if (v_ab < unit.diode.v_forward) {
    std::ostringstream msg;
    msg << "magnitude_map: v_ab=" << v_ab << " V below v_forward=" << unit.diode.v_forward
        << " V (OFF branch)";
    throw PreconditionError(msg.str());
  }
  return std::abs(reflection_coefficient(unit, v_ab, omega));
}

MagnitudeRange magnitude_range(const UnitModel& unit, double omega) {
  return {magnitude_map(unit, unit.diode.v_forward, omega),
          magnitude_map(unit, unit.diode.v_ref, omega)};
}

double inverse_magnitude_map(const UnitModel& unit, double target_mag, double omega) {
  require_finite(target_mag, "target_mag");
  const MagnitudeRange range = magnitude_range(unit, omega);
  if (target_mag < range.lo || target_mag > range.hi) {
    std::ostringstream msg;
    msg << "target magnitude " << target_mag << " outside achievable range [" << range.lo << ", "
        << range.hi << "]";
    throw RangeError(msg.str(), range.lo, range.hi);
  }
  if (target_mag == range.hi) return unit.diode.v_ref;
  if (target_mag == range.lo) return unit.diode.v_forward;

  double lo = unit.diode.v_forward;
  double hi = unit.diode.v_ref;
  for (int it = 0; it < kMaxBisection; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval exhausted at double precision
    const double m = magnitude_map(unit, mid, omega);
    if (m < target_mag) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double v = 0.5 * (lo + hi);
  // Bracketing makes this unreachable for a monotone map; it guards
  // parameter sets that break monotonicity.
  if (std::abs(magnitude_map(unit, v, omega) - target_mag) > kMagnitudeTolerance) {
    throw RangeError("inverse_magnitude_map: map is not monotone for this unit", range.lo,
                     range.hi);
  }
  return v;
}

RcState rc_state(const UnitModel& unit, double v_ab, double omega) {
  require_finite(v_ab, "v_ab");
  if (v_ab >= unit.diode.v_forward) {
    return {magnitude_map(unit, v_ab, omega), unit.phi_on + unit.jitter(v_ab)};
  }
  return {unit.alpha, unit.phi_off};
}

}  // namespace awg

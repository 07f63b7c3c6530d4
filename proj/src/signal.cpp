#include "awg/signal.hpp"

#include <cmath>
#include <sstream>

#include "awg/errors.hpp"

namespace awg {

void SampledSignal::validate() const {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    throw DomainError("sample_rate must be positive and finite");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) {
      std::ostringstream msg;
      msg << "sample " << i << " is not finite";
      throw DomainError(msg.str());
    }
  }
}

SampledSignal make_signal(std::vector<double> samples, double sample_rate, SignalUnit unit) {
  SampledSignal s{std::move(samples), sample_rate, unit};
  s.validate();
  return s;
}

}  // namespace awg

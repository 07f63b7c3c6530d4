#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace awg {

enum class SignalUnit { volt, dimensionless };

// Uniformly sampled real waveform.
struct SampledSignal {
  std::vector<double> samples;
  double sample_rate = 1.0;
  SignalUnit unit = SignalUnit::dimensionless;

  std::size_t size() const { return samples.size(); }
  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }

  // Throws DomainError when sample_rate <= 0 or a sample is non-finite.
  void validate() const;
};

// Uniformly sampled complex envelope.
struct ComplexSignal {
  std::vector<std::complex<double>> samples;
  double sample_rate = 1.0;

  std::size_t size() const { return samples.size(); }
};

SampledSignal make_signal(std::vector<double> samples, double sample_rate,
                          SignalUnit unit = SignalUnit::dimensionless);

}  // namespace awg

#include "awg/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "awg/errors.hpp"

namespace awg {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file", path.string());
  return in;
}

std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path,
                                                  std::size_t columns) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && std::any_of(line.begin(), line.end(), [](char c) {
          return std::isalpha(static_cast<unsigned char>(c)) && c != 'e' && c != 'E';
        })) {
      continue;  // header
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("bad number '" + cell + "' on line " + std::to_string(line_no),
                          path.string());
      }
    }
    if (row.size() != columns) {
      throw ConfigError("expected " + std::to_string(columns) + " columns on line " +
                            std::to_string(line_no),
                        path.string());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Next whitespace-delimited PGM header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  int c = 0;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_signal_csv(const std::filesystem::path& path, const SampledSignal& s) {
  auto out = open_out(path);
  out << "time_s,value\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_number(static_cast<double>(i) / s.sample_rate) << ','
        << format_number(s.samples[i]) << '\n';
  }
}

SampledSignal read_signal_csv(const std::filesystem::path& path) {
  const auto rows = read_numeric_csv(path, 2);
  SampledSignal s;
  s.unit = SignalUnit::volt;
  for (const auto& r : rows) s.samples.push_back(r[1]);
  if (rows.size() >= 2) {
    const double dt = (rows.back()[0] - rows.front()[0]) / static_cast<double>(rows.size() - 1);
    if (!(dt > 0.0)) throw ConfigError("time column must increase", path.string());
    s.sample_rate = 1.0 / dt;
  }
  return s;
}

void write_complex_signal_csv(const std::filesystem::path& path, const ComplexSignal& s) {
  auto out = open_out(path);
  out << "time_s,re,im\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_number(static_cast<double>(i) / s.sample_rate) << ','
        << format_number(s.samples[i].real()) << ',' << format_number(s.samples[i].imag())
        << '\n';
  }
}

void write_pattern_csv(const std::filesystem::path& path, const BeamPattern& p) {
  auto out = open_out(path);
  out << "theta_deg,phi_deg,value\n";
  for (std::size_t it = 0; it < p.grid.theta.size(); ++it) {
    for (std::size_t ip = 0; ip < p.grid.phi.size(); ++ip) {
      out << format_number(rad2deg(p.grid.theta[it])) << ','
          << format_number(rad2deg(p.grid.phi[ip])) << ',' << format_number(p.at(it, ip))
          << '\n';
    }
  }
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s) {
  auto out = open_out(path);
  out << "freq_hz,magnitude_db\n";
  for (std::size_t k = 0; k < s.freq_hz.size(); ++k) {
    out << format_number(s.freq_hz[k]) << ',' << format_number(s.magnitude_db(k)) << '\n';
  }
}

void write_taps_csv(const std::filesystem::path& path, std::span<const double> taps) {
  auto out = open_out(path);
  out << "index,value\n";
  for (std::size_t i = 0; i < taps.size(); ++i) out << i << ',' << format_number(taps[i]) << '\n';
}

std::vector<double> read_taps_csv(const std::filesystem::path& path) {
  const auto rows = read_numeric_csv(path, 2);
  std::vector<double> taps(rows.size(), 0.0);
  for (const auto& r : rows) {
    const double idx = r[0];
    if (idx < 0.0 || idx != std::floor(idx) || idx >= static_cast<double>(rows.size())) {
      throw ConfigError("tap index out of range", path.string());
    }
    taps[static_cast<std::size_t>(idx)] = r[1];
  }
  return taps;
}

void write_spectrogram_csv(const std::filesystem::path& path, const Spectrogram& s) {
  auto out = open_out(path);
  out << "frame,bin,re,im\n";
  for (std::size_t j = 0; j < s.frames; ++j) {
    for (std::size_t b = 0; b < s.bins; ++b) {
      out << j << ',' << b << ',' << format_number(s.at(b, j).real()) << ','
          << format_number(s.at(b, j).imag()) << '\n';
    }
  }
}

void write_spectrogram_db_csv(const std::filesystem::path& path, const Spectrogram& s) {
  auto out = open_out(path);
  out << "frame,bin,magnitude_db\n";
  for (std::size_t j = 0; j < s.frames; ++j) {
    for (std::size_t b = 0; b < s.bins; ++b) {
      out << j << ',' << b << ','
          << format_number(20.0 * std::log10(std::max(std::abs(s.at(b, j)), 1e-20))) << '\n';
    }
  }
}

RealMatrix read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path);
  const std::string magic = pgm_token(in);
  if (magic != "P2" && magic != "P5") throw ConfigError("not a P2/P5 PGM", path.string());
  std::size_t w = 0;
  std::size_t h = 0;
  int maxval = 0;
  try {
    w = std::stoul(pgm_token(in));
    h = std::stoul(pgm_token(in));
    maxval = std::stoi(pgm_token(in));
  } catch (const std::exception&) {
    throw ConfigError("bad PGM header", path.string());
  }
  if (w == 0 || h == 0 || maxval <= 0 || maxval > 255) {
    throw ConfigError("only 8-bit PGM images are supported", path.string());
  }
  RealMatrix img(h, w, 0.0);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      int v = 0;
      if (magic == "P2") {
        const std::string tok = pgm_token(in);
        if (tok.empty()) throw ConfigError("truncated PGM", path.string());
        v = std::stoi(tok);
      } else {
        const int byte = in.get();
        if (byte == EOF) throw ConfigError("truncated PGM", path.string());
        v = byte;
      }
      img(r, c) = static_cast<double>(std::clamp(v, 0, maxval)) / maxval;
    }
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const RealMatrix& image, bool binary) {
  auto out = open_out(path);
  out << (binary ? "P5" : "P2") << '\n' << image.cols << ' ' << image.rows << "\n255\n";
  for (std::size_t r = 0; r < image.rows; ++r) {
    for (std::size_t c = 0; c < image.cols; ++c) {
      const int v = static_cast<int>(std::lround(std::clamp(image(r, c), 0.0, 1.0) * 255.0));
      if (binary) {
        out.put(static_cast<char>(v));
      } else {
        out << v << (c + 1 == image.cols ? '\n' : ' ');
      }
    }
  }
}

}  // namespace awg

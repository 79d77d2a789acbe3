// phonlesson-mkwav: write a silent PCM WAV file of a given duration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "phonlesson/audio_probe.hpp"
#include "phonlesson/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write a silent PCM WAV file"};
  std::string out_path;
  std::int64_t duration_ms = 1000;
  std::uint32_t rate = 44100;
  std::uint16_t channels = 1;
  std::uint16_t bits = 16;
  app.add_option("output", out_path, "Output .wav path")->required();
  app.add_option("--duration-ms", duration_ms, "Duration in milliseconds")->capture_default_str();
  app.add_option("--rate", rate, "Sample rate in Hz")->capture_default_str();
  app.add_option("--channels", channels, "Channel count")->capture_default_str();
  app.add_option("--bits", bits, "Bits per sample (8, 16, 24, 32)")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto bytes = phonlesson::synthesize_test_wav(duration_ms, rate, channels, bits);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw phonlesson::Error(phonlesson::ErrorKind::Io, "cannot write " + out_path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  } catch (const phonlesson::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace phonlesson {

// Reference to a PCM WAV asset. Only `path` is persisted; the remaining
// fields are zero until the file has been probed.
struct AudioClip {
  std::string path;
  std::int64_t durationMs = 0;
  std::uint32_t sampleRateHz = 0;
  std::uint16_t channels = 0;
  std::uint16_t bitsPerSample = 0;

  bool probed() const { return durationMs > 0; }
  bool operator==(const AudioClip&) const = default;
};

// Reads the RIFF/WAVE header chunks and computes the duration as
// floor(1000 * dataBytes / byteRate). Sample data is never decoded.
// Throws NotRiff, UnsupportedCodec, MissingChunk or CorruptHeader.
AudioClip probe_wav(std::span<const std::uint8_t> bytes);
AudioClip probe_wav_file(const std::string& file_path);

// Silent PCM file with a canonical 44-byte header. The data chunk holds
// ceil(durationMs * sampleRateHz / 1000) whole frames, so probing it yields
// durationMs exactly for any sample rate of at least 1000 Hz.
std::vector<std::uint8_t> synthesize_test_wav(std::int64_t durationMs, std::uint32_t sampleRateHz,
                                              std::uint16_t channels, std::uint16_t bitsPerSample);

}  // namespace phonlesson

#include "phonlesson/audio_probe.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>

#include "phonlesson/error.hpp"

namespace phonlesson {

namespace {

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char (&tag)[5]) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char (&tag)[5]) {
  out.insert(out.end(), tag, tag + 4);
}

struct FormatChunk {
  std::uint16_t audioFormat;
  std::uint16_t channels;
  std::uint32_t sampleRate;
  std::uint32_t byteRate;
  std::uint16_t bitsPerSample;
};

}  // namespace

AudioClip probe_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 4 && bytes.size() < 12 && tag_is(bytes, 0, "RIFF")) {
    throw Error(ErrorKind::CorruptHeader, "file truncated inside the RIFF header");
  }
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
    throw Error(ErrorKind::NotRiff, "missing RIFF/WAVE signature");
  }
  const std::uint64_t riff_end = 8ULL + read_u32(bytes, 4);
  if (riff_end > bytes.size()) {
    throw Error(ErrorKind::CorruptHeader, "RIFF size exceeds file length");
  }
  const auto riff = bytes.first(static_cast<std::size_t>(riff_end));

  std::optional<FormatChunk> fmt;
  std::optional<std::uint32_t> data_bytes;
  std::size_t pos = 12;
  while (pos + 8 <= riff.size()) {
    const std::uint32_t size = read_u32(riff, pos + 4);
    const std::size_t body = pos + 8;
    if (tag_is(riff, pos, "data")) {
      // Duration needs only the declared size; the samples may be cut short.
      if (body + size > riff.size()) {
        throw Error(ErrorKind::CorruptHeader, "data chunk overruns file");
      }
      data_bytes = size;
      break;
    }
    if (body + size > riff.size()) {
      throw Error(ErrorKind::CorruptHeader, "chunk overruns file");
    }
    if (tag_is(riff, pos, "fmt ")) {
      if (size < 16) throw Error(ErrorKind::CorruptHeader, "fmt chunk shorter than 16 bytes");
      fmt = FormatChunk{read_u16(riff, body), read_u16(riff, body + 2), read_u32(riff, body + 4),
                        read_u32(riff, body + 8), read_u16(riff, body + 14)};
    }
    pos = body + size + (size & 1U);
  }
  if (!data_bytes && pos < riff.size() && pos + 8 > riff.size()) {
    throw Error(ErrorKind::CorruptHeader, "truncated chunk header");
  }

  if (!fmt) throw Error(ErrorKind::MissingChunk, "no fmt chunk");
  if (fmt->audioFormat != 1) {
    throw Error(ErrorKind::UnsupportedCodec, "audio format tag " + std::to_string(fmt->audioFormat) + " is not PCM");
  }
  if (!data_bytes) throw Error(ErrorKind::MissingChunk, "no data chunk");
  if (fmt->channels == 0 || fmt->sampleRate == 0 || fmt->bitsPerSample == 0) {
    throw Error(ErrorKind::CorruptHeader, "zero channels, sample rate or bit depth");
  }
  const std::uint64_t byte_rate =
      static_cast<std::uint64_t>(fmt->sampleRate) * fmt->channels * fmt->bitsPerSample / 8;
  if (byte_rate == 0 || fmt->byteRate == 0) throw Error(ErrorKind::CorruptHeader, "byte rate is zero");

  AudioClip clip;
  clip.sampleRateHz = fmt->sampleRate;
  clip.channels = fmt->channels;
  clip.bitsPerSample = fmt->bitsPerSample;
  clip.durationMs = static_cast<std::int64_t>(1000ULL * *data_bytes / byte_rate);
  return clip;
}

AudioClip probe_wav_file(const std::string& file_path) {
  std::ifstream in(file_path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + file_path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  AudioClip clip = probe_wav(bytes);
  clip.path = file_path;
  return clip;
}

std::vector<std::uint8_t> synthesize_test_wav(std::int64_t durationMs, std::uint32_t sampleRateHz,
                                              std::uint16_t channels, std::uint16_t bitsPerSample) {
  if (durationMs <= 0 || durationMs > 60'000) {
    throw Error(ErrorKind::InvalidArgument, "duration must be within 1..60000 ms");
  }
  if (sampleRateHz == 0 || channels == 0 || bitsPerSample == 0 || bitsPerSample % 8 != 0) {
    throw Error(ErrorKind::InvalidArgument, "sample rate, channels and a whole-byte bit depth are required");
  }
  const std::uint32_t block_align = channels * (bitsPerSample / 8U);
  const std::uint64_t byte_rate = static_cast<std::uint64_t>(sampleRateHz) * block_align;
  // Rounded up so that probing floors back to durationMs whenever sampleRateHz >= 1000.
  const std::uint64_t frames = (static_cast<std::uint64_t>(durationMs) * sampleRateHz + 999) / 1000;
  const std::uint64_t data_size = frames * block_align;
  if (byte_rate > 0xFFFFFFFFULL || data_size + 36 > 0xFFFFFFFFULL) {
    throw Error(ErrorKind::InvalidArgument, "parameters exceed the RIFF size limit");
  }

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size + 1);
  put_tag(out, "RIFF");
  put_u32(out, static_cast<std::uint32_t>(36 + data_size + (data_size & 1U)));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, 1);
  put_u16(out, channels);
  put_u32(out, sampleRateHz);
  put_u32(out, static_cast<std::uint32_t>(byte_rate));
  put_u16(out, static_cast<std::uint16_t>(block_align));
  put_u16(out, bitsPerSample);
  put_tag(out, "data");
  put_u32(out, static_cast<std::uint32_t>(data_size));
  // Silence: 8-bit PCM is unsigned with midpoint 128, wider formats are signed.
  out.insert(out.end(), data_size, bitsPerSample == 8 ? 128 : 0);
  if (data_size & 1U) out.push_back(0);
  return out;
}

}  // namespace phonlesson

#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "avsa/alignment.hpp"
#include "avsa/mel.hpp"
#include "avsa/version.hpp"

namespace avsa {

// AVSF feature tensor container: magic "AVSF", u32 version, u32 channels,
// u32 frames, u32 bands, u32 JSON length + UTF-8 JSON channel-semantics
// block, then row-major little-endian float32 data. All integers LE.
namespace detail {

inline void put_u32_le(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline std::uint32_t read_u32_le(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::runtime_error("AVSF: truncated file");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace detail

inline std::string avsf_serialize(const FeatureTensor& t) {
  nlohmann::json semantics = nlohmann::json::array();
  for (const auto& s : t.semantics) semantics.push_back(s);
  const std::string block = semantics.dump();

  std::string out;
  out += "AVSF";
  detail::put_u32_le(out, kAvsfFormatVersion);
  detail::put_u32_le(out, static_cast<std::uint32_t>(t.channels));
  detail::put_u32_le(out, static_cast<std::uint32_t>(t.frames));
  detail::put_u32_le(out, static_cast<std::uint32_t>(t.bands));
  detail::put_u32_le(out, static_cast<std::uint32_t>(block.size()));
  out += block;
  for (const double v : t.data) {
    const float f = static_cast<float>(v);
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    detail::put_u32_le(out, bits);
  }
  return out;
}

inline void write_avsf(const std::string& path, const FeatureTensor& t) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("write_avsf: cannot open " + path);
  const std::string bytes = avsf_serialize(t);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write_avsf: write failed for " + path);
}

inline FeatureTensor read_avsf(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_avsf: cannot open " + path);
  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, "AVSF", 4) != 0)
    throw std::runtime_error("read_avsf: bad magic in " + path);
  const std::uint32_t version = detail::read_u32_le(f);
  if (version != kAvsfFormatVersion)
    throw std::runtime_error("read_avsf: unsupported version " + std::to_string(version));
  const std::uint32_t channels = detail::read_u32_le(f);
  const std::uint32_t frames = detail::read_u32_le(f);
  const std::uint32_t bands = detail::read_u32_le(f);
  const std::uint32_t block_len = detail::read_u32_le(f);

  std::string block(block_len, '\0');
  f.read(block.data(), block_len);
  if (!f) throw std::runtime_error("read_avsf: truncated semantics block");

  FeatureTensor t(static_cast<int>(channels), frames, static_cast<int>(bands));
  const auto semantics = nlohmann::json::parse(block);
  for (const auto& s : semantics) t.semantics.push_back(s.get<std::string>());

  for (auto& v : t.data) {
    std::uint32_t bits = detail::read_u32_le(f);
    float fv;
    std::memcpy(&fv, &bits, 4);
    v = fv;
  }
  return t;
}

// Embedding batches travel in the same container: channels = 1,
// frames = N * K, bands = D.
inline FeatureTensor embeddings_to_tensor(const EmbeddingBatch& b) {
  FeatureTensor t(1, b.count(), static_cast<int>(b.dim()));
  t.semantics = {std::string("embeddings:") + std::to_string(b.n_clips) + "x" +
                 std::to_string(b.crops_per_clip)};
  std::copy(b.rows.a.begin(), b.rows.a.end(), t.data.begin());
  return t;
}

inline EmbeddingBatch embeddings_from_tensor(const FeatureTensor& t, std::size_t n_clips,
                                             std::size_t crops_per_clip) {
  if (t.channels != 1) throw std::invalid_argument("embedding tensor must have one channel");
  if (t.frames != n_clips * crops_per_clip)
    throw std::invalid_argument("embedding tensor frame count does not match N*K");
  EmbeddingBatch b;
  b.n_clips = n_clips;
  b.crops_per_clip = crops_per_clip;
  b.rows = Mat(t.frames, static_cast<std::size_t>(t.bands));
  std::copy(t.data.begin(), t.data.end(), b.rows.a.begin());
  return b;
}

}  // namespace avsa

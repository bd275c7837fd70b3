#pragma once

// Resumable search state, one file per search.
//
// Layout (all integers little-endian regardless of host):
//   magic      8 bytes  "LCSLABCK"
//   version    u16      = 1
//   endian     u8       'L'
//   status     u8       0 running, 1 found, 2 exhausted
//   fingerprint u64     FNV-1a of the search descriptor
//   length     u32      length currently being searched
//   shards     u32      shard count at that length
//   done       ceil(shards / 8) bytes, bit i = shard i completed
//   best_shard u32      0xFFFFFFFF if none
//   best_len   u32
//   best       best_len bytes, one letter code each
//   checksum   u64      FNV-1a of every preceding byte

#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "lcslab/word.hpp"

namespace lcslab {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct CheckpointState {
  enum class Status : std::uint8_t { running = 0, found = 1, exhausted = 2 };

  Status status = Status::running;
  std::uint64_t fingerprint = 0;
  std::uint32_t length = 1;
  std::uint32_t shard_count = 0;
  std::vector<bool> done;
  std::optional<std::uint32_t> best_shard;
  std::vector<Letter> best;
};

inline constexpr std::array<char, 8> kCheckpointMagic{'L', 'C', 'S', 'L', 'A', 'B', 'C', 'K'};
inline constexpr std::uint16_t kCheckpointVersion = 1;

namespace detail {

class ByteWriter {
 public:
  template <class T>
  void put(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes_.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF));
  }
  void raw(const char* p, std::size_t n) { bytes_.append(p, n); }
  std::string& bytes() { return bytes_; }

 private:
  std::string bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}
  template <class T>
  T get() {
    if (pos_ + sizeof(T) > bytes_.size()) throw CheckpointError("checkpoint truncated");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  std::string_view raw(std::size_t n) {
    if (pos_ + n > bytes_.size()) throw CheckpointError("checkpoint truncated");
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t position() const noexcept { return pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string serialize_checkpoint(const CheckpointState& s) {
  detail::ByteWriter w;
  w.raw(kCheckpointMagic.data(), kCheckpointMagic.size());
  w.put<std::uint16_t>(kCheckpointVersion);
  w.put<std::uint8_t>('L');
  w.put<std::uint8_t>(static_cast<std::uint8_t>(s.status));
  w.put<std::uint64_t>(s.fingerprint);
  w.put<std::uint32_t>(s.length);
  w.put<std::uint32_t>(s.shard_count);
  std::string bits((s.shard_count + 7) / 8, '\0');
  for (std::size_t i = 0; i < s.shard_count && i < s.done.size(); ++i)
    if (s.done[i]) bits[i / 8] = static_cast<char>(bits[i / 8] | (1 << (i % 8)));
  w.raw(bits.data(), bits.size());
  w.put<std::uint32_t>(s.best_shard.value_or(0xFFFFFFFFu));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(s.best.size()));
  for (Letter x : s.best) w.put<std::uint8_t>(static_cast<std::uint8_t>(x));
  const std::uint64_t sum = fnv1a(w.bytes());
  w.put<std::uint64_t>(sum);
  return std::move(w.bytes());
}

inline CheckpointState deserialize_checkpoint(std::string_view bytes) {
  if (bytes.size() < 8 + 8) throw CheckpointError("checkpoint truncated");
  detail::ByteReader tail(bytes.substr(bytes.size() - 8));
  if (tail.get<std::uint64_t>() != fnv1a(bytes.substr(0, bytes.size() - 8)))
    throw CheckpointError("checkpoint checksum mismatch");
  detail::ByteReader r(bytes.substr(0, bytes.size() - 8));
  if (std::memcmp(r.raw(8).data(), kCheckpointMagic.data(), 8) != 0) throw CheckpointError("bad checkpoint magic");
  if (r.get<std::uint16_t>() != kCheckpointVersion) throw CheckpointError("unsupported checkpoint version");
  if (r.get<std::uint8_t>() != 'L') throw CheckpointError("unsupported checkpoint byte order");
  CheckpointState s;
  const auto status = r.get<std::uint8_t>();
  if (status > 2) throw CheckpointError("bad checkpoint status");
  s.status = static_cast<CheckpointState::Status>(status);
  s.fingerprint = r.get<std::uint64_t>();
  s.length = r.get<std::uint32_t>();
  s.shard_count = r.get<std::uint32_t>();
  const auto bits = r.raw((s.shard_count + 7) / 8);
  s.done.resize(s.shard_count);
  for (std::size_t i = 0; i < s.shard_count; ++i) s.done[i] = (static_cast<unsigned char>(bits[i / 8]) >> (i % 8)) & 1u;
  const auto best_shard = r.get<std::uint32_t>();
  if (best_shard != 0xFFFFFFFFu) s.best_shard = best_shard;
  const auto n = r.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto c = r.get<std::uint8_t>();
    if (c > 3) throw CheckpointError("bad letter code in checkpoint");
    s.best.push_back(static_cast<Letter>(c));
  }
  if (r.position() != bytes.size() - 8) throw CheckpointError("trailing bytes in checkpoint");
  return s;
}

inline void write_checkpoint(const std::filesystem::path& path, const CheckpointState& s) {
  const std::string bytes = serialize_checkpoint(s);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot write checkpoint " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw CheckpointError("short write on checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::optional<CheckpointState> read_checkpoint(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot read checkpoint " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_checkpoint(bytes);
}

}  // namespace lcslab

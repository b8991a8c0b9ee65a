#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "greenlaunch/common/errors.hpp"

namespace greenlaunch {

// Little-endian primitive IO. Hosts are LE in practice; the byte swap keeps
// the file format well-defined regardless.

template <typename T>
inline void write_le(std::ostream& os, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(buf[i], buf[sizeof(T) - 1 - i]);
  }
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
inline T read_le(std::istream& is) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char buf[sizeof(T)];
  is.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (!is) throw TruncationError("unexpected end of file");
  if constexpr (std::endian::native == std::endian::big) {
    for (size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(buf[i], buf[sizeof(T) - 1 - i]);
  }
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

template <typename T>
inline void write_le_span(std::ostream& os, std::span<const T> vals) {
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(vals.data()),
             static_cast<std::streamsize>(vals.size() * sizeof(T)));
  } else {
    for (const T& v : vals) write_le(os, v);
  }
}

template <typename T>
inline void read_le_span(std::istream& is, std::span<T> out) {
  if constexpr (std::endian::native == std::endian::little) {
    is.read(reinterpret_cast<char*>(out.data()),
            static_cast<std::streamsize>(out.size() * sizeof(T)));
    if (!is) throw TruncationError("unexpected end of file");
  } else {
    for (T& v : out) v = read_le<T>(is);
  }
}

}  // namespace greenlaunch

#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "flowdistill/error.hpp"

namespace flowdistill::io {

static_assert(std::endian::native == std::endian::little, "little-endian host required");

template <class T>
void write_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> buf;
  std::memcpy(buf.data(), &value, sizeof(T));
  out.write(buf.data(), sizeof(T));
}

template <class T>
T read_le(std::istream& in, std::uint64_t& offset, const char* what) {
  std::array<char, sizeof(T)> buf;
  in.read(buf.data(), sizeof(T));
  if (in.gcount() != static_cast<std::streamsize>(sizeof(T))) {
    throw FormatError(std::string("truncated file while reading ") + what, offset);
  }
  T value;
  std::memcpy(&value, buf.data(), sizeof(T));
  offset += sizeof(T);
  return value;
}

inline void write_magic(std::ostream& out, const char (&magic)[5]) { out.write(magic, 4); }

inline void expect_magic(std::istream& in, std::uint64_t& offset, const char (&magic)[5]) {
  std::array<char, 4> buf{};
  in.read(buf.data(), 4);
  if (in.gcount() != 4 || std::memcmp(buf.data(), magic, 4) != 0) {
    throw FormatError(std::string("bad magic, expected ") + magic, offset);
  }
  offset += 4;
}

}  // namespace flowdistill::io

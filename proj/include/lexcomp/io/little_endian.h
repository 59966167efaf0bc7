#ifndef LEXCOMP_IO_LITTLE_ENDIAN_H_
#define LEXCOMP_IO_LITTLE_ENDIAN_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <type_traits>

namespace lexcomp::io {

class LittleEndianReader {
 public:
  explicit LittleEndianReader(std::istream& in) : in_(in) {}

  bool bytes(void* out, std::size_t n) {
    in_.read(static_cast<char*>(out), static_cast<std::streamsize>(n));
    return static_cast<std::size_t>(in_.gcount()) == n;
  }

  template <typename T>
  bool little(T& out) {
    unsigned char buf[sizeof(T)];
    if (!bytes(buf, sizeof(T))) return false;
    std::make_unsigned_t<T> v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<std::make_unsigned_t<T>>(buf[i]) << (8 * i);
    }
    out = static_cast<T>(v);
    return true;
  }

 private:
  std::istream& in_;
};

template <typename T>
void put_little(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<unsigned char>(value >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

}  // namespace lexcomp::io

#endif  // LEXCOMP_IO_LITTLE_ENDIAN_H_

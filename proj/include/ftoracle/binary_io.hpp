#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "ftoracle/types.hpp"

namespace ftoracle {

// Little-endian fixed-width writer.
class BinaryWriter {
  public:
    void u8(std::uint8_t x) { bytes_.push_back(x); }
    void u32(std::uint32_t x) { put(x, 4); }
    void u64(std::uint64_t x) { put(x, 8); }
    void f64(double x) { put(std::bit_cast<std::uint64_t>(x), 8); }
    void raw(std::span<const std::uint8_t> b) { bytes_.insert(bytes_.end(), b.begin(), b.end()); }
    void tag(const char (&t)[5]) { raw({reinterpret_cast<const std::uint8_t*>(t), 4}); }

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

  private:
    void put(std::uint64_t x, int width) {
        for (int i = 0; i < width; ++i) {
            bytes_.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
        }
    }
    std::vector<std::uint8_t> bytes_;
};

class FormatError : public InputError {
  public:
    using InputError::InputError;
};

class BinaryReader {
  public:
    explicit BinaryReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::uint64_t u64() { return get(8); }
    double f64() { return std::bit_cast<double>(get(8)); }
    std::span<const std::uint8_t> raw(std::size_t len) {
        need(len);
        auto out = bytes_.subspan(pos_, len);
        pos_ += len;
        return out;
    }
    std::string tag() {
        auto b = raw(4);
        return std::string(b.begin(), b.end());
    }
    // Reads a count and rejects values that cannot fit in the remaining bytes
    // at min_item_bytes each.
    std::size_t count(std::size_t min_item_bytes) {
        std::uint64_t c = u64();
        if (min_item_bytes > 0 && c > remaining() / min_item_bytes) {
            throw FormatError("container count exceeds payload size");
        }
        return static_cast<std::size_t>(c);
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }
    void expect_end() const {
        if (remaining() != 0) {
            throw FormatError("trailing bytes in container section");
        }
    }

  private:
    void need(std::size_t len) const {
        if (len > remaining()) {
            throw FormatError("truncated container");
        }
    }
    std::uint64_t get(int width) {
        need(static_cast<std::size_t>(width));
        std::uint64_t x = 0;
        for (int i = 0; i < width; ++i) {
            x |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        }
        pos_ += static_cast<std::size_t>(width);
        return x;
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace ftoracle

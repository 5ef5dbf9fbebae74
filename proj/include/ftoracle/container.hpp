#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ftoracle/binary_io.hpp"
#include "ftoracle/oracle_s13.hpp"
#include "ftoracle/oracle_s5.hpp"

namespace ftoracle {

// On-disk layout, little-endian throughout:
//   "FTSO1"  u32 version  u64 graph digest  u8 kind  u64 seed
//   then the oracle's sections, each a 4-byte tag, a u64 length and payload.
inline constexpr std::uint32_t kContainerVersion = 1;

enum class OracleKind : std::uint8_t { s5 = 1, s13 = 2 };

std::string to_string(OracleKind kind);

struct ContainerHeader {
    std::uint32_t version = kContainerVersion;
    std::uint64_t graph_digest = 0;
    OracleKind kind = OracleKind::s5;
    std::uint64_t seed = 0;
};

// The container was built for a different graph.
class DigestMismatchError : public InputError {
  public:
    using InputError::InputError;
};

using AnyOracle = std::variant<OracleS5, OracleS13>;

struct LoadedOracle {
    ContainerHeader header;
    AnyOracle oracle;
};

std::vector<std::uint8_t> serialize_container(const OracleS5& o, std::uint64_t seed);
std::vector<std::uint8_t> serialize_container(const OracleS13& o, std::uint64_t seed);

// Throws FormatError on malformed bytes and DigestMismatchError when g is not
// the graph the container was built for.
ContainerHeader read_header(std::span<const std::uint8_t> bytes);
LoadedOracle deserialize_container(std::span<const std::uint8_t> bytes, const Graph& g);

void write_file(const std::string& path, std::span<const std::uint8_t> bytes);
// Throws InputError when the file cannot be read.
std::vector<std::uint8_t> read_file(const std::string& path);

} // namespace ftoracle

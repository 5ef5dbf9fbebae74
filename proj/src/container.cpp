#include "ftoracle/container.hpp"

#include <fstream>
#include <iterator>

namespace ftoracle {

namespace {

constexpr char kMagic[] = "FTSO1";

void write_header(BinaryWriter& w, const ContainerHeader& h) {
    w.raw({reinterpret_cast<const std::uint8_t*>(kMagic), 5});
    w.u32(h.version);
    w.u64(h.graph_digest);
    w.u8(static_cast<std::uint8_t>(h.kind));
    w.u64(h.seed);
}

ContainerHeader parse_header(BinaryReader& r) {
    auto magic = r.raw(5);
    if (!std::equal(magic.begin(), magic.end(), kMagic)) {
        throw FormatError("not an oracle container (bad magic)");
    }
    ContainerHeader h;
    h.version = r.u32();
    if (h.version != kContainerVersion) {
        throw FormatError("unsupported container version " + std::to_string(h.version));
    }
    h.graph_digest = r.u64();
    const std::uint8_t kind = r.u8();
    if (kind != static_cast<std::uint8_t>(OracleKind::s5) && kind != static_cast<std::uint8_t>(OracleKind::s13)) {
        throw FormatError("unknown oracle kind " + std::to_string(kind));
    }
    h.kind = static_cast<OracleKind>(kind);
    h.seed = r.u64();
    return h;
}

template <typename Oracle>
std::vector<std::uint8_t> serialize_any(const Oracle& o, OracleKind kind, std::uint64_t seed) {
    BinaryWriter w;
    write_header(w, {kContainerVersion, o.graph().digest(), kind, seed});
    o.serialize(w);
    return w.take();
}

} // namespace

std::string to_string(OracleKind kind) { return kind == OracleKind::s5 ? "s5" : "s13"; }

std::vector<std::uint8_t> serialize_container(const OracleS5& o, std::uint64_t seed) {
    return serialize_any(o, OracleKind::s5, seed);
}

std::vector<std::uint8_t> serialize_container(const OracleS13& o, std::uint64_t seed) {
    return serialize_any(o, OracleKind::s13, seed);
}

ContainerHeader read_header(std::span<const std::uint8_t> bytes) {
    BinaryReader r(bytes);
    return parse_header(r);
}

LoadedOracle deserialize_container(std::span<const std::uint8_t> bytes, const Graph& g) {
    BinaryReader r(bytes);
    const ContainerHeader h = parse_header(r);
    if (h.graph_digest != g.digest()) {
        throw DigestMismatchError("container was built for a different graph (digest mismatch)");
    }
    if (h.kind == OracleKind::s5) {
        LoadedOracle out{h, OracleS5::deserialize(r, g)};
        r.expect_end();
        return out;
    }
    LoadedOracle out{h, OracleS13::deserialize(r, g)};
    r.expect_end();
    return out;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw InputError("cannot open " + path + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw InputError("failed writing " + path);
    }
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace ftoracle

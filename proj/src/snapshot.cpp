#include "nlsq/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace nlsq {

namespace {

constexpr char kMagic[4] = {'N', 'L', 'S', 'Q'};
constexpr std::uint32_t kVersion = 1;

static_assert(sizeof(double) == 8);

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v),
                          static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 |
           std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

}  // namespace

void snapshot_write(const Field& f, Real t, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw SnapshotError("snapshot_write: cannot open " + path);
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(f.grid->dim));
    put_u32(os, static_cast<std::uint32_t>(f.grid->pts));
    put_f64(os, f.grid->half_width);
    put_f64(os, t);
    for (std::size_t i = 0; i < f.grid->size(); ++i) {
        put_f64(os, f.values[i].real());
        put_f64(os, f.values[i].imag());
    }
    if (!os) throw SnapshotError("snapshot_write: write failed for " + path);
}

std::pair<Field, Real> snapshot_read(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw SnapshotError("snapshot_read: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw SnapshotError("snapshot_read: magic mismatch in " + path);
    const std::uint32_t version = get_u32(is);
    if (version != kVersion)
        throw SnapshotError("snapshot_read: unsupported version " +
                            std::to_string(version));
    const std::uint32_t n = get_u32(is);
    const std::uint32_t m = get_u32(is);
    const double L = get_f64(is);
    const double t = get_f64(is);
    if (!is) throw SnapshotError("snapshot_read: truncated header in " + path);
    GridPtr grid = make_grid(static_cast<int>(n), static_cast<int>(m), L);
    CArray v(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        v[i] = Complex(re, im);
    }
    if (!is) throw SnapshotError("snapshot_read: truncated data in " + path);
    return {Field{std::move(grid), std::move(v)}, t};
}

}  // namespace nlsq

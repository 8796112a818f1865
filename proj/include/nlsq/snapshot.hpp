#pragma once

#include "nlsq/grid.hpp"

#include <string>
#include <utility>

namespace nlsq {

struct SnapshotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Binary field state: magic "NLSQ", format version u32, n u32, m u32,
// L f64, t f64, then m^n complex samples as (re f64, im f64); little-endian.
void snapshot_write(const Field& f, Real t, const std::string& path);
std::pair<Field, Real> snapshot_read(const std::string& path);

}  // namespace nlsq

#pragma once
#include <string>

#include "core/field.hpp"

namespace iaw {

// Writes <base>.bin (row-major little-endian float64) and <base>.hdr.
void write_field(const std::string& base, const RealField& f);
RealField read_field(const std::string& base);

}  // namespace iaw

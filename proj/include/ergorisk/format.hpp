#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace ergorisk {

/// Fixed number format for every emitted table: scientific with 6
/// significant digits. Identical inputs therefore always serialize to
/// identical bytes.
inline std::string format_sci(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.5e", v);
    return buf;
}

}  // namespace ergorisk

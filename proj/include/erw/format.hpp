#ifndef ERW_FORMAT_HPP
#define ERW_FORMAT_HPP

#include <cstdio>
#include <string>

namespace erw {

// 17 significant digits: enough to round-trip any double, locale-free.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace erw

#endif

// printf-style string formatting for error messages (libstdc++ 11 has no
// <format>).
#pragma once

#include <cstdarg>
#include <cstdio>
#include <string>

namespace qdc {

#if defined(__GNUC__)
__attribute__((format(printf, 1, 2)))
#endif
inline std::string
qfmt(const char* fmt, ...) {
    va_list args;
    va_start(args, fmt);
    va_list copy;
    va_copy(copy, args);
    const int n = std::vsnprintf(nullptr, 0, fmt, copy);
    va_end(copy);
    std::string out(n > 0 ? static_cast<std::size_t>(n) : 0, '\0');
    if (n > 0) std::vsnprintf(out.data(), out.size() + 1, fmt, args);
    va_end(args);
    return out;
}

}  // namespace qdc

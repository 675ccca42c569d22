#ifndef RAINBOW_VERSION_HPP
#define RAINBOW_VERSION_HPP

namespace rainbow {

/// Part of every stored result's provenance; cached results are only reused
/// when this matches.
inline constexpr const char* kEngineVersion = "1.0.0";

} // namespace rainbow

#endif // RAINBOW_VERSION_HPP

#ifndef RELSEM_VERSION_HPP
#define RELSEM_VERSION_HPP

namespace relsem {

// Stamped into audit witnesses; replay refuses witnesses from another version.
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace relsem

#endif  // RELSEM_VERSION_HPP

#ifndef QENC_VERSION_HPP_
#define QENC_VERSION_HPP_

namespace qenc {

inline constexpr char kToolName[] = "qenc";
inline constexpr char kToolVersion[] = "0.1.0";

}  // namespace qenc

#endif  // QENC_VERSION_HPP_

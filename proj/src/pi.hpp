#ifndef HYBRIDCP_SRC_PI_HPP
#define HYBRIDCP_SRC_PI_HPP

#include "hybridcp/interval.hpp"

#include <cmath>

// Enclosures of pi. The double nearest to pi lies below it.
namespace hybridcp::pi {

inline const double kLo = 0x1.921fb54442d18p+1;
inline const double kHi = std::nextafter(kLo, 4.0);
inline const double kHalfLo = kLo / 2;
inline const double kHalfHi = kHi / 2;

inline const Interval kPi{kLo, kHi};
inline const Interval kHalfPi{kHalfLo, kHalfHi};
inline const Interval kTwoPi{2 * kLo, 2 * kHi};

} // namespace hybridcp::pi

#endif // HYBRIDCP_SRC_PI_HPP

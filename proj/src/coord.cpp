#include "infogeo/coord.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace infogeo {

Interval::Interval(double lo_, double hi_, bool open_lo_, bool open_hi_)
    : lo(lo_), hi(hi_), open_lo(open_lo_ || !std::isfinite(lo_)), open_hi(open_hi_ || !std::isfinite(hi_)) {
  if (!(lo < hi)) {
    throw std::invalid_argument(fmt::format("interval requires lo < hi, got [{}, {}]", lo, hi));
  }
}

std::string Interval::to_string() const {
  return fmt::format("{}{}, {}{}", open_lo ? '(' : '[', lo, hi, open_hi ? ')' : ']');
}

Coord rebase(const Coord& c, const Interval& inner, const Interval& outer) {
  Coord out{c.value, 0.0, 0.0};
  out.from_lo = inner.lo == outer.lo ? c.from_lo : c.value - outer.lo;
  out.to_hi = inner.hi == outer.hi ? c.to_hi : outer.hi - c.value;
  return out;
}

}  // namespace infogeo

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace genlab {

// Exact arithmetic everywhere in the core; doubles appear only in CSV output
// and in the log-space regression of the genericity fit.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational ratio(std::uint64_t num, std::uint64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r);
}

// Fixed-width float rendering so identical configs produce identical bytes.
std::string float_cell(const Rational& r);

}  // namespace genlab

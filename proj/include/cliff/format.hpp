#pragma once

#include <charconv>
#include <complex>
#include <string>

namespace cliff {

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, ptr);
}

/// "a+bi" / "a-bi" with an explicit sign on the imaginary part.
inline std::string format_complex(std::complex<double> c) {
  std::string s = format_double(c.real());
  const double im = c.imag();
  if (std::signbit(im)) {
    s += '-';
    s += format_double(-im);
  } else {
    s += '+';
    s += format_double(im);
  }
  s += 'i';
  return s;
}

}  // namespace cliff

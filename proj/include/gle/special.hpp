#pragma once

#include <complex>
#include <stdexcept>

namespace gle {

using cplx = std::complex<double>;

// Thrown when e^{-z^2} overflows and no cancellation can rescue the result.
class Unrepresentable : public std::overflow_error {
public:
    explicit Unrepresentable(const std::string& what) : std::overflow_error(what) {}
};

// Faddeeva function w(z) = e^{-z^2} erfc(-iz).
cplx faddeeva(cplx z);

// Dawson integral e^{-x^2} \int_0^x e^{t^2} dt.
double dawson(double x);

// Complementary error function for complex argument.
cplx erfc_complex(cplx z);

}  // namespace gle

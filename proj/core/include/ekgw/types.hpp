#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ekgw {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};
inline constexpr cplx two_pi_i{0.0, 2.0 * std::numbers::pi};

// Precondition violated by the caller (bad index, point on the lattice, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Expression or integrand outside what the reducers handle.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string format_complex(cplx z);

// Compensated (Neumaier) summation, componentwise.
struct Neumaier {
    cplx sum = 0.0, comp = 0.0;
    void add(cplx x) {
        cplx t = sum + x;
        double cr = std::abs(sum.real()) >= std::abs(x.real()) ? (sum.real() - t.real()) + x.real()
                                                                : (x.real() - t.real()) + sum.real();
        double ci = std::abs(sum.imag()) >= std::abs(x.imag()) ? (sum.imag() - t.imag()) + x.imag()
                                                                : (x.imag() - t.imag()) + sum.imag();
        comp += cplx(cr, ci);
        sum = t;
    }
    cplx value() const { return sum + comp; }
};


}  // namespace ekgw

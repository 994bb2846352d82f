#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tswave {

using cplx = std::complex<double>;
using RVec = std::vector<double>;
using CVec = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cplx kI{0.0, 1.0};

// Error categories map onto CLI exit codes: validation 2, numerical 3, I/O 4.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IOError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tswave

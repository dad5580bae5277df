#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pluripot {

using cx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846;

/// A point of C^m for m in {1, 2}.  The second coordinate is kept at zero
/// when m == 1 so that norms and dot products work uniformly.
struct Pt {
    cx z1{0.0, 0.0};
    cx z2{0.0, 0.0};
    std::size_t m = 1;

    static Pt c1(cx z) { return Pt{z, cx{0.0, 0.0}, 1}; }
    static Pt c2(cx a, cx b) { return Pt{a, b, 2}; }

    double norm2() const { return std::norm(z1) + std::norm(z2); }
    double norm() const { return std::sqrt(norm2()); }

    bool operator==(const Pt& o) const {
        return m == o.m && z1 == o.z1 && z2 == o.z2;
    }
};

inline Pt operator*(double s, const Pt& p) { return Pt{s * p.z1, s * p.z2, p.m}; }
inline Pt operator*(cx s, const Pt& p) { return Pt{s * p.z1, s * p.z2, p.m}; }

/// A complex-linear form ell(z) = a1*z1 + a2*z2 on C^m.
struct LinearForm {
    cx a1{1.0, 0.0};
    cx a2{0.0, 0.0};
    std::size_t m = 1;

    cx eval(const Pt& p) const { return a1 * p.z1 + (m == 2 ? a2 * p.z2 : cx{}); }
    double coeff_norm() const { return std::sqrt(std::norm(a1) + std::norm(a2)); }
    bool is_zero() const { return a1 == cx{} && (m == 1 || a2 == cx{}); }
};

/// Domain errors surfaced by the library.  Each carries a stable kind tag so
/// callers (and the command-line driver) can map them to exit codes without
/// string matching.
class Error : public std::runtime_error {
  public:
    enum class Kind {
        invalid_input,     // malformed or inconsistent arguments
        empty_region,      // sampling produced no admissible points
        unsupported,       // operation not defined for this spec/constructor
        uncertain_count,   // lazily truncated zero list cannot answer exactly
        numeric,           // overflow or loss of meaning in a computed value
    };

    Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

[[noreturn]] inline void fail(Error::Kind k, const std::string& msg) { throw Error(k, msg); }

inline void require(bool ok, Error::Kind k, const std::string& msg) {
    if (!ok) fail(k, msg);
}

/// Fractional part in [0,1).
inline double frac(double x) { return x - std::floor(x); }

/// log(max(x, 0) ...) guarded against zero/negative arguments: returns -inf
/// for x <= 0, which callers clamp as needed.
inline double safe_log(double x) {
    return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
}

}  // namespace pluripot

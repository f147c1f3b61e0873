/* Numeric carrier for special-function evaluation: a complex double with a
 * propagated error estimate and an explicit point-at-infinity flag (used at
 * poles of elliptic functions).
 */
#pragma once

#include <cmath>
#include <complex>

namespace proflow {

struct CNum {
    std::complex<double> v{0.0, 0.0};
    double err = 0.0;
    bool inf = false;

    CNum() = default;
    CNum(double re, double im = 0.0, double e = 0.0) : v(re, im), err(e) {}
    CNum(std::complex<double> z, double e = 0.0) : v(z), err(e) {}

    double re() const { return v.real(); }
    double im() const { return v.imag(); }
    double abs() const { return std::abs(v); }

    static CNum infinity() {
        CNum c;
        c.inf = true;
        return c;
    }
};

inline std::complex<double> omega_root() {            // e^{2 pi i/3}
    return {-0.5, std::sqrt(3.0) / 2.0};
}

}  // namespace proflow

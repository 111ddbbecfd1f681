#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "shapesphere/errors.hpp"

namespace shapesphere {

// Normalized mass distribution (m1, m2, m3), sum forced to 1, together with the
// symmetric functions that show up everywhere downstream.
class MassDistribution {
  public:
    MassDistribution() : MassDistribution(1.0, 1.0, 1.0) {}

    MassDistribution(double m1, double m2, double m3) {
        if (!(m1 > 0.0) || !(m2 > 0.0) || !(m3 > 0.0))
            throw NumericalError("MassDistribution: masses must be positive");
        const double s = m1 + m2 + m3;
        m_[0] = m1 / s;
        m_[1] = m2 / s;
        m_[2] = m3 / s;
    }

    static MassDistribution equal() { return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}; }

    // index arithmetic is mod 3 throughout
    double m(int i) const { return m_[mod3(i)]; }
    double operator[](int i) const { return m_[mod3(i)]; }

    // dual masses m_i^* = (1 - m_i)/2, sum 1
    double dual(int i) const { return 0.5 * (1.0 - m(i)); }
    // mhat_i = m_j m_k
    double mhat(int i) const { return m(i + 1) * m(i + 2); }
    // mhat = sum of mhat_i
    double mhat() const { return mhat(0) + mhat(1) + mhat(2); }
    // mbar = m1 m2 m3
    double mbar() const { return m_[0] * m_[1] * m_[2]; }

    bool is_equal(double tol = 1e-12) const {
        return std::abs(m_[0] - m_[1]) < tol && std::abs(m_[1] - m_[2]) < tol;
    }

    static int mod3(int i) { return ((i % 3) + 3) % 3; }

  private:
    std::array<double, 3> m_{};
};

} // namespace shapesphere

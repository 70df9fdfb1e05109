#pragma once

#include <complex>
#include <optional>
#include <string>

namespace qsuper {

using Complex = std::complex<double>;

/// Deformation parameter q, stored together with a fixed branch of log q so
/// that fractional powers q^{x} are single valued.
///
/// Two entry points: the statistical parameter nu (q = e^{i pi nu}) or a
/// positive real q. Internally only (q, log q) flow onward.
class Deformation {
public:
    static Deformation from_nu(double nu);
    static Deformation from_real(double q);
    static Deformation classical() { return from_real(1.0); }

    Complex value() const { return q_; }
    Complex log() const { return log_q_; }
    std::optional<double> nu() const { return nu_; }
    bool on_unit_circle() const { return nu_.has_value(); }

    /// q^{x} on the stored branch.
    Complex pow(double x) const { return std::exp(x * log_q_); }

    /// q -> q^{-1} on the same branch.
    Deformation inverse() const;

    /// q^{d} for integer d (d = +-1 in practice).
    Deformation power(int d) const;

    /// [n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}, with [-n]_q = -[n]_q.
    /// The finite sum avoids the 0/0 of the quotient form at q = 1.
    Complex qnumber(int n) const;

    /// [x]_q through the quotient (q^x - q^-x)/(q - q^-1); exact limit x at q = 1.
    Complex qnumber_quotient(double x) const;

    std::string describe() const;

private:
    Deformation(Complex q, Complex log_q, std::optional<double> nu)
        : q_(q), log_q_(log_q), nu_(nu) {}

    Complex q_{1.0, 0.0};
    Complex log_q_{0.0, 0.0};
    std::optional<double> nu_;
};

} // namespace qsuper

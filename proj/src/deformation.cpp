#include "qsuper/deformation.hpp"

#include "qsuper/errors.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qsuper {

Deformation Deformation::from_nu(double nu) {
    if (!std::isfinite(nu)) throw ConfigError("nu must be finite");
    const double phase = std::numbers::pi * nu;
    return Deformation(std::polar(1.0, phase), Complex{0.0, phase}, nu);
}

Deformation Deformation::from_real(double q) {
    if (!std::isfinite(q) || q <= 0.0) throw ConfigError("real q must be positive");
    return Deformation(Complex{q, 0.0}, Complex{std::log(q), 0.0}, std::nullopt);
}

Deformation Deformation::inverse() const {
    return power(-1);
}

Deformation Deformation::power(int d) const {
    if (nu_) return from_nu(*nu_ * d);
    return from_real(std::exp(log_q_.real() * d));
}

Complex Deformation::qnumber(int n) const {
    if (n == 0) return {0.0, 0.0};
    if (n < 0) return -qnumber(-n);
    Complex sum{0.0, 0.0};
    for (int j = 0; j < n; ++j) sum += pow(static_cast<double>(n - 1 - 2 * j));
    return sum;
}

Complex Deformation::qnumber_quotient(double x) const {
    const Complex denom = pow(1.0) - pow(-1.0);
    if (std::abs(denom) < 1e-300) return {x, 0.0};
    return (pow(x) - pow(-x)) / denom;
}

std::string Deformation::describe() const {
    char buf[32];
    double x = nu_ ? *nu_ : q_.real();
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return (nu_ ? "nu=" : "q=") + std::string(buf, res.ptr);
}

} // namespace qsuper

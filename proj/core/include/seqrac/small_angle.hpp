#pragma once

// First-order (in omega) behaviour of the unsharpness schedule.
//
// For small omega, lambda_k ~ c_k omega with
//   c_k = 2^(k-1) c_1 P_k(c_1^2),   c_1 = (1 + eps) / (2 r),
//   P_1 = 1, P_2 = 1 + x/2, P_k = P_(k-1) + 2^(2k-5) x P_(k-1)^2.
// The polynomials are kept with exact rational coefficients.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "seqrac/wide.hpp"

namespace seqrac {

class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<mpq_class> coefficients);

    static RationalPolynomial constant(const mpq_class& c) { return RationalPolynomial({c}); }
    // The monomial x.
    static RationalPolynomial x() { return RationalPolynomial({mpq_class(0), mpq_class(1)}); }

    // coefficient(i) multiplies x^i; zero beyond the degree.
    mpq_class coefficient(std::size_t i) const;
    const std::vector<mpq_class>& coefficients() const { return coeffs_; }

    // Degree of the zero polynomial is reported as -1.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

    RationalPolynomial operator+(const RationalPolynomial& o) const;
    RationalPolynomial operator*(const RationalPolynomial& o) const;
    RationalPolynomial operator*(const mpq_class& s) const;
    // Multiplication by x^power.
    RationalPolynomial shifted(std::size_t power) const;
    RationalPolynomial squared() const;

    // p(x) -> p(x^2).
    RationalPolynomial in_square() const;

    bool operator==(const RationalPolynomial& o) const { return coeffs_ == o.coeffs_; }

    WideReal evaluate(const WideReal& x) const;

    // "1 + 5/2 x + 2 x^2 + 1/2 x^3" style listing in the given variable.
    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<mpq_class> coeffs_;
};

inline constexpr int kSmallAnglePolyCap = 16;

// Throws DomainError unless 1 <= k <= 16. Coefficients of P_k grow to
// about 2^k bits each, so k = 16 already holds ~250 MB of integers.
RationalPolynomial small_angle_poly(int k);

// c_k as a polynomial in c_1: 2^(k-1) c_1 P_k(c_1^2). Only odd powers are nonzero.
RationalPolynomial odd_power_expansion(int k);

// 2^(k-1) c_1 P_k(c_1^2) evaluated from the exact polynomial.
WideReal leading_coefficient(int k, const WideReal& c1);

// Same quantity from the recurrence evaluated numerically; works for any k >= 1.
WideReal leading_coefficient_numeric(int k, const WideReal& c1);

// 1 / c_k at c_1 = (1 + eps) / (2 r).
WideReal omega_estimate(int k, double r, double epsilon);

}  // namespace seqrac

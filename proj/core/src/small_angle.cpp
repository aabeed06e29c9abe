#include "seqrac/small_angle.hpp"

#include <algorithm>
#include <sstream>

#include <fmt/format.h>

#include "seqrac/errors.hpp"

namespace seqrac {

namespace {

// Keeps the leading 192 bits, more than WideReal carries.
WideReal to_wide(const mpz_class& z) {
    const long bits = static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
    if (bits <= 192) {
        return WideReal(z.get_str());
    }
    mpz_class top;
    mpz_tdiv_q_2exp(top.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(bits - 192));
    return ldexp(WideReal(top.get_str()), static_cast<int>(bits - 192));
}

WideReal to_wide(const mpq_class& q) { return to_wide(q.get_num()) / to_wide(q.get_den()); }

mpq_class power_of_two(long e) {
    mpq_class out(1);
    if (e >= 0) {
        mpz_mul_2exp(out.get_num_mpz_t(), out.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(out.get_den_mpz_t(), out.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return out;
}

// Polynomials with non-negative integer coefficients, squared by packing
// them into a single integer (Kronecker substitution) so that GMP's
// asymptotically fast multiplication does the work.
using IntPoly = std::vector<mpz_class>;

mpz_class pack(const IntPoly& p, std::size_t lo, std::size_t hi, mp_bitcnt_t width) {
    if (hi - lo == 1) {
        return p[lo];
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    mpz_class out = pack(p, mid, hi, width);
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), width * (mid - lo));
    out += pack(p, lo, mid, width);
    return out;
}

void unpack(const mpz_class& v, std::size_t lo, std::size_t hi, mp_bitcnt_t width, IntPoly& out) {
    if (hi - lo == 1) {
        out[lo] = v;
        return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    mpz_class low;
    mpz_class high;
    mpz_tdiv_r_2exp(low.get_mpz_t(), v.get_mpz_t(), width * (mid - lo));
    mpz_tdiv_q_2exp(high.get_mpz_t(), v.get_mpz_t(), width * (mid - lo));
    unpack(low, lo, mid, width, out);
    unpack(high, mid, hi, width, out);
}

IntPoly square_nonnegative(const IntPoly& p) {
    std::size_t bits = 1;
    for (const auto& c : p) {
        bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    }
    const mp_bitcnt_t width = 2 * bits + mpz_sizeinbase(mpz_class(p.size()).get_mpz_t(), 2) + 1;
    const mpz_class packed = pack(p, 0, p.size(), width);
    const mpz_class sq = packed * packed;
    IntPoly out(2 * p.size() - 1);
    unpack(sq, 0, out.size(), width, out);
    return out;
}

void check_k(int k) {
    if (k < 1 || k > kSmallAnglePolyCap) {
        throw DomainError(fmt::format("small-angle polynomial: k = {} outside [1, {}]", k, kSmallAnglePolyCap));
    }
}

}  // namespace

RationalPolynomial::RationalPolynomial(std::vector<mpq_class> coefficients) : coeffs_(std::move(coefficients)) {
    trim();
}

void RationalPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

mpq_class RationalPolynomial::coefficient(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : mpq_class(0);
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
    std::vector<mpq_class> out(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = coefficient(i) + o.coefficient(i);
    }
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
    if (coeffs_.empty() || o.coeffs_.empty()) {
        return {};
    }
    std::vector<mpq_class> out(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
            out[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::operator*(const mpq_class& s) const {
    std::vector<mpq_class> out(coeffs_);
    for (auto& c : out) {
        c *= s;
    }
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::shifted(std::size_t power) const {
    if (coeffs_.empty()) {
        return {};
    }
    std::vector<mpq_class> out(coeffs_.size() + power);
    std::copy(coeffs_.begin(), coeffs_.end(), out.begin() + static_cast<std::ptrdiff_t>(power));
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::squared() const {
    if (coeffs_.empty()) {
        return {};
    }
    // Off-diagonal products are counted once and doubled.
    const std::size_t n = coeffs_.size();
    std::vector<mpq_class> out(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out[i + j] += coeffs_[i] * coeffs_[j];
        }
    }
    for (auto& c : out) {
        c *= 2;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out[2 * i] += coeffs_[i] * coeffs_[i];
    }
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::in_square() const {
    if (coeffs_.empty()) {
        return {};
    }
    std::vector<mpq_class> out(2 * coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out[2 * i] = coeffs_[i];
    }
    return RationalPolynomial(std::move(out));
}

WideReal RationalPolynomial::evaluate(const WideReal& x) const {
    WideReal acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + to_wide(*it);
    }
    return acc;
}

std::string RationalPolynomial::to_string(const std::string& var) const {
    if (coeffs_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        mpq_class c = coeffs_[i];
        if (c == 0) {
            continue;
        }
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            c = abs(c);
        } else if (c < 0) {
            os << "-";
            c = abs(c);
        }
        first = false;
        if (i == 0) {
            os << c.get_str();
            continue;
        }
        if (c != 1) {
            os << c.get_str() << " ";
        }
        os << var;
        if (i > 1) {
            os << "^" << i;
        }
    }
    return os.str();
}

RationalPolynomial small_angle_poly(int k) {
    check_k(k);
    RationalPolynomial p = RationalPolynomial::constant(1);
    if (k == 1) {
        return p;
    }
    // Q = 2 P_k has integer coefficients and obeys
    // Q_j = Q_(j-1) + 2^(2j-6) x Q_(j-1)^2.
    IntPoly q{mpz_class(2), mpz_class(1)};
    for (int j = 3; j <= k; ++j) {
        const IntPoly sq = square_nonnegative(q);
        q.resize(sq.size() + 1);
        for (std::size_t i = 0; i < sq.size(); ++i) {
            mpz_class term = sq[i];
            mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * j - 6));
            q[i + 1] += term;
        }
    }
    std::vector<mpq_class> coeffs(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        coeffs[i] = mpq_class(q[i], 2);
        coeffs[i].canonicalize();
    }
    return RationalPolynomial(std::move(coeffs));
}

RationalPolynomial odd_power_expansion(int k) {
    return (small_angle_poly(k).in_square() * power_of_two(k - 1)).shifted(1);
}

WideReal leading_coefficient(int k, const WideReal& c1) {
    return odd_power_expansion(k).evaluate(c1);
}

WideReal leading_coefficient_numeric(int k, const WideReal& c1) {
    if (k < 1) {
        throw DomainError("leading coefficient: k must be positive");
    }
    const WideReal x = c1 * c1;
    WideReal p = 1;
    if (k >= 2) {
        p = 1 + x / 2;
    }
    for (int j = 3; j <= k; ++j) {
        p += ldexp(x * p * p, 2 * j - 5);
    }
    return ldexp(c1 * p, k - 1);
}

WideReal omega_estimate(int k, double r, double epsilon) {
    check_k(k);
    const WideReal c1 = (1 + WideReal(epsilon)) / (2 * WideReal(r));
    return 1 / leading_coefficient(k, c1);
}

}  // namespace seqrac

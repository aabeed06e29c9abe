#include "seqrac/qubit.hpp"

#include <cmath>

#include <fmt/format.h>

#include "seqrac/errors.hpp"

namespace seqrac {

std::array<double, 2> HermitianOp::eigenvalues() const {
    const double r = bloch_.norm();
    return {trace_part_ - r, trace_part_ + r};
}

HermitianOp anticommutator(const HermitianOp& a, const HermitianOp& b) {
    // (a0 + a.s)(b0 + b.s) = a0 b0 + a.b + (a0 b + b0 a + i a x b).s; the
    // cross terms cancel in the symmetrised product.
    return {2.0 * (a.trace_part() * b.trace_part() + a.bloch().dot(b.bloch())),
            2.0 * (a.trace_part() * b.bloch() + b.trace_part() * a.bloch())};
}

HermitianOp sandwich(const HermitianOp& k, const HermitianOp& a) {
    const double k0 = k.trace_part();
    const double a0 = a.trace_part();
    const Vec3& kv = k.bloch();
    const Vec3& av = a.bloch();
    const double ka = kv.dot(av);
    const double kk = kv.squaredNorm();
    const double t = k0 * k0 * a0 + 2.0 * k0 * ka + a0 * kk;
    const Vec3 v = (k0 * k0 - kk) * av + 2.0 * k0 * a0 * kv + 2.0 * ka * kv;
    return {t, v};
}

double trace_of_product(const HermitianOp& a, const HermitianOp& b) {
    return 2.0 * (a.trace_part() * b.trace_part() + a.bloch().dot(b.bloch()));
}

double trace_norm(const HermitianOp& a) {
    const auto ev = a.eigenvalues();
    return std::abs(ev[0]) + std::abs(ev[1]);
}

DensityOp DensityOp::from_bloch(const Vec3& n) {
    if (!n.allFinite()) {
        throw DomainError("density operator: non-finite Bloch vector");
    }
    const double len = n.norm();
    if (len > 1.0 + kStateTolerance) {
        throw DomainError(fmt::format("density operator: Bloch length {:.17g} exceeds 1", len));
    }
    return DensityOp(n);
}

DensityOp DensityOp::from_operator(const HermitianOp& a) {
    if (std::abs(a.trace() - 1.0) > kStateTolerance) {
        throw DomainError(fmt::format("density operator: trace {:.17g} is not 1", a.trace()));
    }
    if (a.eigenvalues()[0] < -kStateTolerance) {
        throw DomainError("density operator: negative eigenvalue");
    }
    return from_bloch(a.bloch() / a.trace_part());
}

SharpObservable SharpObservable::along(const Vec3& direction) {
    const double len = direction.norm();
    if (!(len > kDegeneracyTolerance) || !std::isfinite(len)) {
        throw DomainError("sharp observable: direction has no length");
    }
    return SharpObservable(direction / len);
}

SharpObservable SharpObservable::from_operator(const HermitianOp& a) {
    if (std::abs(a.trace_part()) > kStateTolerance || std::abs(a.bloch().norm() - 1.0) > kStateTolerance) {
        throw DomainError("sharp observable: eigenvalues are not +-1");
    }
    return SharpObservable(a.bloch());
}

bool SharpObservable::anticommutes_with(const SharpObservable& other, double tol) const {
    return std::abs(b_.dot(other.b_)) <= tol;
}

double distinguishability(const DensityOp& rho0, const DensityOp& rho1) {
    return 0.5 * (rho0.bloch_vector() - rho1.bloch_vector()).norm();
}

SharpObservable helstrom_observable(const DensityOp& rho0, const DensityOp& rho1) {
    const Vec3 d = rho0.bloch_vector() - rho1.bloch_vector();
    if (d.norm() <= kDegeneracyTolerance) {
        throw DegeneratePair("helstrom observable: states are operationally equivalent");
    }
    return SharpObservable::along(d);
}

double guessing_probability(const DensityOp& rho0, const DensityOp& rho1, const SharpObservable& b) {
    const HermitianOp e_plus = 0.5 * (HermitianOp::identity() + b.op());
    const HermitianOp e_minus = 0.5 * (HermitianOp::identity() - b.op());
    return 0.5 * (trace_of_product(rho0.op(), e_plus) + trace_of_product(rho1.op(), e_minus));
}

}  // namespace seqrac

#pragma once

// Qubit operator algebra in Bloch form.
//
// Every 2x2 Hermitian operator is written A = t*1 + v.sigma with a real
// scalar t and a real 3-vector v. Products of Pauli vectors close on this
// form, so all of the quantities needed by the random access code
// (spectra, trace norms, Luders conjugations) are evaluated without
// touching complex matrices.

#include <array>

#include <Eigen/Core>

namespace seqrac {

using Vec3 = Eigen::Vector3d;

// Tolerances shared by the validity checks.
inline constexpr double kStateTolerance = 1e-12;
inline constexpr double kDegeneracyTolerance = 1e-12;

class HermitianOp {
public:
    HermitianOp() : trace_part_(0.0), bloch_(Vec3::Zero()) {}
    HermitianOp(double trace_part, const Vec3& bloch) : trace_part_(trace_part), bloch_(bloch) {}

    static HermitianOp identity() { return {1.0, Vec3::Zero()}; }
    static HermitianOp zero() { return {}; }

    double trace_part() const { return trace_part_; }
    const Vec3& bloch() const { return bloch_; }

    // tr(A) = 2t.
    double trace() const { return 2.0 * trace_part_; }

    // Ascending eigenvalues t - |v|, t + |v|.
    std::array<double, 2> eigenvalues() const;

    HermitianOp operator+(const HermitianOp& o) const { return {trace_part_ + o.trace_part_, bloch_ + o.bloch_}; }
    HermitianOp operator-(const HermitianOp& o) const { return {trace_part_ - o.trace_part_, bloch_ - o.bloch_}; }
    HermitianOp operator*(double s) const { return {s * trace_part_, s * bloch_}; }
    friend HermitianOp operator*(double s, const HermitianOp& a) { return a * s; }
    HermitianOp operator-() const { return {-trace_part_, -bloch_}; }

private:
    double trace_part_;
    Vec3 bloch_;
};

// {A, B} = AB + BA. Always Hermitian.
HermitianOp anticommutator(const HermitianOp& a, const HermitianOp& b);

// K A K for Hermitian K. Used for Luders conjugation and dephasing.
HermitianOp sandwich(const HermitianOp& k, const HermitianOp& a);

// tr(AB) for Hermitian A, B.
double trace_of_product(const HermitianOp& a, const HermitianOp& b);

// Sum of absolute eigenvalues.
double trace_norm(const HermitianOp& a);

// Unit-trace positive operator rho = (1 + n.sigma) / 2.
class DensityOp {
public:
    // Maximally mixed state.
    DensityOp() = default;

    // Throws DomainError when |n| > 1 + kStateTolerance.
    static DensityOp from_bloch(const Vec3& n);

    // Accepts any Hermitian operator with trace 1 (within tolerance) and
    // non-negative spectrum; the trace is renormalised exactly.
    static DensityOp from_operator(const HermitianOp& a);

    static DensityOp maximally_mixed() { return {}; }

    const Vec3& bloch_vector() const { return n_; }
    HermitianOp op() const { return {0.5, 0.5 * n_}; }
    double purity_radius() const { return n_.norm(); }

private:
    explicit DensityOp(const Vec3& n) : n_(n) {}
    Vec3 n_ = Vec3::Zero();
};

// Traceless observable with eigenvalues +-1, i.e. B = b.sigma with |b| = 1.
class SharpObservable {
public:
    // Normalises the direction. Throws DomainError for a (near) zero vector.
    static SharpObservable along(const Vec3& direction);

    // Validates trace 0 and |b| = 1 within kStateTolerance.
    static SharpObservable from_operator(const HermitianOp& a);

    static SharpObservable x() { return SharpObservable(Vec3::UnitX()); }
    static SharpObservable y() { return SharpObservable(Vec3::UnitY()); }
    static SharpObservable z() { return SharpObservable(Vec3::UnitZ()); }

    const Vec3& axis() const { return b_; }
    HermitianOp op() const { return {0.0, b_}; }

    // {B1, B2} = 0 <=> b1.b2 = 0.
    bool anticommutes_with(const SharpObservable& other, double tol = kStateTolerance) const;

private:
    explicit SharpObservable(const Vec3& b) : b_(b) {}
    Vec3 b_;
};

// Half the trace distance, |n0 - n1| / 2.
double distinguishability(const DensityOp& rho0, const DensityOp& rho1);

// Unit observable along n0 - n1. Throws DegeneratePair when |n0 - n1| <= 1e-12.
SharpObservable helstrom_observable(const DensityOp& rho0, const DensityOp& rho1);

// 1/2 [tr(rho0 E+) + tr(rho1 E-)] with E+- = (1 +- B)/2.
double guessing_probability(const DensityOp& rho0, const DensityOp& rho1, const SharpObservable& b);

}  // namespace seqrac

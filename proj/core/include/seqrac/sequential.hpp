#pragma once

// Preparation families seen by a chain of receivers that each measure and
// pass the qubit on without announcing their outcome.

#include <optional>
#include <span>
#include <vector>

#include "seqrac/channel.hpp"
#include "seqrac/rac.hpp"

namespace seqrac {

struct TraceEntry {
    PreparationFamily family;
    DistinguishabilityPair exact;      // trace norms of the propagated marginals
    DistinguishabilityPair recursion;  // closed-form contraction factors
    // Success of the receiver holding this family; empty for the family left
    // after the last step.
    std::optional<double> success_probability;
};

// For N steps the trace has N + 1 entries: receivers 1..N, then the family
// that leaves the chain.
struct SequentialTrace {
    std::vector<TraceEntry> entries;

    std::size_t receivers() const { return entries.empty() ? 0 : entries.size() - 1; }
    double max_discrepancy() const;
};

inline constexpr double kAlignmentTolerance = 1e-9;

// Propagates prep through steps with the exact channel and, in parallel,
// with the contraction recursion. Throws AxisError when steps disagree on
// (B1, B2) or the axes do not anticommute, and AlignmentError when a
// marginal difference is not along its observable.
SequentialTrace propagate(const PreparationFamily& prep, std::span<const SequentialChannelStep> steps);

// 1/2 + (Delta1 + lambda Delta2) / 4.
double per_bob_success(const DistinguishabilityPair& dp, double lambda);

// The same two pipelines with no hypothesis checks; returns the largest
// |exact - recursion| over all entries and both bits.
double lemma2_violation_probe(const PreparationFamily& prep, std::span<const SequentialChannelStep> steps);

// Success of each receiver from the full Born rule on the exactly
// propagated family (sharp B1, unsharp B2 at the receiver's lambda). No
// alignment hypothesis is needed.
std::vector<double> born_rule_successes(const PreparationFamily& prep, std::span<const SequentialChannelStep> steps);

// Recursion step alone: (1 + sqrt(1 - lambda^2)) / 2 on Delta1, 1/2 on Delta2.
DistinguishabilityPair contract(const DistinguishabilityPair& dp, double lambda);

}  // namespace seqrac

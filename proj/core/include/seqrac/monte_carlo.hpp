#pragma once

// Shot-by-shot simulation of the receiver chain: Alice draws x, every
// receiver draws y, samples an outcome by the Born rule and hands the
// Luders-collapsed qubit to the next receiver.

#include <cstdint>
#include <string>
#include <vector>

#include "seqrac/channel.hpp"
#include "seqrac/rac.hpp"

namespace seqrac {

struct SimulationConfig {
    PreparationFamily prep;
    std::vector<SequentialChannelStep> steps;
    std::int64_t shots = 1;
    std::uint64_t seed = 0;
};

struct ReceiverTally {
    double empirical_success = 0.0;
    double standard_error = 0.0;
    std::int64_t shots_counted = 0;
    std::int64_t successes = 0;
    std::int64_t asked_first = 0;   // shots with y = 1
    std::int64_t asked_second = 0;  // shots with y = 2
    // Mean over shots of (post-measurement Bloch vector - non-selective
    // channel image of the state this receiver would hold on average given x).
    Vec3 post_state_residual = Vec3::Zero();
};

struct SimulationResult {
    std::vector<ReceiverTally> receivers;
    std::uint64_t seed = 0;
    std::string rng_algorithm;
};

// Outcome + reads as bit 0 and - as bit 1.
int outcome_to_guess(Sign s);

// Shots per independently-summed block. Blocks are merged in index order,
// so the result does not depend on how many threads ran them.
inline constexpr std::int64_t kShotsPerBlock = 1 << 16;

// threads == 0 uses SEQRAC_THREADS when set, otherwise the hardware
// concurrency. Throws DomainError for an empty chain or shots < 1.
SimulationResult run(const SimulationConfig& config, unsigned threads = 0);

unsigned default_thread_count();

}  // namespace seqrac

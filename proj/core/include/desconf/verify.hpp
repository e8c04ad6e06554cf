#pragma once

#include "desconf/enumeration.hpp"
#include "desconf/json_io.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace desconf {

enum class Suite {
    DesarguesTheorem,
    LiftUniqueness,
    BlocklineInjectivity,
    ScBounds,
    Identities,
};

std::string_view to_string(Suite suite) noexcept;
/// "desargues-theorem", "lift-uniqueness", "blockline-injectivity", "sc-bounds", "identities".
Suite parse_suite(std::string_view name);

struct SuiteOptions {
    /// Random perspective pairs drawn by the theorem suite.
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0x5eed;
    OracleOptions oracle;
    /// Replaces the field of order q (fault injection); must have that order.
    std::shared_ptr<const Field> field;
};

struct SuiteResult {
    Suite suite = Suite::Identities;
    unsigned q = 0;
    bool passed = true;
    /// Objects examined (samples, configurations, or formula evaluations).
    std::uint64_t checked = 0;
    /// First failure in full, null when passed.
    Json counterexample;
    /// Suite-specific statistics.
    Json details = Json::object();
    double elapsed_ms = 0;

    Json to_json(bool timing = true) const;
};

/// desargues-theorem: exhaustive field-axiom check, then random perspective pairs in PG(2,q)
///   whose P, Q, R must be collinear.
/// lift-uniqueness: for every configuration through a fixed point of PG(2,q), the exhaustive
///   completion search over a fixed apex pair finds exactly the two constructed lifts, and both
///   section back to the configuration.
/// blockline-injectivity: no two through-point configurations share points and blocklines but
///   not blocks.
/// sc-bounds: blocklines carry at most four points with the pole as the extra one, the polarity
///   is an involution, SC counts stay within 3 (4 in characteristic 3, attained there), SC
///   points pairwise share a block, and SC-free configurations equal their blockline structure.
/// identities: integrality and double-count identities of every closed form for prime powers
///   up to max(q, 64).
SuiteResult run_suite(Suite suite, unsigned q, const SuiteOptions& options = {});

/// All 20 labels map back to themselves under two applications of the polarity, and
/// containment (ij) in [abc] is reversed into [polar(ij)] containing (polar[abc]).
bool polarity_is_involutive_duality();

/// Blockline checks for one configuration: every blockline carries 3 or 4 of its points, a
/// fourth point is the pole of the block, the self-conjugate labels are exactly those poles,
/// and without self-conjugate points the blockline structure equals the blocks. Returns a
/// description of the first violation.
std::optional<std::string> blockline_violation(const Configuration& d);

}  // namespace desconf

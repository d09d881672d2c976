#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "als/aig.hpp"
#include "als/lac.hpp"
#include "als/metrics.hpp"
#include "als/miter.hpp"
#include "als/simulator.hpp"

namespace als {

enum class Phase : uint8_t { ConstPo, ConstInternal, Substitution, Mixed };

const char* phase_name(Phase p);
std::optional<Phase> phase_from_name(const std::string& name);

struct FlowConfig {
    size_t m_small = size_t{1} << 10;
    size_t m = size_t{1} << 13;
    uint32_t k = 100;
    uint64_t conflict_limit = uint64_t{1} << 18;
    uint64_t seed = 1;
    // Empty = auto: [const-po, const-internal, substitution] above 2000 AND
    // nodes, [mixed] below.
    std::vector<Phase> phases;
    bool allow_complement = true;
    uint32_t exhaustive_verify_limit = 12;
    // nullopt = auto: off up to 5000 AND nodes, m/8 above.
    std::optional<uint64_t> similarity_cap;
    bool use_pruning = true;
    bool use_cex_reuse = true;
    size_t cex_cap = 0;  // 0 = unbounded; otherwise oldest evicted
    size_t max_iterations = 10000;
    unsigned threads = 1;
    std::string candidate_tsv_path;  // per-iteration top-k dump when set
};

struct IterationRecord {
    uint32_t index = 0;
    Phase phase = Phase::Mixed;
    size_t candidates_generated = 0;
    size_t after_round1 = 0;
    size_t after_round2 = 0;
    size_t top_k = 0;
    size_t sat_calls = 0;
    size_t sat = 0;
    size_t unsat = 0;
    size_t unknown = 0;
    size_t cex_skips = 0;
    size_t loop_skips = 0;
    size_t conflict_skips = 0;
    size_t blacklist_skips = 0;
    size_t applied = 0;
    size_t live_ands = 0;
};

struct RunReport {
    // Config echo (full provenance of the run).
    std::string metric;
    std::string bound;
    bool msb_first = false;
    size_t m_small = 0;
    size_t m = 0;
    uint32_t k = 0;
    uint64_t conflict_limit = 0;
    uint64_t seed = 0;
    std::vector<Phase> phases;
    bool allow_complement = true;
    std::optional<uint64_t> similarity_cap;
    bool pruning = true;
    bool cex_reuse = true;
    size_t cex_cap = 0;
    unsigned threads = 1;
    std::string prng;

    std::string input_name;
    uint32_t num_pis = 0;
    uint32_t num_pos = 0;
    size_t initial_ands = 0;

    std::vector<IterationRecord> iterations;

    size_t total_sat_calls = 0;
    size_t total_sat = 0;
    size_t total_unsat = 0;
    size_t total_unknown = 0;
    size_t total_cex_skips = 0;
    size_t total_applied = 0;
    size_t counterexamples_stored = 0;

    size_t final_ands = 0;
    std::string certification;  // "unsat" or "unknown"
    uint64_t final_check_conflicts = 0;
    double wall_seconds = 0.0;

    // JSON document; wall-clock fields are isolated under "timing".
    std::string to_json() const;
};

struct BlacklistKey {
    uint64_t target_uid = 0;
    LacKind kind = LacKind::Const0;
    uint64_t source_uid = 0;
    bool source_complemented = false;

    auto operator<=>(const BlacklistKey&) const = default;
};

struct FlowState {
    AigNetwork current;
    PatternPool pool;
    std::set<BlacklistKey> blacklist;
    uint32_t iteration = 0;
    RunReport report;
    std::set<std::vector<bool>> cex_seen;
};

// The emitted netlist failed its certification: an internal bug, never
// silently written out.
struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Greedy pass over the sorted candidates (on entry state.current is the
// iteration's base circuit and all candidates speak its variable ids).
// Returns the applied LACs; verdict/skip counters go to the last iteration
// record of state.report.
std::vector<Lac> select_and_apply(FlowState& state, const AigNetwork& golden,
                                  const CandidateSet& sorted_cands, const ErrorSpec& spec,
                                  const FlowConfig& config);

struct RunResult {
    AigNetwork net;
    RunReport report;
};

// Full synthesis loop; the returned network is certified (or the report says
// "unknown" when the final unlimited check timed out).
RunResult run(const AigNetwork& golden, const ErrorSpec& spec, const FlowConfig& config);

struct ExactResult {
    mpz_class lo;
    mpz_class hi;
    bool exact = false;
};

// Smallest bound accepted by the miter, by binary search. Inexact interval
// if any probe times out or exhausts its conflict budget.
ExactResult exact_max_error(const AigNetwork& golden, const AigNetwork& approx,
                            const ErrorSpec& spec, double timeout_seconds = 0.0,
                            uint64_t conflict_limit = uint64_t{1} << 62);

}  // namespace als
